#include "nilkit/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace nilkit {

NilpotentPresentation::NilpotentPresentation(PresentationData data)
    : data_(std::move(data)) {
  validate();
  gens_ = data_.generators;
  zero_ = MalcevVector(size());
  precompute();
}

void NilpotentPresentation::validate() {
  std::size_t const m = data_.generators.size();
  int const c = data_.nilpotency_class;
  if (c < 0) throw Error("nilpotency class must be nonnegative");
  int prev = 1;
  for (std::size_t i = 0; i < m; ++i) {
    auto const& g = data_.generators[i];
    std::string const name = "a" + std::to_string(i + 1);
    if (g.order && *g.order < 1) throw Error(name + ": order must be positive");
    if (g.level < 1 || g.level > c) {
      throw Error(name + ": level " + std::to_string(g.level) +
                  " outside 1.." + std::to_string(c));
    }
    if (g.level < prev) throw Error(name + ": levels must be nondecreasing");
    prev = g.level;
    bool has_power = data_.powers.count(i) > 0;
    if (g.order && !has_power) {
      throw Error(name + " has finite order but no power relation");
    }
    if (!g.order && has_power) {
      throw Error(name + " has infinite order but a power relation");
    }
  }
  auto check_tail = [&](MalcevVector const& t, std::size_t after,
                        std::string const& what) {
    if (t.size() != m) throw Error(what + ": tail has wrong length");
    for (std::size_t l = 0; l <= after && l < m; ++l) {
      if (t[l] != 0) throw Error(what + ": tail not supported right of a" +
                                 std::to_string(after + 1));
    }
  };
  for (auto it = data_.conjugates.begin(); it != data_.conjugates.end();) {
    auto [j, i] = it->first;
    std::string what = "relator a" + std::to_string(j + 1) + " a" + std::to_string(i + 1);
    if (!(i < j && j < m)) throw Error(what + ": expected i < j <= m");
    check_tail(it->second, j, what);
    for (std::size_t l = j + 1; l < m; ++l) {
      if (it->second[l] != 0 &&
          data_.generators[l].level <= data_.generators[j].level) {
        throw Error(what + ": commutator tail does not descend the central series");
      }
    }
    if (it->second.is_identity()) {
      it = data_.conjugates.erase(it);
    } else {
      ++it;
    }
  }
  for (auto const& [key, t] : data_.inverse_conjugates) {
    auto [j, i] = key;
    std::string what = "relator a" + std::to_string(j + 1) + "^-1 a" + std::to_string(i + 1);
    if (!(i < j && j < m)) throw Error(what + ": expected i < j <= m");
    check_tail(t, j, what);
  }
  for (auto const& [i, t] : data_.powers) {
    if (i >= m) throw Error("power relation on unknown generator");
    check_tail(t, i, "power relator of a" + std::to_string(i + 1));
  }
}

bool NilpotentPresentation::in_tail(MalcevVector const& v, std::size_t start) const {
  for (std::size_t l = 0; l < start && l < v.size(); ++l) {
    if (v[l] != 0) return false;
  }
  return true;
}

void NilpotentPresentation::precompute() {
  std::size_t const m = size();
  gen_vec_.assign(m, zero_);
  forward_.assign(m, Endomorphism{});
  backward_.assign(m, Endomorphism{});
  for (std::size_t i = m; i-- > 0;) {
    MalcevVector g = zero_;
    mul_gen_power(g, i, 1);
    gen_vec_[i] = std::move(g);

    Endomorphism f;
    f.base = i + 1;
    f.images.assign(m, zero_);
    f.identity = true;
    for (std::size_t l = i + 1; l < m; ++l) {
      f.images[l] = multiply(gen_vec_[l], conjugate_tail(l, i));
      if (!(f.images[l] == gen_vec_[l])) f.identity = false;
    }
    Endomorphism b = f;
    if (!f.identity) {
      for (std::size_t l = m; l-- > i + 1;) {
        MalcevVector d = multiply(inverse(f.images[l]), gen_vec_[l]);
        if (!in_tail(d, l + 1)) {
          precompute_ok_ = false;
          b.images[l] = gen_vec_[l];
          continue;
        }
        b.images[l] = multiply(gen_vec_[l], apply(b, d));
      }
    }
    f.fixed_from = b.fixed_from = i + 1;
    for (std::size_t l = m; l-- > i + 1;) {
      if (!(f.images[l] == gen_vec_[l]) || !(b.images[l] == gen_vec_[l])) {
        f.fixed_from = b.fixed_from = l + 1;
        break;
      }
    }
    forward_[i] = std::move(f);
    backward_[i] = std::move(b);
  }
  cache_ = std::make_shared<PowerCache>();
  for (auto& sq : cache_->squares) {
    sq.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      sq[i].push_back(std::make_shared<const Endomorphism>(&sq == &cache_->squares[0]
                                                               ? forward_[i]
                                                               : backward_[i]));
    }
  }
  // Inverse tails: a_j^-1 a_i = a_i a_j^-1 beta, beta = a_j (a_j^-1)^{a_i}.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      MalcevVector beta =
          multiply(gen_vec_[j], apply(forward_[i], inverse(gen_vec_[j])));
      auto given = data_.inverse_conjugates.find({j, i});
      if (given != data_.inverse_conjugates.end() &&
          !(canonicalize(given->second) == beta)) {
        precompute_ok_ = false;
      }
      if (!beta.is_identity()) derived_inverse_[{j, i}] = std::move(beta);
    }
  }
}

std::size_t NilpotentPresentation::series_start(int j) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (gens_[i].level >= j) return i;
  }
  return size();
}

MalcevVector const& NilpotentPresentation::conjugate_tail(std::size_t j,
                                                           std::size_t i) const {
  auto it = data_.conjugates.find({j, i});
  return it == data_.conjugates.end() ? zero_ : it->second;
}

MalcevVector const& NilpotentPresentation::inverse_conjugate_tail(
    std::size_t j, std::size_t i) const {
  auto it = derived_inverse_.find({j, i});
  return it == derived_inverse_.end() ? zero_ : it->second;
}

MalcevVector const& NilpotentPresentation::power_tail(std::size_t i) const {
  auto it = data_.powers.find(i);
  return it == data_.powers.end() ? zero_ : it->second;
}

// Arithmetic ----------------------------------------------------------------

void NilpotentPresentation::mul_gen_power(MalcevVector& u, std::size_t i,
                                          Integer const& k) const {
  if (k == 0) return;
  std::size_t const m = size();
  bool has_suffix = false;
  for (std::size_t l = i + 1; l < m; ++l) {
    if (u[l] != 0) {
      has_suffix = true;
      break;
    }
  }
  MalcevVector w;
  if (has_suffix) {
    w = MalcevVector(m);
    for (std::size_t l = i + 1; l < m; ++l) {
      w[l].swap(u[l]);
    }
    w = conjugate_by_power(i, k, w);
  }
  Integer x = u[i] + k;
  if (auto const& e = gens_[i].order) {
    Integer q, r;
    floor_divmod(x, *e, q, r);
    u[i] = r;
    if (q != 0) {
      MalcevVector t = power(power_tail(i), q);
      for (std::size_t l = i + 1; l < m; ++l) u[l] = t[l];
    }
  } else {
    u[i] = x;
  }
  if (has_suffix) mul_into(u, w);
}

void NilpotentPresentation::mul_into(MalcevVector& u, MalcevVector const& v) const {
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l] != 0) mul_gen_power(u, l, v[l]);
  }
}

MalcevVector NilpotentPresentation::apply(Endomorphism const& f,
                                          MalcevVector const& w) const {
  MalcevVector res = zero_;
  for (std::size_t l = f.base; l < size(); ++l) {
    if (w[l] == 0) continue;
    if (w[l] == 1) {
      mul_into(res, f.images[l]);
    } else {
      mul_into(res, power(f.images[l], w[l]));
    }
  }
  return res;
}

NilpotentPresentation::Endomorphism NilpotentPresentation::compose(
    Endomorphism const& f, Endomorphism const& g) const {
  Endomorphism h;
  h.base = g.base;
  h.identity = f.identity && g.identity;
  h.fixed_from = std::max(f.fixed_from, g.fixed_from);
  h.images.assign(size(), zero_);
  for (std::size_t l = g.base; l < size(); ++l) {
    h.images[l] = apply(f, g.images[l]);
  }
  return h;
}

std::shared_ptr<const NilpotentPresentation::Endomorphism>
NilpotentPresentation::square_power(std::size_t i, bool forward, std::size_t t) const {
  auto& list = cache_->squares[forward ? 0 : 1][i];
  std::shared_ptr<const Endomorphism> prev;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (t < list.size()) return list[t];
  }
  prev = square_power(i, forward, t - 1);
  auto next = std::make_shared<const Endomorphism>(compose(*prev, *prev));
  std::lock_guard<std::mutex> lock(cache_->mu);
  // Another thread may have filled the slot meanwhile; results are equal.
  while (list.size() <= t) list.push_back(nullptr);
  if (!list[t]) list[t] = std::move(next);
  return list[t];
}

MalcevVector NilpotentPresentation::conjugate_by_power(std::size_t i,
                                                      Integer const& k,
                                                      MalcevVector const& w) const {
  bool const forward = k > 0;
  Endomorphism const& f = forward ? forward_[i] : backward_[i];
  if (f.identity || in_tail(w, f.fixed_from)) return w;
  Integer n = abs(k);
  MalcevVector r = w;
  if (n <= 4) {
    for (unsigned long s = n.get_ui(); s > 0; --s) r = apply(f, r);
    return r;
  }
  // f^n as a product of cached f^(2^t); these commute.
  std::size_t const bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t t = 0; t < bits; ++t) {
    if (mpz_tstbit(n.get_mpz_t(), t)) r = apply(*square_power(i, forward, t), r);
  }
  return r;
}

MalcevVector NilpotentPresentation::collect(Word const& w) const {
  MalcevVector res = zero_;
  for (auto const& l : w.letters) {
    if (l.gen >= size()) throw Error("generator index out of range in word");
    mul_gen_power(res, l.gen, l.exponent);
  }
  return res;
}

MalcevVector NilpotentPresentation::multiply(MalcevVector const& u,
                                             MalcevVector const& v) const {
  MalcevVector res = u;
  mul_into(res, v);
  return res;
}

MalcevVector NilpotentPresentation::inverse(MalcevVector const& u) const {
  MalcevVector res = zero_;
  for (std::size_t l = u.size(); l-- > 0;) {
    if (u[l] != 0) mul_gen_power(res, l, -u[l]);
  }
  return res;
}

MalcevVector NilpotentPresentation::power(MalcevVector const& u,
                                          Integer const& n) const {
  if (n < 0) return power(inverse(u), -n);
  MalcevVector result = zero_;
  if (n == 0 || u.is_identity()) return result;
  if (n == 1) return u;
  MalcevVector base = u;
  Integer e = n;
  while (true) {
    if (mpz_odd_p(e.get_mpz_t())) mul_into(result, base);
    e >>= 1;
    if (e == 0) break;
    base = multiply(base, base);
  }
  return result;
}

MalcevVector NilpotentPresentation::conjugate(MalcevVector const& u,
                                              MalcevVector const& x) const {
  return multiply(multiply(inverse(x), u), x);
}

MalcevVector NilpotentPresentation::commutator(MalcevVector const& u,
                                               MalcevVector const& v) const {
  return multiply(inverse(multiply(v, u)), multiply(u, v));
}

MalcevVector NilpotentPresentation::canonicalize(MalcevVector const& raw) const {
  if (raw.size() != size()) throw Error("coordinate vector has wrong length");
  MalcevVector res = zero_;
  mul_into(res, raw);
  return res;
}

bool NilpotentPresentation::is_canonical(MalcevVector const& v) const {
  if (v.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (auto const& e = gens_[i].order) {
      if (v[i] < 0 || v[i] >= *e) return false;
    }
  }
  return true;
}

MalcevVector NilpotentPresentation::evaluate(ExpWord const& w) const {
  MalcevVector res = zero_;
  for (auto const& t : w.terms) {
    if (t.sub) {
      mul_into(res, power(evaluate(*t.sub), t.exponent));
    } else {
      if (t.gen >= size()) throw Error("generator index out of range in word");
      mul_gen_power(res, t.gen, t.exponent);
    }
  }
  return res;
}

MalcevVector NilpotentPresentation::evaluate(StraightLineProgram const& p) const {
  using Kind = StraightLineProgram::Rule::Kind;
  std::vector<MalcevVector> value;
  value.reserve(p.size());
  for (auto const& r : p.rules()) {
    switch (r.kind) {
      case Kind::Pair: value.push_back(multiply(value[r.left], value[r.right])); break;
      case Kind::Terminal: {
        if (r.gen >= size()) throw Error("generator index out of range in program");
        MalcevVector v = zero_;
        mul_gen_power(v, r.gen, r.sign);
        value.push_back(std::move(v));
        break;
      }
      case Kind::Empty: value.push_back(zero_); break;
    }
  }
  return value.back();
}

MalcevVector NilpotentPresentation::evaluate(CompressedWord const& w) const {
  return std::visit(
      [this](auto const& x) -> MalcevVector {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Word>) {
          return collect(x);
        } else if constexpr (std::is_same_v<T, MalcevVector>) {
          return canonicalize(x);
        } else {
          return evaluate(x);
        }
      },
      w);
}

// Consistency -----------------------------------------------------------------

bool NilpotentPresentation::check_consistency() const {
  if (!precompute_ok_) return false;
  std::size_t const m = size();
  for (std::size_t i = m; i-- > 0;) {
    Endomorphism const& f = forward_[i];
    auto img = [&](std::size_t l) -> MalcevVector const& { return f.images[l]; };
    // Conjugation by a_i must respect the relations of G_{i+1}.
    if (!f.identity) {
      for (std::size_t n = i + 1; n < m; ++n) {
        for (std::size_t l = i + 1; l < n; ++l) {
          MalcevVector lhs = multiply(img(n), img(l));
          MalcevVector rhs =
              multiply(multiply(img(l), img(n)), apply(f, conjugate_tail(n, l)));
          if (!(lhs == rhs)) return false;
        }
        if (auto const& e = gens_[n].order) {
          if (!(power(img(n), *e) == apply(f, power_tail(n)))) return false;
        }
      }
    }
    if (auto const& e = gens_[i].order) {
      MalcevVector const& mu = power_tail(i);
      if (!(apply(f, mu) == mu)) return false;
      for (std::size_t l = i + 1; l < m; ++l) {
        MalcevVector lhs = conjugate_by_power(i, *e, gen_vec_[l]);
        if (!(lhs == conjugate(gen_vec_[l], mu))) return false;
      }
    }
  }
  return true;
}

bool operator==(NilpotentPresentation const& a, NilpotentPresentation const& b) {
  if (a.data_.nilpotency_class != b.data_.nilpotency_class) return false;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.gens_[i].order != b.gens_[i].order || a.gens_[i].level != b.gens_[i].level)
      return false;
  }
  return a.data_.conjugates == b.data_.conjugates && a.data_.powers == b.data_.powers;
}

// Text format ---------------------------------------------------------------

namespace {

std::string tail_word(MalcevVector const& t) {
  std::string out;
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (t[l] == 0) continue;
    out += " a" + std::to_string(l + 1);
    if (t[l] != 1) out += "^" + t[l].get_str();
  }
  return out;
}

}  // namespace

std::string NilpotentPresentation::to_text() const {
  std::ostringstream out;
  out << "nilpotent m=" << size() << " c=" << nilpotency_class() << "\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out << "a" << i + 1 << " order=" << nilkit::to_string(gens_[i].order)
        << " level=" << gens_[i].level << "\n";
  }
  for (auto const& [key, t] : data_.conjugates) {
    auto [j, i] = key;
    out << "a" << j + 1 << " a" << i + 1 << " = a" << i + 1 << " a" << j + 1
        << tail_word(t) << "\n";
  }
  for (auto const& [i, t] : data_.powers) {
    std::string tail = tail_word(t);
    out << "a" << i + 1 << "^" << gens_[i].order->get_str() << " ="
        << (tail.empty() ? " 1" : tail) << "\n";
  }
  return out.str();
}

NilpotentPresentation NilpotentPresentation::parse(std::string const& text) {
  PresentationData data;
  bool header = false;
  std::size_t m = 0;
  std::size_t line_start = 0;
  std::size_t gens_seen = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = text.substr(line_start, line_end - line_start);
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    std::size_t const at = line_start;
    line_start = line_end + 1;
    if (tok.empty()) continue;

    auto key_value = [&](std::string const& t, std::string const& key) {
      if (t.rfind(key + "=", 0) != 0) throw ParseError("expected " + key + "=", at);
      return t.substr(key.size() + 1);
    };

    if (!header) {
      if (tok.size() != 3 || tok[0] != "nilpotent") {
        throw ParseError("expected header 'nilpotent m=<int> c=<int>'", at);
      }
      Integer mm = parse_integer(key_value(tok[1], "m"), at);
      Integer cc = parse_integer(key_value(tok[2], "c"), at);
      if (mm < 0 || cc < 0) throw ParseError("m and c must be nonnegative", at);
      m = mm.get_ui();
      data.nilpotency_class = static_cast<int>(cc.get_si());
      header = true;
      continue;
    }
    if (gens_seen < m) {
      if (tok.size() != 3 || tok[0] != "a" + std::to_string(gens_seen + 1)) {
        throw ParseError("expected generator line for a" + std::to_string(gens_seen + 1), at);
      }
      GeneratorSpec g;
      std::string ord = key_value(tok[1], "order");
      if (ord != "inf") g.order = parse_integer(ord, at);
      g.level = static_cast<int>(parse_integer(key_value(tok[2], "level"), at).get_si());
      data.generators.push_back(g);
      ++gens_seen;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected relator 'lhs = rhs'", at);
    Alphabet alpha(m);
    Word lhs, rhs;
    try {
      lhs = parse_word(line.substr(0, eq), alpha);
      rhs = parse_word(line.substr(eq + 1), alpha);
    } catch (ParseError const& e) {
      throw ParseError(std::string("in relator: ") + e.what(), at);
    }
    auto tail_from = [&](std::size_t skip, std::size_t after) {
      MalcevVector t(m);
      std::size_t last = after;
      for (std::size_t k = skip; k < rhs.letters.size(); ++k) {
        auto const& l = rhs.letters[k];
        if (l.gen <= last && !(k == skip && l.gen > after)) {
          throw ParseError("relator tail must be in normal form right of a" +
                               std::to_string(after + 1),
                           at);
        }
        t[l.gen] = l.exponent;
        last = l.gen;
      }
      return t;
    };
    auto const& L = lhs.letters;
    auto const& R = rhs.letters;
    if (L.size() == 2 && L[1].exponent == 1 && L[0].gen > L[1].gen &&
        (L[0].exponent == 1 || L[0].exponent == -1)) {
      std::size_t j = L[0].gen, i = L[1].gen;
      if (R.size() < 2 || R[0].gen != i || R[0].exponent != 1 || R[1].gen != j ||
          R[1].exponent != L[0].exponent) {
        throw ParseError("conjugate relator must read 'aj ai = ai aj ...'", at);
      }
      MalcevVector t = tail_from(2, j);
      auto& table = L[0].exponent == 1 ? data.conjugates : data.inverse_conjugates;
      if (table.count({j, i})) throw ParseError("duplicate relator", at);
      table[{j, i}] = std::move(t);
    } else if (L.size() == 1 && L[0].exponent > 0) {
      std::size_t i = L[0].gen;
      if (!data.generators[i].order || *data.generators[i].order != L[0].exponent) {
        throw ParseError("power relator exponent must equal the declared order of a" +
                             std::to_string(i + 1),
                         at);
      }
      if (data.powers.count(i)) throw ParseError("duplicate power relator", at);
      data.powers[i] = tail_from(0, i);
    } else {
      throw ParseError("unrecognized relator form", at);
    }
  }
  if (!header) throw ParseError("missing header", 0);
  if (gens_seen < m) throw ParseError("missing generator lines", text.size());
  try {
    return NilpotentPresentation(std::move(data));
  } catch (ParseError const&) {
    throw;
  } catch (Error const& e) {
    throw ParseError(std::string("invalid presentation: ") + e.what(), 0);
  }
}

// Constructions -------------------------------------------------------------

PresentationPtr free_abelian(std::size_t n) {
  PresentationData d;
  d.nilpotency_class = n ? 1 : 0;
  d.generators.assign(n, GeneratorSpec{std::nullopt, 1});
  return make_presentation(std::move(d));
}

PresentationPtr direct_product(NilpotentPresentation const& a,
                               NilpotentPresentation const& b) {
  std::size_t const ma = a.size(), mb = b.size(), m = ma + mb;
  PresentationData d;
  int const ca = a.nilpotency_class();
  d.nilpotency_class = ca + b.nilpotency_class();
  for (std::size_t i = 0; i < ma; ++i) d.generators.push_back({a.order(i), a.level(i)});
  for (std::size_t i = 0; i < mb; ++i) d.generators.push_back({b.order(i), ca + b.level(i)});
  auto shift = [&](MalcevVector const& t, std::size_t off) {
    MalcevVector r(m);
    for (std::size_t l = 0; l < t.size(); ++l) r[off + l] = t[l];
    return r;
  };
  for (auto const& [k, t] : a.data().conjugates) d.conjugates[k] = shift(t, 0);
  for (auto const& [i, t] : a.data().powers) d.powers[i] = shift(t, 0);
  for (auto const& [k, t] : b.data().conjugates)
    d.conjugates[{k.first + ma, k.second + ma}] = shift(t, ma);
  for (auto const& [i, t] : b.data().powers) d.powers[i + ma] = shift(t, ma);
  return make_presentation(std::move(d));
}

}  // namespace nilkit
