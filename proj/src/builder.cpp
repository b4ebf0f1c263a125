#include "nilkit/builder.hpp"

#include <cctype>
#include <sstream>

#include "nilkit/quotient.hpp"
#include "nilkit/smith.hpp"

namespace nilkit {

// Finite presentations -------------------------------------------------------

namespace {

bool is_ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

// Splits on commas outside brackets and parentheses, keeping offsets.
std::vector<std::pair<std::string, std::size_t>> split_relators(std::string const& text,
                                                                std::size_t offset) {
  std::vector<std::pair<std::string, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char ch = i < text.size() ? text[i] : ',';
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.emplace_back(text.substr(start, i - start), offset + start);
      start = i + 1;
    }
  }
  return out;
}

bool blank(std::string const& s) {
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

FinitePresentation FinitePresentation::parse(std::string const& text) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (text.compare(pos, 5, "group") != 0) throw ParseError("expected 'group'", pos);
  pos += 5;
  FinitePresentation F;
  while (true) {
    skip_space();
    if (pos >= text.size() || text[pos] == '|') break;
    if (!is_ident_start(text[pos])) throw ParseError("expected a generator name", pos);
    std::size_t start = pos;
    while (pos < text.size() && is_ident_char(text[pos])) ++pos;
    std::string name = text.substr(start, pos - start);
    for (auto const& g : F.generators) {
      if (g == name) throw ParseError("duplicate generator '" + name + "'", start);
    }
    F.generators.push_back(std::move(name));
  }
  if (pos >= text.size()) return F;
  ++pos;  // '|'
  Alphabet alphabet(F.generators);
  for (auto const& [rel, at] : split_relators(text.substr(pos), pos)) {
    if (blank(rel)) {
      if (split_relators(text.substr(pos), pos).size() == 1) break;
      throw ParseError("empty relator", at);
    }
    try {
      auto eq = rel.find('=');
      if (eq == std::string::npos) {
        F.relators.push_back(parse_exp_word(rel, alphabet));
      } else {
        ExpWord lhs = parse_exp_word(rel.substr(0, eq), alphabet);
        lhs.append(parse_exp_word(rel.substr(eq + 1), alphabet).inverse());
        F.relators.push_back(std::move(lhs));
      }
    } catch (ParseError const& e) {
      throw ParseError(std::string("bad relator: ") + e.what(), at + e.position());
    }
  }
  return F;
}

std::string FinitePresentation::to_text() const {
  std::ostringstream out;
  out << "group";
  for (auto const& g : generators) out << ' ' << g;
  out << " |";
  Alphabet a = alphabet();
  for (std::size_t i = 0; i < relators.size(); ++i) {
    out << (i ? ", " : " ") << to_string(relators[i], a);
  }
  return out.str();
}

// Free nilpotent groups ------------------------------------------------------

namespace {

// Truncated free associative algebra Z<X_1..X_r> / (degree > c); the Magnus
// map x_i -> 1 + X_i embeds the free nilpotent group of class c.
class Magnus {
 public:
  using Element = std::vector<Integer>;

  Magnus(std::size_t r, int c) : r_(r), c_(c) {
    std::size_t block = 1;
    for (int d = 0; d <= c; ++d) {
      offset_.push_back(size_);
      block_.push_back(block);
      size_ += block;
      block *= r;
    }
  }

  std::size_t degree_offset(int d) const { return offset_[d]; }
  std::size_t degree_size(int d) const { return block_[d]; }

  Element one() const {
    Element e(size_);
    e[0] = 1;
    return e;
  }
  Element generator(std::size_t i) const {
    Element e = one();
    e[offset_[1] + i] = 1;
    return e;
  }

  Element mul(Element const& a, Element const& b) const {
    Element out(size_);
    for (int da = 0; da <= c_; ++da) {
      for (std::size_t ia = 0; ia < block_[da]; ++ia) {
        Integer const& x = a[offset_[da] + ia];
        if (x == 0) continue;
        for (int db = 0; da + db <= c_; ++db) {
          std::size_t const base = offset_[da + db] + ia * block_[db];
          for (std::size_t ib = 0; ib < block_[db]; ++ib) {
            Integer const& y = b[offset_[db] + ib];
            if (y != 0) out[base + ib] += x * y;
          }
        }
      }
    }
    return out;
  }

  // (1 + a)^n = sum_k binom(n, k) a^k, valid for every integer n since a is
  // nilpotent.
  Element power(Element const& g, Integer const& n) const {
    Element a = g;
    a[0] -= 1;
    Element out = one(), ak = one();
    Integer binom = 1;
    for (int k = 1; k <= c_; ++k) {
      ak = mul(ak, a);
      binom = binom * (n - (k - 1)) / k;
      if (binom == 0) break;
      for (std::size_t i = 0; i < size_; ++i) {
        if (ak[i] != 0) out[i] += binom * ak[i];
      }
    }
    return out;
  }

  Element inverse(Element const& g) const { return power(g, -1); }

  Element commutator(Element const& u, Element const& v) const {
    return mul(mul(inverse(u), inverse(v)), mul(u, v));
  }

 private:
  std::size_t r_;
  int c_;
  std::size_t size_ = 0;
  std::vector<std::size_t> offset_, block_;
};

// Exact solve of A z = h over Q, requiring an integral solution.
std::vector<Integer> solve_integral(std::vector<std::vector<Integer>> const& cols,
                                    std::vector<Integer> const& h) {
  std::size_t const n = cols.size(), rows = h.size();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
    a[i][n] = h[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < rows; ++j) {
    std::size_t p = r;
    while (p < rows && a[p][j] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][j] == 0) continue;
      mpq_class f = a[i][j] / a[r][j];
      for (std::size_t k = j; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][n] != 0) throw Error("internal error: Lie element outside the basic span");
  }
  if (r != n) throw Error("internal error: basic commutators are dependent");
  std::vector<Integer> z(n);
  for (std::size_t i = 0; i < r; ++i) {
    mpq_class v = a[i][n] / a[i][pivot_col[i]];
    v.canonicalize();
    if (v.get_den() != 1) throw Error("internal error: non-integral basic coordinate");
    z[pivot_col[i]] = v.get_num();
  }
  return z;
}

struct Basic {
  int weight;
  std::size_t left, right;  // meaningful for weight > 1
};

}  // namespace

FreeNilpotentGroup free_nilpotent_group(std::size_t rank, int c) {
  if (c < 1) throw Error("free nilpotent group needs class >= 1");
  std::vector<Basic> basics;
  std::vector<ExpWord> defs;
  for (std::size_t i = 0; i < rank; ++i) {
    basics.push_back({1, 0, 0});
    defs.push_back(ExpWord::letter(i));
  }
  for (int w = 2; w <= c; ++w) {
    std::size_t const known = basics.size();
    for (std::size_t u = 0; u < known; ++u) {
      for (std::size_t v = 0; v < u; ++v) {
        if (basics[u].weight + basics[v].weight != w) continue;
        if (basics[u].weight > 1 && basics[u].right > v) continue;
        basics.push_back({w, u, v});
        defs.push_back(commutator(defs[u], defs[v]));
      }
    }
  }

  Magnus alg(rank, c);
  std::vector<Magnus::Element> image;
  for (auto const& b : basics) {
    image.push_back(b.weight == 1 ? alg.generator(image.size())
                                  : alg.commutator(image[b.left], image[b.right]));
  }
  std::size_t const m = basics.size();
  // Coordinates of a group element given by its Magnus image.
  auto decompose = [&](Magnus::Element g) {
    MalcevVector out(m);
    for (int w = 1; w <= c; ++w) {
      std::vector<std::size_t> idx;
      std::vector<std::vector<Integer>> cols;
      std::size_t const off = alg.degree_offset(w), len = alg.degree_size(w);
      for (std::size_t b = 0; b < m; ++b) {
        if (basics[b].weight != w) continue;
        idx.push_back(b);
        cols.emplace_back(image[b].begin() + off, image[b].begin() + off + len);
      }
      std::vector<Integer> h(g.begin() + off, g.begin() + off + len);
      auto z = solve_integral(cols, h);
      Magnus::Element p = alg.one();
      for (std::size_t t = 0; t < idx.size(); ++t) {
        out[idx[t]] = z[t];
        if (z[t] != 0) p = alg.mul(p, alg.power(image[idx[t]], z[t]));
      }
      g = alg.mul(alg.inverse(p), g);
    }
    if (g != alg.one()) throw Error("internal error: Magnus decomposition did not terminate");
    return out;
  };

  PresentationData d;
  d.nilpotency_class = c;
  for (auto const& b : basics) d.generators.push_back({std::nullopt, b.weight});
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      MalcevVector t = decompose(alg.commutator(image[j], image[i]));
      if (!t.is_identity()) d.conjugates[{j, i}] = std::move(t);
    }
  }
  FreeNilpotentGroup out;
  out.presentation = make_presentation(std::move(d));
  out.definitions = std::move(defs);
  return out;
}

// Invariant-factor bases -----------------------------------------------------

InvariantFactorBasis::InvariantFactorBasis(PresentationPtr source) : source_(std::move(source)) {
  NilpotentPresentation const& P = *source_;
  PresentationData d;
  d.nilpotency_class = 0;
  for (int l = 1; l <= P.nilpotency_class(); ++l) {
    Level L;
    L.lo = P.series_start(l);
    L.hi = P.series_start(l + 1);
    std::size_t const n = L.hi - L.lo;
    if (n == 0) continue;
    IntMatrix M(n, std::vector<Integer>(n));
    for (std::size_t i = L.lo; i < L.hi; ++i) {
      if (auto const& e = P.order(i)) {
        MalcevVector const& t = P.power_tail(i);
        for (std::size_t k = L.lo; k < L.hi; ++k) M[i - L.lo][k - L.lo] = -t[k];
        M[i - L.lo][i - L.lo] += *e;
      }
    }
    SmithForm S = smith_normal_form(M, n);
    for (std::size_t k = 0; k < n; ++k) {
      Integer const& dk = S.D[k][k];
      if (dk == 1) continue;
      L.kept.push_back(k);
      MalcevVector raw(P.size());
      for (std::size_t i = 0; i < n; ++i) raw[L.lo + i] = S.V_inverse[k][i];
      basis_.push_back(P.canonicalize(raw));
      orders_.push_back(dk == 0 ? Order() : Order(dk));
      d.generators.push_back({orders_.back(), l});
      d.nilpotency_class = l;
    }
    L.V = std::move(S.V);
    levels_.push_back(std::move(L));
  }
  // Relations of the new basis, computed in the source group.
  std::size_t const m = basis_.size();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      MalcevVector t = coordinates(P.commutator(basis_[j], basis_[i]));
      if (!t.is_identity()) d.conjugates[{j, i}] = std::move(t);
    }
    if (orders_[j]) d.powers[j] = coordinates(P.power(basis_[j], *orders_[j]));
  }
  target_ = make_presentation(std::move(d));
}

MalcevVector InvariantFactorBasis::coordinates(MalcevVector const& g) const {
  NilpotentPresentation const& P = *source_;
  MalcevVector out(basis_.size());
  MalcevVector r = P.canonicalize(g);
  std::size_t next = 0;
  for (auto const& L : levels_) {
    MalcevVector p = P.identity();
    for (std::size_t k : L.kept) {
      Integer z = 0;
      for (std::size_t i = L.lo; i < L.hi; ++i) z += r[i] * L.V[i - L.lo][k];
      if (orders_[next]) z = floor_mod(z, *orders_[next]);
      out[next] = z;
      if (z != 0) p = P.multiply(p, P.power(basis_[next], z));
      ++next;
    }
    r = P.multiply(P.inverse(p), r);
    for (std::size_t i = L.lo; i < L.hi; ++i) {
      if (r[i] != 0) throw Error("internal error: section basis does not span");
    }
  }
  if (!r.is_identity()) throw Error("internal error: section basis does not span");
  return out;
}

MalcevVector InvariantFactorBasis::element(MalcevVector const& coords) const {
  NilpotentPresentation const& P = *source_;
  MalcevVector g = P.identity();
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (coords[k] != 0) g = P.multiply(g, P.power(basis_[k], coords[k]));
  }
  return g;
}

// Conversion -----------------------------------------------------------------

PresentationConversion build_nilpotent_presentation(FinitePresentation const& F, int c) {
  if (c < 1) throw Error("nilpotency class bound must be at least 1");
  std::size_t const r = F.generators.size();
  PresentationConversion conv;
  if (r == 0) {
    PresentationData d;
    d.nilpotency_class = 0;
    conv.target = make_presentation(std::move(d));
    return conv;
  }
  FreeNilpotentGroup free = free_nilpotent_group(r, c);
  NilpotentPresentation const& FP = *free.presentation;
  std::vector<MalcevVector> rel;
  for (auto const& w : F.relators) rel.push_back(FP.evaluate(w));
  QuotientMap q(free.presentation, normal_closure(FP, rel));
  InvariantFactorBasis basis(q.target());
  conv.target = basis.target();
  if (!conv.target->check_consistency()) {
    throw Error("internal error: built presentation is inconsistent");
  }
  for (std::size_t x = 0; x < r; ++x) {
    conv.embed.push_back(basis.coordinates(q.project(FP.generator(x))));
  }
  for (std::size_t y = 0; y < conv.target->size(); ++y) {
    MalcevVector unit(conv.target->size());
    unit[y] = 1;
    MalcevVector f = q.lift(basis.element(unit));
    ExpWord w;
    for (std::size_t t = 0; t < f.size(); ++t) {
      if (f[t] != 0) w.append(free.definitions[t].power(f[t]));
    }
    conv.phi.push_back(std::move(w));
  }
  return conv;
}

std::optional<int> detect_nilpotency_class(FinitePresentation const& F, int max_class) {
  for (int c = 1; c <= max_class; ++c) {
    auto conv = build_nilpotent_presentation(F, c + 1);
    NilpotentPresentation const& P = *conv.target;
    if (P.series_start(c + 1) == P.size()) return c;
  }
  return std::nullopt;
}

}  // namespace nilkit
