#include "nilkit/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilkit/bench.hpp"
#include "nilkit/builder.hpp"
#include "nilkit/conjugacy.hpp"
#include "nilkit/cosets.hpp"
#include "nilkit/homkit.hpp"
#include "nilkit/oracle.hpp"
#include "nilkit/torsion.hpp"

namespace nilkit {

namespace {

namespace fs = std::filesystem;

// Heisenberg group, used by `bench` when no presentation is given.
char const* const kDefaultBenchPresentation =
    "nilpotent m=3 c=2\n"
    "a1 order=inf level=1\n"
    "a2 order=inf level=1\n"
    "a3 order=inf level=2\n"
    "a2 a1 = a1 a2 a3^-1\n";

// Raised for results that fail re-verification or the oracle cross-check.
struct CheckFailure : Error {
  using Error::Error;
};

std::string read_file(std::string const& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_file(std::string const& arg) {
  std::error_code ec;
  return !arg.empty() && fs::is_regular_file(arg, ec);
}

std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(MalcevVector const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s + ")";
}

std::string fmt(FullFormSequence const& H) {
  std::string s = "[";
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (i) s += ", ";
    s += fmt(H.rows[i]);
  }
  return s + "]";
}

MalcevVector parse_coords(std::string const& text, std::size_t m) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw ParseError("unbalanced parenthesis in coordinates", t.size());
    t = t.substr(1, t.size() - 2);
  }
  for (char& ch : t) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(t);
  MalcevVector v(m);
  std::size_t i = 0;
  for (std::string tok; in >> tok; ++i) {
    if (i >= m) throw ParseError("too many coordinates (expected " + std::to_string(m) + ")", 0);
    Integer x;
    if (x.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0) {
      throw ParseError("bad coordinate '" + tok + "'", text.find(tok));
    }
    v[i] = x;
  }
  if (i != m && i != 0) {
    throw ParseError("expected " + std::to_string(m) + " coordinates, got " + std::to_string(i), 0);
  }
  return v;
}

struct Session {
  std::ostream& out;
  std::ostream& err;
  std::string format = "binexp";
  bool verify = true;
  bool check = false;

  PresentationPtr load_presentation(std::string const& path) const {
    if (path.empty()) throw Error("missing presentation (-p)");
    return std::make_shared<const NilpotentPresentation>(NilpotentPresentation::parse(read_file(path)));
  }

  MalcevVector element(NilpotentPresentation const& P, std::string const& text) const {
    Alphabet a = P.alphabet();
    if (format == "plain") return P.collect(parse_word(text, a));
    if (format == "binexp") return P.evaluate(parse_exp_word(text, a));
    if (format == "coords") return P.canonicalize(parse_coords(text, P.size()));
    if (format == "slp") {
      std::string body = is_file(text) ? read_file(text) : text;
      for (char& ch : body) {
        if (ch == ';') ch = '\n';
      }
      return P.evaluate(StraightLineProgram::parse(body, a));
    }
    throw Error("unknown format '" + format + "'");
  }

  // A file with one element per line ('#' starts a comment), or an inline
  // list separated by ';'.
  std::vector<MalcevVector> elements(NilpotentPresentation const& P, std::string const& arg) const {
    std::vector<std::string> items;
    if (is_file(arg)) {
      std::istringstream in(read_file(arg));
      for (std::string line; std::getline(in, line);) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (!trim(line).empty()) items.push_back(line);
      }
    } else if (format == "slp") {
      if (!trim(arg).empty()) items.push_back(arg);
    } else {
      std::size_t start = 0;
      while (start <= arg.size()) {
        auto end = arg.find(';', start);
        if (end == std::string::npos) end = arg.size();
        std::string item = arg.substr(start, end - start);
        if (!trim(item).empty()) items.push_back(item);
        start = end + 1;
      }
    }
    std::vector<MalcevVector> out;
    for (auto const& item : items) out.push_back(element(P, item));
    return out;
  }

  FullFormSequence subgroup(NilpotentPresentation const& P, std::string const& arg) const {
    return full_form(P, elements(P, arg));
  }

  void verified(bool ok, std::string const& what) const {
    if (verify && !ok) throw CheckFailure("verification failed: " + what);
  }

  // Oracle table when --check is on and the group is small and finite.
  std::optional<FiniteGroupTable> oracle(PresentationPtr const& P) const {
    if (!check) return std::nullopt;
    for (std::size_t i = 0; i < P->size(); ++i) {
      if (!P->is_torsion(i)) {
        err << "check: skipped (infinite group)\n";
        return std::nullopt;
      }
    }
    try {
      return FiniteGroupTable::enumerate(P);
    } catch (Error const& e) {
      err << "check: skipped (" << e.what() << ")\n";
      return std::nullopt;
    }
  }

  void compare(bool ok, std::string const& what) const {
    if (!ok) throw CheckFailure("check failed: " + what + " disagrees with brute force");
  }
  void check_passed() const { out << "check: ok\n"; }
};

Set as_set(FiniteGroupTable const& T, FullFormSequence const& H) { return T.closure(H.rows); }

std::vector<std::size_t> indices(FiniteGroupTable const& T, std::vector<MalcevVector> const& v) {
  std::vector<std::size_t> out;
  for (auto const& g : v) out.push_back(T.index(g));
  return out;
}

Set coset_set(FiniteGroupTable const& T, MalcevVector const& rep, FullFormSequence const& H) {
  Set out;
  std::size_t r = T.index(rep);
  for (std::size_t h : as_set(T, H)) out.push_back(T.multiply(r, h));
  std::sort(out.begin(), out.end());
  return out;
}

struct HomFile {
  PresentationPtr domain, codomain;
  std::vector<MalcevVector> sources, images;
};

// hom: <domain-file> -> <codomain-file>
// <domain word> |-> <codomain word>
HomFile load_hom(Session const& s, std::string const& path) {
  std::istringstream in(read_file(path));
  fs::path dir = fs::path(path).parent_path();
  auto resolve = [&](std::string const& p) {
    fs::path f(p);
    return (f.is_absolute() || dir.empty() ? f : dir / f).string();
  };
  HomFile h;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!h.domain) {
      auto arrow = line.find("->");
      if (line.rfind("hom:", 0) != 0 || arrow == std::string::npos) {
        throw ParseError("expected 'hom: <domain> -> <codomain>' on line " + std::to_string(lineno), 0);
      }
      h.domain = s.load_presentation(resolve(trim(line.substr(4, arrow - 4))));
      h.codomain = s.load_presentation(resolve(trim(line.substr(arrow + 2))));
      continue;
    }
    auto maps = line.find("|->");
    if (maps == std::string::npos) {
      throw ParseError("expected '<word> |-> <word>' on line " + std::to_string(lineno), 0);
    }
    h.sources.push_back(s.element(*h.domain, line.substr(0, maps)));
    h.images.push_back(s.element(*h.codomain, line.substr(maps + 3)));
  }
  if (!h.domain) throw Error("empty homomorphism file");
  return h;
}

// Rewrites the two-letter short flags of coset-intersect into long ones.
void normalize_flags(std::vector<std::string>& args) {
  for (auto& a : args) {
    if (a == "-g1" || a == "-g2") a = "-" + a;
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  normalize_flags(args);
  Session s{out, err};
  CLI::App app{"Algorithms for finitely generated nilpotent groups", "nilkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string pres, Harg, Karg, Aarg, Barg, hom_path, g1 = "", g2 = "";
  bool no_verify = false;
  app.add_option("-p,--presentation", pres, "presentation file ('-' for stdin)");
  app.add_option("--format", s.format, "element format")
      ->check(CLI::IsMember({"plain", "binexp", "coords", "slp"}));
  app.add_flag("--check", s.check, "cross-check against brute force on finite groups");
  app.add_flag("--no-verify", no_verify, "skip re-verification of results");

  std::vector<std::string> words;
  std::string exponent;
  auto sub = [&](char const* name, char const* help) { return app.add_subcommand(name, help); };
  auto* normal_form = sub("normal-form", "canonical coordinates of a word");
  normal_form->add_option("word", words)->expected(1)->required();
  auto* multiply_cmd = sub("multiply", "product of two elements");
  multiply_cmd->add_option("words", words)->expected(2)->required();
  auto* power_cmd = sub("power", "element raised to an integer");
  std::string base;
  power_cmd->add_option("word", base)->required();
  power_cmd->add_option("n", exponent)->required();
  auto* full_form_cmd = sub("full-form", "full-form sequence of a subgroup");
  auto* member_cmd = sub("membership", "decide g in H");
  member_cmd->add_option("word", words)->expected(1)->required();
  auto* subpres_cmd = sub("subgroup-presentation", "nilpotent presentation of a subgroup");
  auto* conj_el = sub("conj-elements", "x with x^-1 g x = h");
  conj_el->add_option("words", words)->expected(2)->required();
  auto* central = sub("centralizer", "centralizer of elements");
  central->add_option("words", words)->expected(1, 1 << 20)->required();
  auto* kernel_cmd = sub("kernel", "kernel of a homomorphism");
  auto* preimage_cmd = sub("preimage", "preimage of an element under a homomorphism");
  preimage_cmd->add_option("word", words)->expected(1)->required();
  auto* comm_tuples = sub("conj-commuting-tuples", "conjugate commuting tuples");
  auto* tuples = sub("conj-tuples", "conjugate arbitrary tuples");
  auto* conj_sub = sub("conj-subgroups", "g with H^g = K");
  auto* normalizer_cmd = sub("normalizer", "normalizer of a subgroup");
  auto* coset_cmd = sub("coset-intersect", "g1 H cap g2 K");
  coset_cmd->add_option("--g1", g1, "first coset representative");
  coset_cmd->add_option("--g2", g2, "second coset representative");
  auto* intersect_cmd = sub("intersect", "H cap K");
  auto* torsion_cmd = sub("torsion", "torsion subgroup");
  auto* isolator_cmd = sub("isolator", "isolator of a subgroup");
  auto* build_cmd = sub("build-presentation", "nilpotent presentation of <X | R>");
  int class_bound = 0, detect_max = 8;
  build_cmd->add_option("-c,--class", class_bound, "nilpotency class bound");
  build_cmd->add_option("--detect-max", detect_max, "largest class tried when -c is absent");
  auto* bench_cmd = sub("bench", "normal-form timing sweep as CSV");
  std::string family = "slp";
  std::vector<std::size_t> sizes;
  double min_seconds = 0.02;
  bench_cmd->add_option("--family", family)->check(CLI::IsMember({"slp", "plain"}));
  bench_cmd->add_option("--sizes", sizes)->delimiter(',');
  bench_cmd->add_option("--min-seconds", min_seconds);
  auto* check_cmd = sub("check", "consistency and oracle self-check of a presentation");

  for (auto* c : {full_form_cmd, member_cmd, subpres_cmd, conj_sub, normalizer_cmd, coset_cmd,
                  intersect_cmd, isolator_cmd}) {
    c->add_option("-H", Harg, "subgroup file or ';'-separated generators");
  }
  for (auto* c : {conj_sub, normalizer_cmd, coset_cmd, intersect_cmd}) {
    c->add_option("-K", Karg, "subgroup file or ';'-separated generators");
  }
  for (auto* c : {comm_tuples, tuples}) {
    c->add_option("-A", Aarg, "first tuple")->required();
    c->add_option("-B", Barg, "second tuple")->required();
  }
  for (auto* c : {kernel_cmd, preimage_cmd}) {
    c->add_option("--hom", hom_path, "homomorphism file")->required();
  }

  std::vector<char const*> argv{"nilkit"};
  for (auto const& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  s.verify = !no_verify;
  for (auto* c : {normal_form, multiply_cmd, power_cmd, subpres_cmd, build_cmd, bench_cmd}) {
    if (s.check && *c) err << "check: skipped (no oracle for " << c->get_name() << ")\n";
  }

  try {
    if (*bench_cmd) {
      PresentationPtr P =
          pres.empty() ? std::make_shared<const NilpotentPresentation>(
                             NilpotentPresentation::parse(kDefaultBenchPresentation))
                       : s.load_presentation(pres);
      auto fam = family == "slp" ? BenchFamily::SlpDoubling : BenchFamily::PlainWords;
      out << to_csv(bench_normal_form(*P, fam, sizes, 1, min_seconds));
      return 0;
    }

    if (*build_cmd) {
      auto F = FinitePresentation::parse(read_file(pres.empty() ? "-" : pres));
      int c = class_bound;
      if (c == 0) {
        auto detected = detect_nilpotency_class(F, detect_max);
        if (!detected) {
          err << "error: nilpotency class not detected up to " << detect_max << "\n";
          return 2;
        }
        c = *detected;
      }
      auto conv = build_nilpotent_presentation(F, c);
      NilpotentPresentation const& T = *conv.target;
      if (s.verify) {
        for (auto const& r : F.relators) {
          s.verified(evaluate_expression(T, r, conv.embed).is_identity(), "relator image");
        }
        for (std::size_t y = 0; y < T.size(); ++y) {
          s.verified(evaluate_expression(T, conv.phi[y], conv.embed) == T.generator(y),
                     "round trip");
        }
      }
      Alphabet names = F.alphabet();
      out << "class: " << c << "\n";
      for (std::size_t x = 0; x < conv.embed.size(); ++x) {
        out << "embed " << F.generators[x] << ": " << fmt(conv.embed[x]) << "\n";
      }
      for (std::size_t y = 0; y < conv.phi.size(); ++y) {
        out << "phi a" << (y + 1) << ": " << to_string(conv.phi[y], names) << "\n";
      }
      out << "presentation:\n" << T.to_text();
      return 0;
    }

    if (*kernel_cmd || *preimage_cmd) {
      HomFile h = load_hom(s, hom_path);
      auto phi = Homomorphism::on_generators(h.domain, h.sources, h.codomain, h.images);
      auto table = s.oracle(h.domain);
      if (*kernel_cmd) {
        FullFormSequence ker = phi.kernel();
        out << "kernel: " << fmt(ker) << "\n";
        if (table) {
          Set brute;
          for (std::size_t k : as_set(*table, phi.source_subgroup())) {
            if (phi.apply(table->element(k)).is_identity()) brute.push_back(k);
          }
          s.compare(as_set(*table, ker) == brute, "kernel");
          s.check_passed();
        }
        return 0;
      }
      MalcevVector target = s.element(*h.codomain, words[0]);
      auto pre = phi.preimage(target);
      if (table) {
        bool brute = false;
        for (std::size_t k : as_set(*table, phi.source_subgroup())) {
          brute = brute || phi.apply(table->element(k)) == target;
        }
        s.compare(brute == pre.has_value(), "preimage decision");
        s.check_passed();
      }
      if (!pre) {
        out << "preimage: none\n";
        return 1;
      }
      s.verified(phi.apply(*pre) == target, "preimage");
      out << "preimage: " << fmt(*pre) << "\n";
      return 0;
    }

    PresentationPtr Pp = s.load_presentation(pres);
    NilpotentPresentation const& P = *Pp;

    if (*check_cmd) {
      bool ok = P.check_consistency();
      out << "consistent: " << (ok ? "yes" : "no") << "\n";
      if (!ok) return 1;
      bool finite = true;
      for (std::size_t i = 0; i < P.size(); ++i) finite = finite && P.is_torsion(i);
      if (!finite) {
        out << "order: inf\n";
        return 0;
      }
      Integer n = 1;
      for (std::size_t i = 0; i < P.size(); ++i) n *= *P.order(i);
      out << "order: " << n.get_str() << "\n";
      s.check = true;
      if (auto T = s.oracle(Pp)) {
        s.compare(Integer(static_cast<unsigned long>(T->order())) == n, "group order");
        s.check_passed();
      }
      return 0;
    }
    if (*normal_form) {
      MalcevVector g = s.element(P, words[0]);
      out << "coords: " << fmt(g) << "\n";
      return 0;
    }
    if (*multiply_cmd) {
      MalcevVector g = P.multiply(s.element(P, words[0]), s.element(P, words[1]));
      out << "coords: " << fmt(g) << "\n";
      return 0;
    }
    if (*power_cmd) {
      Integer n;
      if (n.set_str(exponent, 10) != 0) throw ParseError("bad exponent '" + exponent + "'", 0);
      MalcevVector g = P.power(s.element(P, base), n);
      out << "coords: " << fmt(g) << "\n";
      return 0;
    }

    auto table = s.oracle(Pp);

    if (*full_form_cmd) {
      auto gens = s.elements(P, Harg);
      FullFormSequence H = full_form(P, gens);
      out << "subgroup: " << fmt(H) << "\n";
      if (table) {
        s.compare(as_set(*table, H) == table->closure(gens), "subgroup closure");
        s.check_passed();
      }
      return 0;
    }
    if (*member_cmd) {
      FullFormSequence H = s.subgroup(P, Harg);
      MalcevVector g = s.element(P, words[0]);
      auto b = membership(P, H, g);
      if (table) {
        s.compare(brute_membership(*table, as_set(*table, H), table->index(g)) == b.has_value(),
                  "membership");
        s.check_passed();
      }
      if (!b) {
        out << "member: no\n";
        return 1;
      }
      s.verified(reassemble(P, H, *b) == g, "membership exponents");
      out << "member: yes\nexponents: " << fmt(MalcevVector(*b)) << "\n";
      return 0;
    }
    if (*subpres_cmd) {
      FullFormSequence H = s.subgroup(P, Harg);
      auto conv = subgroup_presentation(P, H);
      out << "subgroup: " << fmt(H) << "\npresentation:\n" << conv.target->to_text();
      return 0;
    }
    if (*conj_el) {
      MalcevVector g = s.element(P, words[0]), h = s.element(P, words[1]);
      auto x = conjugacy_element(P, g, h);
      if (table) {
        s.compare(brute_conjugacy(*table, table->index(g), table->index(h)).has_value() ==
                      x.has_value(),
                  "conjugacy decision");
      }
      if (!x) {
        if (table) s.check_passed();
        out << "conjugate: no\n";
        return 1;
      }
      s.verified(P.conjugate(g, *x) == h, "conjugator");
      FullFormSequence C = centralizer(P, {h});
      if (table) {
        s.compare(as_set(*table, C) == brute_centralizer(*table, {table->index(h)}), "centralizer");
        s.check_passed();
      }
      out << "conjugate: yes\nwitness: " << fmt(*x) << "\ncentralizer: " << fmt(C) << "\n";
      return 0;
    }
    if (*central) {
      std::vector<MalcevVector> S;
      for (auto const& w : words) S.push_back(s.element(P, w));
      FullFormSequence C = centralizer(P, S);
      out << "centralizer: " << fmt(C) << "\n";
      if (table) {
        s.compare(as_set(*table, C) == brute_centralizer(*table, indices(*table, S)), "centralizer");
        s.check_passed();
      }
      return 0;
    }
    if (*comm_tuples || *tuples) {
      auto A = s.elements(P, Aarg), B = s.elements(P, Barg);
      if (A.size() != B.size()) throw Error("tuples -A and -B have different lengths");
      auto res = *comm_tuples ? conjugate_commuting_tuples(P, A, B) : conjugate_tuples(P, A, B);
      if (table) {
        auto brute = brute_simultaneous_conjugacy(*table, indices(*table, A), indices(*table, B));
        s.compare(brute.has_value() == res.has_value(), "tuple conjugacy decision");
        if (res) {
          s.compare(as_set(*table, res->stabilizer) == brute_centralizer(*table, indices(*table, B)),
                    "joint centralizer");
        }
        s.check_passed();
      }
      if (!res) {
        out << "conjugate: no\n";
        return 1;
      }
      for (std::size_t i = 0; i < A.size(); ++i) {
        s.verified(P.conjugate(A[i], res->witness) == B[i], "tuple conjugator");
      }
      out << "conjugate: yes\nwitness: " << fmt(res->witness)
          << "\ncentralizer: " << fmt(res->stabilizer) << "\n";
      return 0;
    }
    if (*conj_sub) {
      FullFormSequence H = s.subgroup(P, Harg), K = s.subgroup(P, Karg);
      auto res = subgroup_conjugacy(P, H, K);
      if (table) {
        auto brute = brute_subgroup_conjugacy(*table, as_set(*table, H), as_set(*table, K));
        s.compare(brute.has_value() == res.has_value(), "subgroup conjugacy decision");
        if (res) {
          s.compare(as_set(*table, res->stabilizer) == brute_normalizer(*table, as_set(*table, K)),
                    "normalizer");
        }
        s.check_passed();
      }
      if (!res) {
        out << "conjugate: no\n";
        return 1;
      }
      if (s.verify) {
        std::vector<MalcevVector> conj;
        for (auto const& r : H.rows) conj.push_back(P.conjugate(r, res->witness));
        s.verified(full_form(P, conj) == K, "subgroup conjugator");
      }
      out << "conjugate: yes\nwitness: " << fmt(res->witness)
          << "\nnormalizer: " << fmt(res->stabilizer) << "\n";
      return 0;
    }
    if (*normalizer_cmd) {
      FullFormSequence K = s.subgroup(P, Karg.empty() ? Harg : Karg);
      FullFormSequence N = normalizer(P, K);
      out << "normalizer: " << fmt(N) << "\n";
      if (table) {
        s.compare(as_set(*table, N) == brute_normalizer(*table, as_set(*table, K)), "normalizer");
        s.check_passed();
      }
      return 0;
    }
    if (*coset_cmd) {
      FullFormSequence H = s.subgroup(P, Harg), K = s.subgroup(P, Karg);
      MalcevVector x1 = s.element(P, g1), x2 = s.element(P, g2);
      auto res = coset_intersection(P, x1, H, x2, K);
      if (table) {
        Set brute = brute_coset_intersection(*table, table->index(x1), as_set(*table, H),
                                             table->index(x2), as_set(*table, K));
        s.compare(res ? coset_set(*table, res->representative, res->intersection) == brute
                      : brute.empty(),
                  "coset intersection");
        s.check_passed();
      }
      if (!res) {
        out << "intersection: empty\n";
        return 1;
      }
      MalcevVector const& r = res->representative;
      s.verified(contains(P, H, P.multiply(P.inverse(x1), r)) &&
                     contains(P, K, P.multiply(P.inverse(x2), r)),
                 "coset representative");
      out << "representative: " << fmt(r) << "\nintersection: " << fmt(res->intersection) << "\n";
      return 0;
    }
    if (*intersect_cmd) {
      FullFormSequence H = s.subgroup(P, Harg), K = s.subgroup(P, Karg);
      FullFormSequence I = subgroup_intersection(P, H, K);
      out << "intersection: " << fmt(I) << "\n";
      if (table) {
        Set h = as_set(*table, H), k = as_set(*table, K), both;
        std::set_intersection(h.begin(), h.end(), k.begin(), k.end(), std::back_inserter(both));
        s.compare(as_set(*table, I) == both, "intersection");
        s.check_passed();
      }
      return 0;
    }
    if (*torsion_cmd) {
      TorsionData T = torsion_subgroup(P);
      out << "torsion: " << fmt(T.subgroup) << "\norder: " << T.order.get_str() << "\n";
      if (table) {
        s.compare(as_set(*table, T.subgroup) == brute_torsion(*table), "torsion subgroup");
        s.check_passed();
      }
      return 0;
    }
    if (*isolator_cmd) {
      FullFormSequence H = s.subgroup(P, Harg);
      FullFormSequence I = isolator(P, H);
      out << "isolator: " << fmt(I) << "\n";
      if (table) {
        s.compare(as_set(*table, I) == brute_isolator(*table, as_set(*table, H)), "isolator");
        s.check_passed();
      }
      return 0;
    }
  } catch (ParseError const& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand handled\n";
  return 2;
}

}  // namespace nilkit
