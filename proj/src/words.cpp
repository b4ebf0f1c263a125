#include "nilkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilkit {

std::string format(MalcevVector const& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out + ")";
}

MalcevVector parse_coordinates(std::string const& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip();
  if (i == text.size() || text[i] != '(') throw ParseError("expected '('", i);
  ++i;
  MalcevVector v;
  skip();
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    while (true) {
      skip();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      v.coords.push_back(
          parse_integer(std::string_view(text).substr(start, i - start), start));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or ')'", i);
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing characters", i);
  return v;
}

// Alphabet ------------------------------------------------------------------

std::string Alphabet::name(std::size_t gen) const {
  if (gen < names_.size()) return names_[gen];
  return "a" + std::to_string(gen + 1);
}

std::size_t Alphabet::lookup(std::string_view ident) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == ident) return i;
  }
  if (ident.size() >= 2 && ident[0] == 'a' &&
      std::all_of(ident.begin() + 1, ident.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t idx = 0;
    for (char c : ident.substr(1)) {
      idx = idx * 10 + static_cast<std::size_t>(c - '0');
      if (idx > size_) return size_;
    }
    if (idx >= 1 && idx <= size_) return idx - 1;
  }
  return size_;
}

// Word ----------------------------------------------------------------------

Integer Word::length() const {
  Integer n = 0;
  for (auto const& l : letters) n += abs(l.exponent);
  return n;
}

Word Word::inverse() const {
  Word w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    w.letters.push_back({it->gen, -it->exponent});
  }
  return w;
}

void Word::append(std::size_t gen, Integer const& exponent) {
  if (exponent == 0) return;
  if (!letters.empty() && letters.back().gen == gen) {
    letters.back().exponent += exponent;
    if (letters.back().exponent == 0) letters.pop_back();
    return;
  }
  letters.push_back({gen, exponent});
}

void Word::append(Word const& w) {
  for (auto const& l : w.letters) append(l.gen, l.exponent);
}

Word normalize(Word w) {
  Word out;
  for (auto const& l : w.letters) out.append(l.gen, l.exponent);
  return out;
}

// ExpWord -------------------------------------------------------------------

ExpWord ExpWord::from_word(Word const& w) {
  ExpWord e;
  for (auto const& l : w.letters) e.terms.push_back({l.gen, nullptr, l.exponent});
  return e;
}

ExpWord ExpWord::letter(std::size_t gen, Integer const& exponent) {
  ExpWord e;
  e.terms.push_back({gen, nullptr, exponent});
  return e;
}

ExpWord ExpWord::power(Integer const& n) const {
  ExpWord e;
  if (n == 0 || terms.empty()) return e;
  if (n == 1) return *this;
  if (terms.size() == 1) {
    ExpTerm t = terms.front();
    t.exponent *= n;
    e.terms.push_back(std::move(t));
    return e;
  }
  e.terms.push_back({0, std::make_shared<const ExpWord>(*this), n});
  return e;
}

ExpWord& ExpWord::append(ExpWord const& w) {
  terms.insert(terms.end(), w.terms.begin(), w.terms.end());
  return *this;
}

ExpWord commutator(ExpWord const& u, ExpWord const& v) {
  ExpWord e = u.inverse();
  e.append(v.inverse()).append(u).append(v);
  return e;
}

Integer ExpWord::expanded_length() const {
  Integer n = 0;
  for (auto const& t : terms) {
    Integer base = t.sub ? t.sub->expanded_length() : Integer(1);
    n += base * abs(t.exponent);
  }
  return n;
}

namespace {

void expand_into(ExpWord const& w, Word& out) {
  for (auto const& t : w.terms) {
    if (!t.sub) {
      out.append(t.gen, t.exponent);
      continue;
    }
    Word inner;
    expand_into(*t.sub, inner);
    if (t.exponent < 0) inner = inner.inverse();
    Integer reps = abs(t.exponent);
    for (Integer k = 0; k < reps; ++k) out.append(inner);
  }
}

}  // namespace

Word ExpWord::expand(Integer const& limit) const {
  if (expanded_length() > limit) {
    throw ExpansionLimitError("word expansion exceeds limit of " +
                              limit.get_str() + " letters");
  }
  Word out;
  expand_into(*this, out);
  return out;
}

std::string to_string(Word const& w, Alphabet const& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (auto const& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += alphabet.name(l.gen);
    if (l.exponent != 1) out += "^" + l.exponent.get_str();
  }
  return out;
}

std::string to_string(ExpWord const& w, Alphabet const& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (auto const& t : w.terms) {
    if (!out.empty()) out += ' ';
    if (t.sub) {
      out += "(" + to_string(*t.sub, alphabet) + ")";
    } else {
      out += alphabet.name(t.gen);
    }
    if (t.exponent != 1) out += "^" + t.exponent.get_str();
  }
  return out;
}

// Parser --------------------------------------------------------------------

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, Alphabet const& alphabet)
      : s_(text), a_(alphabet) {}

  ExpWord parse_all() {
    ExpWord w = word();
    skip();
    if (pos_ != s_.size()) {
      throw ParseError(std::string("unexpected character '") + s_[pos_] + "'",
                       pos_);
    }
    return w;
  }

 private:
  void skip() {
    while (pos_ < s_.size() &&
           (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
      ++pos_;
  }

  bool at_word_end() {
    skip();
    return pos_ == s_.size() || s_[pos_] == ')' || s_[pos_] == ']' ||
           s_[pos_] == ',';
  }

  ExpWord word() {
    ExpWord w;
    while (!at_word_end()) term(w);
    return w;
  }

  Integer exponent() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '^') return Integer(1);
    ++pos_;
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return parse_integer(s_.substr(start, pos_ - start), start);
  }

  void term(ExpWord& w) {
    std::size_t start = pos_;
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExpWord inner = word();
      expect(')');
      Integer e = exponent();
      push_group(w, std::move(inner), e);
      return;
    }
    if (c == '[') {
      ++pos_;
      ExpWord u = word();
      expect(',');
      ExpWord v = word();
      expect(']');
      Integer e = exponent();
      push_group(w, commutator(u, v), e);
      return;
    }
    if (c == '1' && (pos_ + 1 == s_.size() ||
                     !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      exponent();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_'))
        ++pos_;
      std::string_view ident = s_.substr(start, pos_ - start);
      std::size_t gen = a_.lookup(ident);
      if (gen == a_.size()) {
        bool indexed = ident.size() >= 2 && ident[0] == 'a' &&
                       std::all_of(ident.begin() + 1, ident.end(), [](char d) {
                         return std::isdigit(static_cast<unsigned char>(d));
                       });
        throw ParseError(indexed ? "generator index out of range: " + std::string(ident)
                                 : "unknown generator: " + std::string(ident),
                         start);
      }
      Integer e = exponent();
      if (e != 0) w.terms.push_back({gen, nullptr, e});
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  static void push_group(ExpWord& w, ExpWord inner, Integer const& e) {
    if (e == 0 || inner.empty()) return;
    if (e == 1) {
      w.append(inner);
      return;
    }
    w.terms.push_back({0, std::make_shared<const ExpWord>(std::move(inner)), e});
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string_view s_;
  Alphabet const& a_;
  std::size_t pos_ = 0;
};

}  // namespace

ExpWord parse_exp_word(std::string_view text, Alphabet const& alphabet) {
  return WordParser(text, alphabet).parse_all();
}

Word parse_word(std::string_view text, Alphabet const& alphabet,
                Integer const& limit) {
  return parse_exp_word(text, alphabet).expand(limit);
}

// Straight-line programs -----------------------------------------------------

using Rule = StraightLineProgram::Rule;

StraightLineProgram::StraightLineProgram(std::vector<Rule> rules)
    : rules_(std::move(rules)) {
  if (rules_.empty()) throw Error("straight-line program has no rules");
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto const& r = rules_[i];
    if (r.kind == Rule::Kind::Pair && (r.left >= i || r.right >= i)) {
      throw Error("rule A" + std::to_string(i + 1) +
                  " references a nonterminal that is not smaller");
    }
    if (r.kind == Rule::Kind::Terminal && r.sign != 1 && r.sign != -1) {
      throw Error("terminal rule exponent must be +1 or -1");
    }
  }
  std::vector<bool> reached(rules_.size(), false);
  reached.back() = true;
  for (std::size_t i = rules_.size(); i-- > 0;) {
    if (!reached[i]) {
      throw Error("nonterminal A" + std::to_string(i + 1) +
                  " is unreachable from the root");
    }
    if (rules_[i].kind == Rule::Kind::Pair) {
      reached[rules_[i].left] = reached[rules_[i].right] = true;
    }
  }
}

StraightLineProgram StraightLineProgram::parse(std::string_view text,
                                               Alphabet const& alphabet) {
  std::vector<Rule> rules;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream in{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (!tok.empty()) {
      auto nonterminal = [&](std::string const& t) -> std::size_t {
        std::size_t at = line_start + line.find(t);
        if (t.size() < 2 || t[0] != 'A' ||
            !std::all_of(t.begin() + 1, t.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw ParseError("expected nonterminal A<i>, got '" + t + "'", at);
        }
        std::size_t idx = std::stoul(t.substr(1));
        if (idx == 0) throw ParseError("nonterminals are numbered from A1", at);
        return idx - 1;
      };
      std::size_t lhs = nonterminal(tok[0]);
      if (lhs != rules.size()) {
        throw ParseError("expected rule A" + std::to_string(rules.size() + 1),
                         line_start);
      }
      if (tok.size() < 3 || tok[1] != "=") {
        throw ParseError("expected 'Ai = ...'", line_start);
      }
      Rule r;
      if (tok.size() == 4) {
        r.kind = Rule::Kind::Pair;
        r.left = nonterminal(tok[2]);
        r.right = nonterminal(tok[3]);
        if (r.left >= lhs || r.right >= lhs) {
          throw ParseError("rule references a nonterminal that is not smaller",
                           line_start);
        }
      } else if (tok.size() == 3 && tok[2] == "1") {
        r.kind = Rule::Kind::Empty;
      } else if (tok.size() == 3) {
        std::size_t at = line_start + line.find(tok[2], line.find('='));
        Word w = parse_word(tok[2], alphabet);
        if (w.letters.size() != 1 || abs(w.letters[0].exponent) != 1) {
          throw ParseError("terminal rule must be gen^1 or gen^-1", at);
        }
        r.kind = Rule::Kind::Terminal;
        r.gen = w.letters[0].gen;
        r.sign = w.letters[0].exponent > 0 ? 1 : -1;
      } else {
        throw ParseError("malformed rule", line_start);
      }
      rules.push_back(r);
    }
    line_start = line_end + 1;
  }
  if (rules.empty()) throw ParseError("empty straight-line program", 0);
  return StraightLineProgram(std::move(rules));
}

StraightLineProgram StraightLineProgram::from_word(Word const& w) {
  std::vector<Rule> rules;
  auto pair = [&](std::size_t l, std::size_t r) {
    Rule x;
    x.kind = Rule::Kind::Pair;
    x.left = l;
    x.right = r;
    rules.push_back(x);
    return rules.size() - 1;
  };
  std::vector<std::size_t> parts;
  for (auto const& l : normalize(w).letters) {
    Rule t;
    t.kind = Rule::Kind::Terminal;
    t.gen = l.gen;
    t.sign = l.exponent > 0 ? 1 : -1;
    rules.push_back(t);
    std::size_t doubled = rules.size() - 1;
    Integer e = abs(l.exponent);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    bool have = false;
    std::size_t acc = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (b > 0) doubled = pair(doubled, doubled);
      if (mpz_tstbit(e.get_mpz_t(), b)) {
        acc = have ? pair(acc, doubled) : doubled;
        have = true;
      }
    }
    parts.push_back(acc);
  }
  if (parts.empty()) {
    rules.push_back(Rule{});
    return StraightLineProgram(std::move(rules));
  }
  while (parts.size() > 1) {
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(pair(parts[i], parts[i + 1]));
    }
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  // The root must be the last rule; a single-letter word already ends there.
  if (parts.front() != rules.size() - 1) {
    throw Error("internal error: root is not the last rule");
  }
  return StraightLineProgram(std::move(rules));
}

StraightLineProgram StraightLineProgram::doubling(std::size_t gen,
                                                  std::size_t levels) {
  if (levels == 0) throw Error("doubling program needs at least one rule");
  std::vector<Rule> rules(1);
  rules[0].kind = Rule::Kind::Terminal;
  rules[0].gen = gen;
  for (std::size_t i = 1; i < levels; ++i) {
    Rule r;
    r.kind = Rule::Kind::Pair;
    r.left = r.right = i - 1;
    rules.push_back(r);
  }
  return StraightLineProgram(std::move(rules));
}

std::vector<Integer> StraightLineProgram::lengths() const {
  std::vector<Integer> len(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    switch (rules_[i].kind) {
      case Rule::Kind::Pair: len[i] = len[rules_[i].left] + len[rules_[i].right]; break;
      case Rule::Kind::Terminal: len[i] = 1; break;
      case Rule::Kind::Empty: len[i] = 0; break;
    }
  }
  return len;
}

Word StraightLineProgram::expand(Integer const& limit) const {
  if (lengths().back() > limit) {
    throw ExpansionLimitError("straight-line program expands beyond " +
                              limit.get_str() + " letters");
  }
  Word out;
  std::vector<std::size_t> stack{rules_.size() - 1};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    auto const& r = rules_[i];
    if (r.kind == Rule::Kind::Pair) {
      stack.push_back(r.right);
      stack.push_back(r.left);
    } else if (r.kind == Rule::Kind::Terminal) {
      out.append(r.gen, r.sign);
    }
  }
  return out;
}

std::string StraightLineProgram::to_string(Alphabet const& alphabet) const {
  std::string out;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto const& r = rules_[i];
    out += "A" + std::to_string(i + 1) + " = ";
    switch (r.kind) {
      case Rule::Kind::Pair:
        out += "A" + std::to_string(r.left + 1) + " A" + std::to_string(r.right + 1);
        break;
      case Rule::Kind::Terminal:
        out += alphabet.name(r.gen) + (r.sign < 0 ? "^-1" : "");
        break;
      case Rule::Kind::Empty: out += "1"; break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace nilkit
