#include "thg/generators.hpp"

#include <algorithm>
#include <cctype>

#include "thg/subgroups.hpp"

namespace thg {

Generator Generator::tau(int i, int j, bool inv) {
  if (i < 1 || j <= i) throw domain_error("tau requires 1 <= i < j");
  Generator g;
  g.tag = GenTag::Tau;
  g.i = i;
  g.j = j;
  g.inverted = inv;
  return g;
}

Generator Generator::make(GenTag t, bool inv) {
  if (t == GenTag::Tau) throw domain_error("use Generator::tau");
  Generator g;
  g.tag = t;
  g.inverted = inv;
  return g;
}

Generator Generator::inverse() const {
  Generator g = *this;
  g.inverted = !g.inverted;
  return g;
}

GenSymbol GenSymbol::inverse() const {
  GenSymbol s = *this;
  s.gen = s.gen.inverse();
  return s;
}

namespace {

Element from_rows(std::vector<ElementTable::Row> rows, int k = 2) {
  return reduce(ElementTable(std::move(rows), k));
}

Word w(std::initializer_list<int> letters) {
  Word out;
  for (int a : letters) out.push_back(static_cast<char>(a));
  return out;
}

Element tau_element(int i, int j, int k) {
  // Position swap u x_i v x_j z -> u x_j v x_i z on words of length >= j.
  std::vector<ElementTable::Row> rows;
  for (const auto& word : all_words_of_length(k, j)) {
    Word img = word;
    std::swap(img[static_cast<std::size_t>(i - 1)], img[static_cast<std::size_t>(j - 1)]);
    rows.emplace_back(word, img);
  }
  return from_rows(std::move(rows), k);
}

}  // namespace

Element generator_element(const Generator& g, int k) {
  if (g.tag == GenTag::Tau) {
    Element e = tau_element(g.i, g.j, k);
    return g.inverted ? invert(e) : e;  // involution, but keep it uniform
  }
  if (k != 2) throw domain_error("WrongArity: generator defined for k=2 only");
  Element e = Element::identity(2);
  switch (g.tag) {
    case GenTag::Kappa:
      e = from_rows({{w({0}), w({1})}, {w({1}), w({0})}});
      break;
    case GenTag::Lambda:
      e = from_rows({{w({0, 0}), w({0, 0})}, {w({0, 1}), w({1})}, {w({1}), w({0, 1})}});
      break;
    case GenTag::Mu:
      e = from_rows({{w({0}), w({1, 0})}, {w({1, 0}), w({0})}, {w({1, 1}), w({1, 1})}});
      break;
    case GenTag::Nu:
      e = from_rows({{w({0, 0}), w({0, 0})},
                     {w({0, 1}), w({1, 0})},
                     {w({1, 0}), w({0, 1})},
                     {w({1, 1}), w({1, 1})}});
      break;
    case GenTag::Sigma:
      e = from_rows({{w({0, 0}), w({0})}, {w({0, 1}), w({1, 0})}, {w({1}), w({1, 1})}});
      break;
    case GenTag::Sigma1:
      e = from_rows({{w({0}), w({0})},
                     {w({1, 0, 0}), w({1, 0})},
                     {w({1, 0, 1}), w({1, 1, 0})},
                     {w({1, 1}), w({1, 1, 1})}});
      break;
    case GenTag::N:
      e = from_rows({{w({0}), w({1})}, {w({1}), w({0})}});
      break;
    case GenTag::C:
      e = from_rows({{w({0}), w({0})}, {w({1, 0}), w({1, 1})}, {w({1, 1}), w({1, 0})}});
      break;
    case GenTag::T:
      e = from_rows({{w({0}), w({0})},
                     {w({1, 0}), w({1, 0})},
                     {w({1, 1, 0}), w({1, 1, 1})},
                     {w({1, 1, 1}), w({1, 1, 0})}});
      break;
    case GenTag::Tau:
      break;  // handled above
  }
  return g.inverted ? invert(e) : e;
}

Element lower(const Element& e, int d) {
  if (d < 0) throw domain_error("lower: negative depth");
  if (d == 0) return e;
  std::vector<ElementTable::Row> rows;
  rows.reserve(e.table_size() * (1u << d));
  for (const auto& z : all_words_of_length(e.k(), d))
    for (const auto& [x, y] : e.table().rows()) rows.emplace_back(z + x, z + y);
  return from_rows(std::move(rows), e.k());
}

Element controlled_lower(const Element& e, const Word& c) {
  if (c.empty()) return e;
  const int k = e.k();
  std::vector<ElementTable::Row> rows;
  for (const auto& [x, y] : e.table().rows()) rows.emplace_back(c + x, c + y);
  // Identity on every branch p.alpha that leaves the control string.
  for (std::size_t len = 0; len < c.size(); ++len) {
    Word p = c.substr(0, len);
    for (int a = 0; a < k; ++a) {
      if (static_cast<char>(a) == c[len]) continue;
      Word pa = p + static_cast<char>(a);
      rows.emplace_back(pa, pa);
    }
  }
  return from_rows(std::move(rows), k);
}

Element eval_symbol(const GenSymbol& s, int k) {
  Element e = generator_element(s.gen, k);
  if (s.control) e = controlled_lower(e, *s.control);
  if (s.lower_by > 0) e = lower(e, s.lower_by);
  return e;
}

Element eval_word(const GenWord& word, int k) {
  Element acc = Element::identity(k);
  // Last symbol applies first, so fold right-to-left.
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = compose(eval_symbol(*it, k), acc);
  return acc;
}

long long word_length(const GenWord& word) {
  long long total = 0;
  for (const auto& s : word) total += s.gen.tag == GenTag::Tau ? s.gen.j : 1;
  return total;
}

GenWord inverse_word(const GenWord& word) {
  GenWord out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

namespace {

// x_0 = sigma, x_1 = sigma1, x_{n+1} = sigma o x_n o sigma^-1; each x_n is
// the lowering of sigma controlled by 1^n.
GenWord x_word(int n, bool inv) {
  GenWord out;
  for (int t = 0; t < n - 1; ++t) out.push_back(Generator::make(GenTag::Sigma, inv));
  out.push_back(Generator::make(n == 0 ? GenTag::Sigma : GenTag::Sigma1, inv));
  for (int t = 0; t < n - 1; ++t) out.push_back(Generator::make(GenTag::Sigma, !inv));
  if (inv) std::reverse(out.begin(), out.end());
  return out;
}

Element x_element(int n) {
  Word ones(static_cast<std::size_t>(n), 1);
  return controlled_lower(generator_element(Generator::make(GenTag::Sigma)), ones);
}

bool is_comb_word(const Word& v) {
  // 1^j or 1^j 0
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] != 1) return false;
  return true;
}

// Index j of the first word (dict order) not of comb shape; the code is a
// comb when absent. The word looks like 1^j 0 v with v nonempty.
std::optional<int> first_noncomb(const PrefixCode& code) {
  for (const auto& word : code.words()) {
    if (is_comb_word(word)) continue;
    int j = 0;
    while (word[static_cast<std::size_t>(j)] == 1) ++j;
    return j;
  }
  return std::nullopt;
}

}  // namespace

GenWord f_to_word(const Element& f) {
  if (f.k() != 2) throw domain_error("WrongArity: f_to_word is for k=2");
  if (!in_F(f)) throw domain_error("NotInF: f_to_word input");
  // Comb-ify the image code, then the domain code; each x_j move strictly
  // lowers the number of zeros across the image code.
  std::vector<int> left, right;
  Element g = f;
  while (auto j = first_noncomb(g.im_code())) {
    left.push_back(*j);
    g = compose(x_element(*j), g);
  }
  Element h = invert(g);
  while (auto j = first_noncomb(h.im_code())) {
    right.push_back(*j);
    h = compose(x_element(*j), h);
  }
  if (!h.is_identity()) throw domain_error("f_to_word: combification failed");
  GenWord out;
  for (int j : left) {
    GenWord xw = x_word(j, true);
    out.insert(out.end(), xw.begin(), xw.end());
  }
  for (auto it = right.rbegin(); it != right.rend(); ++it) {
    GenWord xw = x_word(*it, false);
    out.insert(out.end(), xw.begin(), xw.end());
  }
  return out;
}

GenWord higman_to_v_generators(const Generator& g) {
  switch (g.tag) {
    case GenTag::Kappa:
      return {Generator::make(GenTag::N, g.inverted)};
    case GenTag::Nu:
      return {Generator::tau(1, 2, g.inverted)};
    case GenTag::Lambda:
    case GenTag::Mu: {
      // Strip the length-preserving prefix made of tau/C/N moves, then
      // rewrite the order-preserving remainder over sigma, sigma1.
      Element target = generator_element(Generator{g.tag, 0, 0, false});
      GenWord head;
      if (g.tag == GenTag::Lambda) {
        head = {Generator::tau(1, 2), Generator::make(GenTag::C)};
      } else {
        head = {Generator::tau(1, 2), Generator::make(GenTag::C), Generator::tau(1, 2),
                Generator::make(GenTag::N), Generator::tau(1, 2)};
      }
      Element rest = compose(invert(eval_word(head)), target);
      GenWord out = head;
      GenWord tail = f_to_word(rest);
      out.insert(out.end(), tail.begin(), tail.end());
      if (g.inverted) out = inverse_word(out);
      return out;
    }
    default:
      throw domain_error("higman_to_v_generators: expects kappa/lambda/mu/nu");
  }
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
    } else if (c == '(' || c == ')') {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
      tokens.push_back(std::string(1, c));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

struct Parser {
  const std::vector<std::string>& toks;
  std::size_t pos = 0;
  int k;

  GenWord parse_until(bool inner) {
    GenWord out;
    while (pos < toks.size()) {
      const std::string& t = toks[pos];
      if (t == ")") {
        if (!inner) throw domain_error("parse_genword: unmatched ')'");
        ++pos;
        return out;
      }
      out.push_back(parse_symbol());
    }
    if (inner) throw domain_error("parse_genword: missing ')'");
    return out;
  }

  GenSymbol parse_symbol() {
    std::string t = toks[pos++];
    bool inv = false;
    if (t.size() > 3 && t.substr(t.size() - 3) == "^-1") {
      inv = true;
      t = t.substr(0, t.size() - 3);
    }
    if (t.rfind("low", 0) == 0 && t.size() > 3 && std::isdigit(static_cast<unsigned char>(t[3]))) {
      int d = std::stoi(t.substr(3));
      expect("(");
      GenWord innerw = parse_until(true);
      if (innerw.size() != 1) throw domain_error("parse_genword: low wrapper takes one symbol");
      GenSymbol s = innerw[0];
      s.lower_by += d;
      if (inv) s = s.inverse();
      return s;
    }
    if (t.rfind("ctl", 0) == 0 && t.size() > 3) {
      Word c = parse_word(t.substr(3), k);
      expect("(");
      GenWord innerw = parse_until(true);
      if (innerw.size() != 1) throw domain_error("parse_genword: ctl wrapper takes one symbol");
      GenSymbol s = innerw[0];
      if (s.control || s.lower_by)
        throw domain_error("parse_genword: nested wrappers on a ctl symbol");
      s.control = c;
      if (inv) s = s.inverse();
      return s;
    }
    GenSymbol s{parse_plain(t)};
    if (inv) s = s.inverse();
    return s;
  }

  Generator parse_plain(const std::string& t) {
    if (t == "k") return Generator::make(GenTag::Kappa);
    if (t == "l") return Generator::make(GenTag::Lambda);
    if (t == "m") return Generator::make(GenTag::Mu);
    if (t == "n") return Generator::make(GenTag::Nu);
    if (t == "s") return Generator::make(GenTag::Sigma);
    if (t == "s1") return Generator::make(GenTag::Sigma1);
    if (t == "N") return Generator::make(GenTag::N);
    if (t == "C") return Generator::make(GenTag::C);
    if (t == "T") return Generator::make(GenTag::T);
    if (t.size() > 1 && t[0] == 't') {
      std::size_t comma = t.find(',');
      if (comma == std::string::npos) throw domain_error("parse_genword: bad tau token " + t);
      return Generator::tau(std::stoi(t.substr(1, comma - 1)), std::stoi(t.substr(comma + 1)));
    }
    throw domain_error("parse_genword: unknown token " + t);
  }

  void expect(const std::string& t) {
    if (pos >= toks.size() || toks[pos] != t)
      throw domain_error("parse_genword: expected " + t);
    ++pos;
  }
};

std::string print_plain(const Generator& g) {
  switch (g.tag) {
    case GenTag::Kappa: return "k";
    case GenTag::Lambda: return "l";
    case GenTag::Mu: return "m";
    case GenTag::Nu: return "n";
    case GenTag::Sigma: return "s";
    case GenTag::Sigma1: return "s1";
    case GenTag::N: return "N";
    case GenTag::C: return "C";
    case GenTag::T: return "T";
    case GenTag::Tau: return "t" + std::to_string(g.i) + "," + std::to_string(g.j);
  }
  return "?";
}

}  // namespace

GenWord parse_genword(const std::string& text, int k) {
  auto toks = tokenize(text);
  Parser p{toks, 0, k};
  return p.parse_until(false);
}

std::string print_genword(const GenWord& word) {
  std::string out;
  for (const auto& s : word) {
    if (!out.empty()) out += ' ';
    std::string core = print_plain(s.gen);
    if (s.gen.inverted) core += "^-1";
    if (s.control) core = "ctl" + print_word(*s.control) + "(" + core + ")";
    if (s.lower_by > 0) core = "low" + std::to_string(s.lower_by) + "(" + core + ")";
    out += core;
  }
  return out;
}

}  // namespace thg
