#include "thg/gadgets.hpp"

#include <algorithm>
#include <sstream>

#include "thg/subgroups.hpp"

namespace thg {

bool Cnf::satisfied_by(const Word& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      int var = lit > 0 ? lit : -lit;
      bool value = assignment[static_cast<std::size_t>(var - 1)] == 1;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf cnf;
  bool seen_header = false;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      int clause_count;
      ls >> p >> fmt >> cnf.vars >> clause_count;
      if (fmt != "cnf" || cnf.vars < 1) throw domain_error("parse_dimacs: bad header");
      seen_header = true;
      continue;
    }
    if (!seen_header) throw domain_error("parse_dimacs: clause before header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        if (lit > cnf.vars || -lit > cnf.vars)
          throw domain_error("parse_dimacs: literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) cnf.clauses.push_back(current);
  return cnf;
}

TruthSet::TruthSet(int n, std::vector<Word> members) : n_(n), members_(std::move(members)) {
  if (n_ < 1) throw domain_error("TruthSet: need n >= 1");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const auto& w : members_)
    if (static_cast<int>(w.size()) != n_ || !valid_word(w, 2))
      throw domain_error("TruthSet: member of wrong shape");
}

TruthSet TruthSet::from_cnf(const Cnf& formula) {
  std::vector<Word> members;
  for (const auto& w : all_words_of_length(2, formula.vars))
    if (formula.satisfied_by(w)) members.push_back(w);
  return TruthSet(formula.vars, std::move(members));
}

bool TruthSet::contains(const Word& w) const {
  return std::binary_search(members_.begin(), members_.end(), w);
}

std::vector<Word> TruthSet::complement() const {
  std::vector<Word> out;
  for (const auto& w : all_words_of_length(2, n_))
    if (!contains(w)) out.push_back(w);
  return out;
}

namespace {

Word wcat(std::initializer_list<int> prefix, const Word& x, std::initializer_list<int> suffix = {}) {
  Word out;
  for (int a : prefix) out.push_back(static_cast<char>(a));
  out += x;
  for (int a : suffix) out.push_back(static_cast<char>(a));
  return out;
}

}  // namespace

PrefixCode build_P_T(const TruthSet& ts) {
  std::vector<Word> words;
  auto tbar = ts.complement();
  for (const auto& x : tbar) words.push_back(wcat({0, 0}, x));
  for (const auto& x : ts.members()) {
    words.push_back(wcat({0, 0}, x, {0}));
    words.push_back(wcat({0, 0}, x, {1}));
  }
  for (const auto& x : all_words_of_length(2, ts.n())) words.push_back(wcat({0, 1}, x));
  for (const auto& x : ts.members()) words.push_back(wcat({1}, x));
  for (const auto& x : tbar) {
    words.push_back(wcat({1}, x, {0}));
    words.push_back(wcat({1}, x, {1}));
  }
  return PrefixCode(std::move(words), 2);
}

long long count_sat_via_rank(const TruthSet& ts) {
  PrefixCode pt = build_P_T(ts);
  Word ones(static_cast<std::size_t>(ts.n()), 1);
  long long pow2n = 1;
  for (int i = 0; i < ts.n(); ++i) pow2n *= 2;
  // rank(00 1^n [1]) + 1 = |T| + 2^n, probing 001^n1 when 1^n satisfies.
  Word probe = ts.contains(ones) ? wcat({0, 0}, ones, {1}) : wcat({0, 0}, ones);
  return rank_in_code(pt, probe) + 1 - pow2n;
}

long long brute_force_count_sat(const Cnf& formula) {
  long long count = 0;
  for (const auto& w : all_words_of_length(2, formula.vars))
    if (formula.satisfied_by(w)) ++count;
  return count;
}

Element build_Phi(const TruthSet& ts) {
  std::vector<ElementTable::Row> rows;
  auto tbar = ts.complement();
  for (const auto& x : tbar) rows.emplace_back(wcat({0, 0}, x), wcat({1, 1}, x));
  for (const auto& x : ts.members()) {
    rows.emplace_back(wcat({0, 0}, x, {0}), wcat({0}, x, {0}));
    rows.emplace_back(wcat({0, 0}, x, {1}), wcat({0}, x, {1}));
  }
  for (const auto& x : all_words_of_length(2, ts.n()))
    rows.emplace_back(wcat({0, 1}, x), wcat({1, 0}, x));
  for (const auto& x : tbar) {
    rows.emplace_back(wcat({1}, x, {0}), wcat({0}, x, {0}));
    rows.emplace_back(wcat({1}, x, {1}), wcat({0}, x, {1}));
  }
  for (const auto& x : ts.members()) rows.emplace_back(wcat({1}, x), wcat({1, 1}, x));
  // Keep the table as given; it is a bijection P_T -> {0,1}^(n+2).
  return reduce(ElementTable(std::move(rows), 2));
}

Element build_phi_P0_Q0(const TruthSet& ts) {
  std::vector<ElementTable::Row> rows;
  auto tbar = ts.complement();
  for (const auto& x : tbar) rows.emplace_back(wcat({0, 0}, x), wcat({1, 1}, x));
  for (const auto& x : ts.members()) rows.emplace_back(wcat({0, 0}, x), wcat({0}, x));
  for (const auto& x : all_words_of_length(2, ts.n()))
    rows.emplace_back(wcat({0, 1}, x), wcat({1, 0}, x));
  for (const auto& x : tbar) rows.emplace_back(wcat({1}, x), wcat({0}, x));
  for (const auto& x : ts.members()) rows.emplace_back(wcat({1}, x), wcat({1, 1}, x));
  return reduce(ElementTable(std::move(rows), 2));
}

bool lpF_factor_rank_check(const TruthSet& ts) {
  Element phi = build_Phi(ts);
  Factorization fact = factor_lpF(phi);
  PrefixCode pt = build_P_T(ts);
  PrefixCode level = level_code(2, ts.n() + 2);
  std::vector<ElementTable::Row> rows;
  for (std::size_t i = 0; i < pt.size(); ++i) rows.emplace_back(pt.at(i), level.at(i));
  Element rank_element = reduce(ElementTable(std::move(rows), 2));
  return fact.f == rank_element;
}

bool circuits_equal_bruteforce(const Circuit& c1, const Circuit& c2) {
  return element_of_circuit(c1) == element_of_circuit(c2);
}

bool is_identity_circuit(const Circuit& c) { return element_of_circuit(c).is_identity(); }

bool is_maximally_extended(const Circuit& c1, const Circuit& c2) {
  return element_of_circuit(c1) == element_of_circuit(c2);
}

}  // namespace thg
