#ifndef THG_GADGETS_HPP
#define THG_GADGETS_HPP

#include <string>
#include <vector>

#include "thg/circuits.hpp"
#include "thg/element.hpp"

namespace thg {

struct Cnf {
  int vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals, no trailing 0

  bool satisfied_by(const Word& assignment) const;  // bit i-1 is variable i
};

// DIMACS-like text: "p cnf <vars> <clauses>" then 0-terminated clauses.
Cnf parse_dimacs(const std::string& text);

// A set of satisfying assignments over {0,1}^n, materialized.
class TruthSet {
public:
  TruthSet(int n, std::vector<Word> members);
  static TruthSet from_cnf(const Cnf& formula);

  int n() const { return n_; }
  const std::vector<Word>& members() const { return members_; }
  bool contains(const Word& w) const;
  std::vector<Word> complement() const;

private:
  int n_;
  std::vector<Word> members_;  // sorted
};

// The counting code 00 T' u 00T0 u 00T1 u 01 A^n u 1T u 1T'0 u 1T'1 of
// cardinality 2^(n+2), where T' is the complement of T.
PrefixCode build_P_T(const TruthSet& ts);

// |T| recovered from one rank query in P_T.
long long count_sat_via_rank(const TruthSet& ts);

long long brute_force_count_sat(const Cnf& formula);

// The bijection P_T -> {0,1}^(n+2) whose order-preserving factor is the
// rank function of P_T.
Element build_Phi(const TruthSet& ts);

// The bijection {00,01,1}A^n -> {0,10,11}A^n whose image restriction to
// level n+2 is exactly build_Phi.
Element build_phi_P0_Q0(const TruthSet& ts);

// The order-preserving factor of Phi equals the rank element of P_T.
bool lpF_factor_rank_check(const TruthSet& ts);

// Desk-scale deciders for circuit questions, via canonical forms.
bool circuits_equal_bruteforce(const Circuit& c1, const Circuit& c2);
bool is_identity_circuit(const Circuit& c);
bool is_maximally_extended(const Circuit& c1, const Circuit& c2);

}  // namespace thg

#endif  // THG_GADGETS_HPP
