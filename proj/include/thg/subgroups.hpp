#ifndef THG_SUBGROUPS_HPP
#define THG_SUBGROUPS_HPP

#include <optional>

#include "thg/element.hpp"

namespace thg {

bool in_F(const Element& e);   // preserves dictionary order
bool in_lp(const Element& e);  // preserves word length
bool in_T(const Element& e);   // cyclically preserves dictionary order

// Least m with domC = imC = P . A^m after restriction, if any.
std::optional<int> in_S_PAm(const Element& e, const PrefixCode& p);

struct OrderResult {
  enum class Kind { Finite, Infinite, Undecided };
  Kind kind = Kind::Undecided;

  // Finite: the order, and a code P with e(P) = P.
  long long order = 0;
  std::optional<PrefixCode> witness_code;

  // Infinite: e^steps(start) = start . growth with growth nonempty;
  // steps < 0 means the inverse element was iterated |steps| times.
  Word witness_start;
  long long witness_steps = 0;
  Word witness_growth;
};

OrderResult order(const Element& e, int max_depth);

enum class FactorMode { LpF, FLp, SP };

struct Factorization {
  FactorMode mode = FactorMode::LpF;
  Element pi;  // length-preserving / symmetric part
  Element f;   // order-preserving part
  std::optional<PrefixCode> base;  // SP mode: the code P
};

// Unique e = pi . f with pi length preserving and f order preserving.
Factorization factor_lpF(const Element& e);
// Unique e = f . pi.
Factorization factor_Flp(const Element& e);
// Unique e = pi . f with pi a permutation of P . A^n for some n.
Factorization factor_SF(const Element& e, const PrefixCode& p);

// Element-specific factorization with pi permuting imC(e) and f the
// order-preserving bijection domC(e) -> imC(e).
Factorization element_specific_factorization(const Element& e);

// Factorization of compose(psi, phi) from the two factorizations:
// pi = pi_psi . f_psi . pi_phi . f_psi^-1 and f = f_psi . f_phi.
Factorization product_factorization(const Factorization& psi_fact, const Factorization& phi_fact);

// The table-size blowup family: ||phi_n|| = n but both factors have
// table size 2^(n-1).
Element phi_family(int n);

// Dict-shift w_i -> w_{(i+1) mod k^n} on A^n.
Element dict_shift(int k, int n);

bool same_S_subgroup(const PrefixCode& p1, const PrefixCode& p2);

// Order-preserving bijection P1 . A^N -> P2 . A^M as an element of F.
Element conjugator(const PrefixCode& p1, int n, const PrefixCode& p2, int m);

}  // namespace thg

#endif  // THG_SUBGROUPS_HPP
