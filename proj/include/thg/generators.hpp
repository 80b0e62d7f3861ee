#ifndef THG_GENERATORS_HPP
#define THG_GENERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "thg/element.hpp"

namespace thg {

enum class GenTag { Kappa, Lambda, Mu, Nu, Sigma, Sigma1, N, C, T, Tau };

struct Generator {
  GenTag tag = GenTag::N;
  int i = 0, j = 0;  // tau only, 1 <= i < j
  bool inverted = false;

  static Generator tau(int i, int j, bool inv = false);
  static Generator make(GenTag t, bool inv = false);

  Generator inverse() const;
  bool operator==(const Generator&) const = default;
};

// One word symbol: a generator, optionally lowered by d wires or lowered
// under a control string.
struct GenSymbol {
  Generator gen;
  int lower_by = 0;
  std::optional<Word> control;

  GenSymbol() = default;
  GenSymbol(Generator g) : gen(g) {}  // NOLINT: implicit by design
  GenSymbol inverse() const;
  bool operator==(const GenSymbol&) const = default;
};

// A word [s1, ..., sn] denotes s1 o ... o sn acting on the left, so the
// last symbol is applied first.
using GenWord = std::vector<GenSymbol>;

Element generator_element(const Generator& g, int k = 2);

// (e)_d : z x -> z e(x) for z of length d.
Element lower(const Element& e, int d);

// (e)_c : c x -> c e(x), identity on the branches leaving c.
Element controlled_lower(const Element& e, const Word& c);

Element eval_symbol(const GenSymbol& s, int k = 2);
Element eval_word(const GenWord& w, int k = 2);

// Weighted length: tau_{i,j} counts j, every other generator counts 1.
long long word_length(const GenWord& w);

GenWord inverse_word(const GenWord& w);

// Rewrites kappa/lambda/mu/nu over {N, C, tau_{1,2}, sigma, sigma1}.
GenWord higman_to_v_generators(const Generator& g);

// Any order-preserving element as a word over sigma, sigma1.
GenWord f_to_word(const Element& f);

// Token syntax: k l m n s s1 N C T t<i>,<j>, suffix ^-1, wrappers
// low<d>(...) and ctl<word>(...).
GenWord parse_genword(const std::string& text, int k = 2);
std::string print_genword(const GenWord& w);

}  // namespace thg

#endif  // THG_GENERATORS_HPP
