#ifndef THG_CIRCUITS_HPP
#define THG_CIRCUITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thg/generators.hpp"

namespace thg {

// Symbols 0, 1 and the padding letter (printed '_').
inline constexpr char kBot = 2;
using TernaryWord = std::string;

TernaryWord parse_ternary(const std::string& text);
std::string print_ternary(const TernaryWord& w);

// Strict padding of an element: p bot^(m-|p|) -> phi(p) bot^(n-|phi(p)|)
// on the padded domain code, everything else to bot^n.
class PaddedFunction {
public:
  PaddedFunction(Element base, int m, int n);

  const Element& base() const { return base_; }
  int input_width() const { return m_; }
  int output_width() const { return n_; }

  TernaryWord eval(const TernaryWord& x) const;
  std::vector<TernaryWord> padded_dom_code() const;
  std::vector<TernaryWord> padded_im_code() const;

private:
  Element base_;
  int m_, n_;
};

PaddedFunction pad(const Element& e, int m, int n);

// Ternary logic primitives. Dup and Del are wiring, the rest are gates.
enum class LogicOp {
  Dup,      // a -> a a
  Del,      // a ->
  K0, K1, KBot,  // -> constant
  Not,      // boolean not, bot sticky
  IsBot,    // bot -> 1, 0/1 -> 0
  IsBin,    // 0/1 -> 1, bot -> 0
  And, Or, Xor,  // boolean, bot sticky
  Eq,       // symbol equality (bot == bot), binary result
  Mux,      // s a b -> s ? a : b, bot selector gives bot
  CmpStep,  // s1 s0 a b -> updated dict-compare state
};

int logic_arity_in(LogicOp op);
int logic_arity_out(LogicOp op);

// One circuit stage. Stages apply in list order (stage 0 first).
//  - Tau: swap positions i, i+1 (1-based).
//  - Gate: padded lowered generator acting on the window
//    [d+1, d+width]; inside the window the binary prefix is matched
//    against the generator table and the suffix is carried along.
//  - Logic: consumes the listed positions, inserts its outputs at the
//    smallest consumed position.
struct Stage {
  enum class Kind { Tau, Gate, Logic } kind = Kind::Tau;
  int tau_i = 1;
  Generator gen;
  int gate_low = 0;
  int gate_width = 0;
  LogicOp op = LogicOp::Not;
  std::vector<int> at;

  static Stage tau(int i);
  static Stage gate(Generator g, int low, int width);
  static Stage logic(LogicOp op, std::vector<int> at);
};

class Circuit {
public:
  Circuit(int input_width, std::vector<Stage> stages = {});

  int input_width() const { return w_in_; }
  int output_width() const;
  const std::vector<Stage>& stages() const { return stages_; }
  std::vector<int> width_profile() const;  // widths before each stage and after the last

  void push(Stage s);
  bool bijective_fragment() const;  // only tau and gate stages

private:
  int w_in_;
  std::vector<Stage> stages_;
};

TernaryWord eval_circuit(const Circuit& c, const TernaryWord& input);

// Gate count plus wire links: every counted stage consumes in-arity links
// and the circuit outputs consume one each. Dup/Del are wiring and free.
long long circuit_size(const Circuit& c);

// Append the stages of inner, shifted down by `offset` wire positions.
void splice(Circuit& outer, const Circuit& inner, int offset);

Circuit word_to_circuit(const GenWord& w);
GenWord circuit_to_word(const Circuit& c);

// Recover the element computed by a bijective-style circuit by walking
// the binary prefix tree; needs O(table size * width) evaluations.
Element element_of_circuit(const Circuit& c);
ElementTable chain_table_of_circuit(const Circuit& c);

// A word over the generator catalog evaluating to e.
GenWord element_to_word(const Element& e);

// Circuit with n+m inputs and n outputs computing the restriction of the
// input circuit's element whose image code is {0,1}^n.
Circuit restrict_image_circuit(const Circuit& c, int m, int n);

// Binary-search inversion of an order-preserving element's circuit.
Circuit invert_F_circuit(const Circuit& c, int m, int n);

enum class Parity { Even, Odd };

// Permutations of {0,1}^w are index vectors: entry x is the image of the
// word with base-2 value x (MSB first, so index order is dict order).
Parity permutation_parity(const std::vector<std::size_t>& p);
std::vector<std::size_t> lift_identity_wire(const std::vector<std::size_t>& p);

Circuit synthesize_even_permutation(const std::vector<std::size_t>& p, int w);

std::vector<std::size_t> permutation_of_circuit(const Circuit& c);  // binary inputs only

// Text format: header "width_in=<m> width_out=<n>", one stage per line.
Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);

}  // namespace thg

#endif  // THG_CIRCUITS_HPP
