#ifndef THG_WORDS_HPP
#define THG_WORDS_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thg {

// Letters are raw byte values 0..k-1, so std::string comparison is exactly
// the dictionary order (a prefix compares less).
using Word = std::string;

class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct Alphabet {
  int k = 2;

  explicit Alphabet(int arity = 2) : k(arity) {
    if (k < 2) throw domain_error("Alphabet: arity must be >= 2");
  }
};

enum class Ordering { Less, Equal, Greater };

Ordering dict_compare(const Word& u, const Word& v);

inline bool dict_less(const Word& u, const Word& v) { return u < v; }

bool is_prefix(const Word& u, const Word& v);        // u prefix of v (u == v allowed)
bool is_strict_prefix(const Word& u, const Word& v);

bool valid_word(const Word& w, int k);

// Text form: letters as digits, empty word written "-"; for k == 2 the
// aliases a/b are accepted on input.
Word parse_word(const std::string& text, int k);
std::string print_word(const Word& w);
std::string print_word_ab(const Word& w);  // k=2 over {a,b}

// A finite prefix code, stored dict-sorted.
class PrefixCode {
public:
  PrefixCode(std::vector<Word> words, int k);

  const std::vector<Word>& words() const { return words_; }
  int k() const { return k_; }
  std::size_t size() const { return words_.size(); }
  const Word& at(std::size_t i) const { return words_.at(i); }
  std::size_t max_len() const;
  std::size_t min_len() const;
  bool contains(const Word& w) const;

  bool operator==(const PrefixCode& o) const { return k_ == o.k_ && words_ == o.words_; }

private:
  std::vector<Word> words_;
  int k_;
};

// Kraft equality sum k^{-|p|} == 1, evaluated exactly.
bool is_maximal_prefix_code(const PrefixCode& p);

int rank_in_code(const PrefixCode& p, const Word& x);   // throws NotInCode
Word unrank(const PrefixCode& p, std::size_t i);        // throws OutOfRange

PrefixCode expand_level(const PrefixCode& p, int n);    // P . A^n
PrefixCode level_code(int k, int n);                    // A^n

// Coarsest common refinement of two maximal prefix codes: P u Q minus
// words that are strict prefixes of other words in the union.
PrefixCode join_codes(const PrefixCode& a, const PrefixCode& b);

// Index of the unique element of P that is a prefix of w, or -1.
int find_prefix_in_code(const PrefixCode& p, const Word& w);

// Text format: one word per line.
PrefixCode parse_code(const std::string& text, int k);
std::string print_code(const PrefixCode& p);

std::vector<Word> all_words_of_length(int k, int n);

}  // namespace thg

#endif  // THG_WORDS_HPP
