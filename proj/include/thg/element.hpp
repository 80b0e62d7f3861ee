#ifndef THG_ELEMENT_HPP
#define THG_ELEMENT_HPP

#include <utility>
#include <vector>

#include "thg/words.hpp"

namespace thg {

// A finite bijection between two maximal prefix codes, as a row list
// (x -> y) sorted by domain word. Not necessarily maximally extended.
class ElementTable {
public:
  using Row = std::pair<Word, Word>;

  ElementTable(std::vector<Row> rows, int k);

  int k() const { return k_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  PrefixCode dom_code() const;
  PrefixCode im_code() const;

  bool operator==(const ElementTable& o) const { return k_ == o.k_ && rows_ == o.rows_; }

private:
  std::vector<Row> rows_;
  int k_;
};

// A group element: the unique maximally extended table.
class Element {
public:
  static Element identity(int k);

  int k() const { return table_.k(); }
  const ElementTable& table() const { return table_; }
  std::size_t table_size() const { return table_.size(); }
  PrefixCode dom_code() const { return table_.dom_code(); }
  PrefixCode im_code() const { return table_.im_code(); }
  bool is_identity() const;

  bool operator==(const Element& o) const { return table_ == o.table_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

private:
  friend Element reduce(const ElementTable& t);
  explicit Element(ElementTable t) : table_(std::move(t)) {}
  ElementTable table_;
};

// Maximal extension: merge sibling row groups (xa -> ya for every letter a)
// until no merge applies. Confluent, so the result is canonical.
Element reduce(const ElementTable& t);

// Replace the row (x, y) by the k rows (xa, ya).
ElementTable restrict_step(const ElementTable& t, const Word& x);

// Restriction whose image code is exactly A^n.
ElementTable restrict_image_to_level(const Element& e, int n);

// Restriction whose image code is exactly the given refinement of imC(e).
ElementTable restrict_image_to_code(const ElementTable& t, const PrefixCode& target);
ElementTable restrict_domain_to_code(const ElementTable& t, const PrefixCode& target);

// Restrict a chain intent (a_n, ..., a_1), a_1 applied first, so that
// domC(alpha_{i+1}) == imC(alpha_i) throughout. Word lengths stay <= n * l
// where l bounds the input tables' word lengths.
std::vector<ElementTable> common_refinement(const std::vector<ElementTable>& chain);

// x |-> f(g(x)).
Element compose(const Element& f, const Element& g);

Element invert(const Element& e);
ElementTable invert_table(const ElementTable& t);

// Partial action: w = x z with x in domC gives y z. Throws NotInDomain.
Word apply(const Element& e, const Word& w);
bool apply_defined(const Element& e, const Word& w);

// Text format: header "k=<arity>", then rows "x -> y" with "-" for the
// empty word.
ElementTable parse_table(const std::string& text);
std::string print_table(const ElementTable& t);
inline std::string print_element(const Element& e) { return print_table(e.table()); }

}  // namespace thg

#endif  // THG_ELEMENT_HPP
