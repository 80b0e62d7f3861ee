#include "thg/element.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace thg {

ElementTable::ElementTable(std::vector<Row> rows, int k) : rows_(std::move(rows)), k_(k) {
  std::sort(rows_.begin(), rows_.end());
  std::vector<Word> dom, im;
  dom.reserve(rows_.size());
  im.reserve(rows_.size());
  for (const auto& [x, y] : rows_) {
    dom.push_back(x);
    im.push_back(y);
  }
  PrefixCode domc(dom, k_), imc(im, k_);  // validates prefix-freeness and letters
  if (domc.size() != rows_.size() || imc.size() != rows_.size())
    throw domain_error("ElementTable: not a bijection");
  if (!is_maximal_prefix_code(domc)) throw domain_error("ElementTable: domain code not maximal");
  if (!is_maximal_prefix_code(imc)) throw domain_error("ElementTable: image code not maximal");
}

PrefixCode ElementTable::dom_code() const {
  std::vector<Word> dom;
  dom.reserve(rows_.size());
  for (const auto& r : rows_) dom.push_back(r.first);
  return PrefixCode(std::move(dom), k_);
}

PrefixCode ElementTable::im_code() const {
  std::vector<Word> im;
  im.reserve(rows_.size());
  for (const auto& r : rows_) im.push_back(r.second);
  return PrefixCode(std::move(im), k_);
}

Element Element::identity(int k) {
  return reduce(ElementTable({{Word{}, Word{}}}, k));
}

bool Element::is_identity() const {
  return table_.size() == 1 && table_.rows()[0].first.empty() && table_.rows()[0].second.empty();
}

Element reduce(const ElementTable& t) {
  const int k = t.k();
  std::map<Word, Word> m;
  for (const auto& [x, y] : t.rows()) m.emplace(x, y);

  // Worklist of parent words whose k children might merge.
  std::vector<Word> work;
  for (const auto& [x, y] : t.rows())
    if (!x.empty()) work.push_back(x.substr(0, x.size() - 1));
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());

  while (!work.empty()) {
    Word parent = work.back();
    work.pop_back();
    Word child0 = parent + static_cast<char>(0);
    auto it0 = m.find(child0);
    if (it0 == m.end()) continue;
    const Word& y0 = it0->second;
    if (y0.empty()) continue;
    Word yparent = y0.substr(0, y0.size() - 1);
    bool mergeable = y0.back() == 0;
    for (int a = 1; mergeable && a < k; ++a) {
      auto it = m.find(parent + static_cast<char>(a));
      mergeable = it != m.end() && it->second == yparent + static_cast<char>(a);
    }
    if (!mergeable) continue;
    for (int a = 0; a < k; ++a) m.erase(parent + static_cast<char>(a));
    m.emplace(parent, yparent);
    if (!parent.empty()) work.push_back(parent.substr(0, parent.size() - 1));
  }

  std::vector<ElementTable::Row> rows(m.begin(), m.end());
  return Element(ElementTable(std::move(rows), k));
}

ElementTable restrict_step(const ElementTable& t, const Word& x) {
  std::vector<ElementTable::Row> rows;
  rows.reserve(t.size() + static_cast<std::size_t>(t.k()) - 1);
  bool found = false;
  for (const auto& [u, v] : t.rows()) {
    if (u == x) {
      found = true;
      for (int a = 0; a < t.k(); ++a)
        rows.emplace_back(u + static_cast<char>(a), v + static_cast<char>(a));
    } else {
      rows.emplace_back(u, v);
    }
  }
  if (!found) throw domain_error("NotInCode: restrict_step at " + print_word(x));
  return ElementTable(std::move(rows), t.k());
}

ElementTable restrict_image_to_code(const ElementTable& t, const PrefixCode& target) {
  std::vector<ElementTable::Row> rows;
  rows.reserve(target.size());
  PrefixCode imc = t.im_code();
  for (const auto& [x, y] : t.rows()) {
    // Append every suffix s with y s in the target code.
    auto lo = std::lower_bound(target.words().begin(), target.words().end(), y);
    bool any = false;
    for (auto it = lo; it != target.words().end() && is_prefix(y, *it); ++it) {
      rows.emplace_back(x + it->substr(y.size()), *it);
      any = true;
    }
    if (!any) throw domain_error("restrict_image_to_code: target does not refine image code");
  }
  if (rows.size() != target.size())
    throw domain_error("restrict_image_to_code: target does not refine image code");
  return ElementTable(std::move(rows), t.k());
}

ElementTable restrict_domain_to_code(const ElementTable& t, const PrefixCode& target) {
  return invert_table(restrict_image_to_code(invert_table(t), target));
}

ElementTable restrict_image_to_level(const Element& e, int n) {
  const auto imc = e.im_code();
  if (n < 1 || static_cast<std::size_t>(n) < imc.max_len())
    throw domain_error("LevelTooSmall: image level " + std::to_string(n));
  return restrict_image_to_code(e.table(), level_code(e.k(), n));
}

std::vector<ElementTable> common_refinement(const std::vector<ElementTable>& chain) {
  if (chain.empty()) return {};
  // chain = (a_n, ..., a_1) with a_1 applied first; process left-to-right in
  // application order, propagating image refinements back down the prefix.
  std::vector<ElementTable> out(chain.rbegin(), chain.rend());  // application order
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    PrefixCode im = out[i].im_code();
    PrefixCode dom = out[i + 1].dom_code();
    PrefixCode r = join_codes(im, dom);
    out[i + 1] = restrict_domain_to_code(out[i + 1], r);
    // Refining the image of stage i refines its domain, which is stage
    // i-1's image, and so on back to the start.
    PrefixCode want = r;
    for (std::size_t j = i + 1; j-- > 0;) {
      out[j] = restrict_image_to_code(out[j], want);
      if (j > 0) want = out[j].dom_code();
    }
  }
  return {out.rbegin(), out.rend()};
}

Element compose(const Element& f, const Element& g) {
  if (f.k() != g.k()) throw domain_error("compose: alphabet mismatch");
  PrefixCode mid = join_codes(g.im_code(), f.dom_code());
  ElementTable gt = restrict_image_to_code(g.table(), mid);
  ElementTable ft = restrict_domain_to_code(f.table(), mid);
  std::map<Word, Word> fmap;
  for (const auto& [x, y] : ft.rows()) fmap.emplace(x, y);
  std::vector<ElementTable::Row> rows;
  rows.reserve(gt.size());
  for (const auto& [x, y] : gt.rows()) rows.emplace_back(x, fmap.at(y));
  return reduce(ElementTable(std::move(rows), f.k()));
}

ElementTable invert_table(const ElementTable& t) {
  std::vector<ElementTable::Row> rows;
  rows.reserve(t.size());
  for (const auto& [x, y] : t.rows()) rows.emplace_back(y, x);
  return ElementTable(std::move(rows), t.k());
}

Element invert(const Element& e) { return reduce(invert_table(e.table())); }

Word apply(const Element& e, const Word& w) {
  PrefixCode dom = e.dom_code();
  int i = find_prefix_in_code(dom, w);
  if (i < 0) throw domain_error("NotInDomain: apply at " + print_word(w));
  const auto& row = e.table().rows()[static_cast<std::size_t>(i)];
  return row.second + w.substr(row.first.size());
}

bool apply_defined(const Element& e, const Word& w) {
  return find_prefix_in_code(e.dom_code(), w) >= 0;
}

ElementTable parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int k = -1;
  std::vector<ElementTable::Row> rows;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.rfind("k=", 0) == 0) {
      k = std::stoi(line.substr(2));
      continue;
    }
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw domain_error("parse_table: missing '->' in " + line);
    if (k < 2) throw domain_error("parse_table: missing k= header");
    std::string lhs = line.substr(0, arrow);
    std::string rhs = line.substr(arrow + 2);
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(' ');
      std::size_t b = s.find_last_not_of(' ');
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    rows.emplace_back(parse_word(trim(lhs), k), parse_word(trim(rhs), k));
  }
  if (k < 2) throw domain_error("parse_table: missing k= header");
  return ElementTable(std::move(rows), k);
}

std::string print_table(const ElementTable& t) {
  std::string out = "k=" + std::to_string(t.k()) + "\n";
  for (const auto& [x, y] : t.rows()) {
    out += print_word(x);
    out += " -> ";
    out += print_word(y);
    out += '\n';
  }
  return out;
}

}  // namespace thg
