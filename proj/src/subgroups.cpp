#include "thg/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace thg {

bool in_F(const Element& e) {
  const auto& rows = e.table().rows();  // sorted by domain
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i].second < rows[i + 1].second)) return false;
  return true;
}

bool in_lp(const Element& e) {
  for (const auto& [x, y] : e.table().rows())
    if (x.size() != y.size()) return false;
  return true;
}

bool in_T(const Element& e) {
  // Cyclic preservation is stable under restriction, so one check on the
  // table refined to a full image level suffices.
  int n = static_cast<int>(std::max<std::size_t>(e.im_code().max_len(), 1));
  ElementTable t = restrict_image_to_level(e, n);
  PrefixCode level = level_code(e.k(), n);
  const auto& rows = t.rows();
  int shift = rank_in_code(level, rows[0].second);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t want = (static_cast<std::size_t>(shift) + i) % rows.size();
    if (rows[i].second != level.at(want)) return false;
  }
  return true;
}

namespace {

// Restrict t until every word on both sides has a prefix in p.
ElementTable deepen_past_code(ElementTable t, const PrefixCode& p) {
  for (;;) {
    const Word* shallow = nullptr;
    for (const auto& [x, y] : t.rows()) {
      if (find_prefix_in_code(p, x) < 0) { shallow = &x; break; }
      if (find_prefix_in_code(p, y) < 0) { shallow = &x; break; }
    }
    if (!shallow) return t;
    t = restrict_step(t, *shallow);
  }
}

}  // namespace

std::optional<int> in_S_PAm(const Element& e, const PrefixCode& p) {
  if (e.k() != p.k()) throw domain_error("in_S_PAm: alphabet mismatch");
  if (!is_maximal_prefix_code(p)) throw domain_error("in_S_PAm: base code not maximal");
  ElementTable t = deepen_past_code(e.table(), p);
  // Every entry now factors uniquely as (code word) . suffix. Membership
  // requires matching suffix lengths per row; the least witness level is
  // the largest suffix length over the reduced table.
  int m = 0;
  for (const auto& [x, y] : t.rows()) {
    int lx = static_cast<int>(x.size()) -
             static_cast<int>(p.at(static_cast<std::size_t>(find_prefix_in_code(p, x))).size());
    int ly = static_cast<int>(y.size()) -
             static_cast<int>(p.at(static_cast<std::size_t>(find_prefix_in_code(p, y))).size());
    if (lx != ly) return std::nullopt;
    m = std::max(m, lx);
  }
  // At level m both codes sit inside P . A^m, and a maximal prefix code
  // contained in a prefix code equals it.
  return m;
}

namespace {

std::optional<std::pair<Word, Word>> scan_growth(const Element& e, const Word& start,
                                                 int max_steps) {
  Word w = start;
  for (int step = 0; step < max_steps; ++step) {
    if (!apply_defined(e, w)) return std::nullopt;
    w = apply(e, w);
    if (w.size() > start.size() && is_prefix(start, w))
      return std::make_pair(start, w.substr(start.size()));
    if (w == start) return std::nullopt;
    if (w.size() > 4 * start.size() + 64) return std::nullopt;  // runaway orbit, give up
  }
  return std::nullopt;
}

}  // namespace

OrderResult order(const Element& e, int max_depth) {
  if (max_depth < 1) throw domain_error("order: max_depth must be >= 1");
  OrderResult res;
  if (e.is_identity()) {
    res.kind = OrderResult::Kind::Finite;
    res.order = 1;
    res.witness_code = e.dom_code();
    return res;
  }
  Element inv = invert(e);
  PrefixCode q = e.dom_code();
  for (int depth = 0; depth < max_depth; ++depth) {
    // Finite certificate: e permutes q.
    bool closed = true;
    std::vector<Word> image;
    image.reserve(q.size());
    for (const auto& w : q.words()) {
      if (!apply_defined(e, w)) { closed = false; break; }
      image.push_back(apply(e, w));
    }
    if (closed) {
      std::sort(image.begin(), image.end());
      if (image == q.words()) {
        // Cycle structure of the permutation gives the order.
        std::map<Word, Word> perm;
        for (const auto& w : q.words()) perm.emplace(w, apply(e, w));
        std::set<Word> seen;
        long long ord = 1;
        for (const auto& w : q.words()) {
          if (seen.count(w)) continue;
          long long len = 0;
          Word cur = w;
          do {
            seen.insert(cur);
            cur = perm.at(cur);
            ++len;
          } while (cur != w);
          ord = std::lcm(ord, len);
        }
        res.kind = OrderResult::Kind::Finite;
        res.order = ord;
        res.witness_code = q;
        return res;
      }
    }
    // Infinite certificate: some orbit extends its start word strictly.
    for (const auto& w : q.words()) {
      if (auto hit = scan_growth(e, w, max_depth)) {
        res.kind = OrderResult::Kind::Infinite;
        res.witness_start = hit->first;
        res.witness_growth = hit->second;
        Word probe = hit->first;
        long long steps = 0;
        do {
          probe = apply(e, probe);
          ++steps;
        } while (probe != hit->first + hit->second);
        res.witness_steps = steps;
        return res;
      }
      if (auto hit = scan_growth(inv, w, max_depth)) {
        res.kind = OrderResult::Kind::Infinite;
        res.witness_start = hit->first;
        res.witness_growth = hit->second;
        Word probe = hit->first;
        long long steps = 0;
        do {
          probe = apply(inv, probe);
          ++steps;
        } while (probe != hit->first + hit->second);
        res.witness_steps = -steps;
        return res;
      }
    }
    // Refine toward a stable code.
    if (!closed) {
      ElementTable t = restrict_domain_to_code(e.table(), q);
      q = join_codes(q, t.im_code());
    } else {
      PrefixCode im(image, e.k());
      q = join_codes(q, im);
    }
  }
  res.kind = OrderResult::Kind::Undecided;
  return res;
}

namespace {

// Order-preserving bijection between two equal-size maximal prefix codes.
Element rank_match(const PrefixCode& from, const PrefixCode& to) {
  if (from.size() != to.size()) throw domain_error("rank_match: cardinality mismatch");
  std::vector<ElementTable::Row> rows;
  rows.reserve(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) rows.emplace_back(from.at(i), to.at(i));
  return reduce(ElementTable(std::move(rows), from.k()));
}

}  // namespace

Factorization factor_lpF(const Element& e) {
  int n = static_cast<int>(std::max<std::size_t>(e.im_code().max_len(), 1));
  ElementTable t = restrict_image_to_level(e, n);
  PrefixCode level = level_code(e.k(), n);
  PrefixCode p = t.dom_code();
  // f is the ranking function of P; pi pairs rank positions with images.
  std::vector<ElementTable::Row> pi_rows;
  pi_rows.reserve(t.size());
  for (std::size_t i = 0; i < t.rows().size(); ++i)
    pi_rows.emplace_back(level.at(i), t.rows()[i].second);
  Factorization out;
  out.mode = FactorMode::LpF;
  out.f = rank_match(p, level);
  out.pi = reduce(ElementTable(std::move(pi_rows), e.k()));
  return out;
}

Factorization factor_Flp(const Element& e) {
  Factorization rev = factor_lpF(invert(e));
  Factorization out;
  out.mode = FactorMode::FLp;
  out.f = invert(rev.f);
  out.pi = invert(rev.pi);
  return out;
}

Factorization factor_SF(const Element& e, const PrefixCode& p) {
  if (e.k() != p.k()) throw domain_error("factor_SF: alphabet mismatch");
  if (!is_maximal_prefix_code(p)) throw domain_error("factor_SF: base code not maximal");
  PrefixCode q1 = e.im_code();
  int n = 0;
  for (;; ++n) {
    PrefixCode pan = expand_level(p, n);
    bool covered = true;
    for (const auto& w : pan.words())
      if (find_prefix_in_code(q1, w) < 0) { covered = false; break; }
    if (covered) break;
    if (n > 200) throw domain_error("factor_SF: no covering level found");
  }
  PrefixCode pan = expand_level(p, n);
  ElementTable t = restrict_image_to_code(e.table(), pan);
  PrefixCode p2 = t.dom_code();
  std::vector<ElementTable::Row> pi_rows;
  pi_rows.reserve(t.size());
  for (std::size_t i = 0; i < t.rows().size(); ++i)
    pi_rows.emplace_back(pan.at(i), t.rows()[i].second);
  Factorization out;
  out.mode = FactorMode::SP;
  out.base = p;
  out.f = rank_match(p2, pan);
  out.pi = reduce(ElementTable(std::move(pi_rows), e.k()));
  return out;
}

Factorization element_specific_factorization(const Element& e) {
  PrefixCode p = e.dom_code();
  PrefixCode q = e.im_code();
  Factorization out;
  out.mode = FactorMode::SP;
  out.base = q;
  out.f = rank_match(p, q);
  std::vector<ElementTable::Row> pi_rows;
  pi_rows.reserve(e.table_size());
  for (std::size_t i = 0; i < e.table().rows().size(); ++i)
    pi_rows.emplace_back(q.at(i), e.table().rows()[i].second);
  out.pi = reduce(ElementTable(std::move(pi_rows), e.k()));
  return out;
}

Factorization product_factorization(const Factorization& psi_fact,
                                    const Factorization& phi_fact) {
  Element f_psi = psi_fact.f;
  Factorization out;
  out.mode = psi_fact.mode;
  out.base = psi_fact.base;
  out.pi = compose(psi_fact.pi, compose(f_psi, compose(phi_fact.pi, invert(f_psi))));
  out.f = compose(f_psi, phi_fact.f);
  if (!in_F(out.f)) throw domain_error("CodesMismatch: product f-part not order preserving");
  if (out.mode == FactorMode::LpF && !in_lp(out.pi))
    throw domain_error("CodesMismatch: product pi-part not length preserving");
  return out;
}

Element phi_family(int n) {
  if (n <= 2) throw domain_error("BadN: phi_family needs n > 2");
  // Cyclic permutation of {a^(n-1)} u {a^i b : i = n-2, ..., 0} with
  // a = 0, b = 1.
  std::vector<ElementTable::Row> rows;
  Word an1(static_cast<std::size_t>(n - 1), 0);
  Word an2b(static_cast<std::size_t>(n - 2), 0);
  an2b.push_back(1);
  rows.emplace_back(an1, an2b);
  for (int i = n - 2; i >= 1; --i) {
    Word x(static_cast<std::size_t>(i), 0);
    x.push_back(1);
    Word y(static_cast<std::size_t>(i - 1), 0);
    y.push_back(1);
    rows.emplace_back(x, y);
  }
  rows.emplace_back(Word(1, 1), an1);
  return reduce(ElementTable(std::move(rows), 2));
}

Element dict_shift(int k, int n) {
  PrefixCode level = level_code(k, n);
  std::vector<ElementTable::Row> rows;
  rows.reserve(level.size());
  for (std::size_t i = 0; i < level.size(); ++i)
    rows.emplace_back(level.at(i), level.at((i + 1) % level.size()));
  return reduce(ElementTable(std::move(rows), k));
}

bool same_S_subgroup(const PrefixCode& p1, const PrefixCode& p2) {
  if (p1.k() != p2.k()) throw domain_error("same_S_subgroup: alphabet mismatch");
  // P1 A^n = P2 A^m forces min/max length alignment, so small exponents
  // suffice.
  for (int n = 0; n <= static_cast<int>(p2.max_len()); ++n)
    for (int m = 0; m <= static_cast<int>(p1.max_len()); ++m)
      if (expand_level(p1, n) == expand_level(p2, m)) return true;
  return false;
}

Element conjugator(const PrefixCode& p1, int n, const PrefixCode& p2, int m) {
  PrefixCode a = expand_level(p1, n);
  PrefixCode b = expand_level(p2, m);
  if (a.size() != b.size()) throw domain_error("CardinalityMismatch: conjugator");
  return rank_match(a, b);
}

}  // namespace thg
