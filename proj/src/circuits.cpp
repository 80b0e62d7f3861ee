#include "thg/circuits.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "thg/subgroups.hpp"

namespace thg {

TernaryWord parse_ternary(const std::string& text) {
  TernaryWord w;
  if (text == "-") return w;
  for (char c : text) {
    if (c == '0') w.push_back(0);
    else if (c == '1') w.push_back(1);
    else if (c == '_') w.push_back(kBot);
    else throw domain_error(std::string("parse_ternary: bad symbol '") + c + "'");
  }
  return w;
}

std::string print_ternary(const TernaryWord& w) {
  if (w.empty()) return "-";
  std::string s;
  for (char c : w) s.push_back(c == 0 ? '0' : c == 1 ? '1' : '_');
  return s;
}

namespace {

bool all_bot(const TernaryWord& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == kBot; });
}

// Splits x as (binary prefix) bot^j, or reports a malformed shape.
bool split_padded(const TernaryWord& x, Word* u) {
  std::size_t i = 0;
  while (i < x.size() && x[i] != kBot) ++i;
  for (std::size_t t = i; t < x.size(); ++t)
    if (x[t] != kBot) return false;
  *u = x.substr(0, i);
  return true;
}

TernaryWord pad_to(const Word& u, int width) {
  TernaryWord x = u;
  x.resize(static_cast<std::size_t>(width), kBot);
  return x;
}

}  // namespace

PaddedFunction::PaddedFunction(Element base, int m, int n) : base_(std::move(base)), m_(m), n_(n) {
  if (m_ < static_cast<int>(base_.dom_code().max_len()))
    throw domain_error("WidthTooSmall: padding input width");
  if (n_ < static_cast<int>(base_.im_code().max_len()))
    throw domain_error("WidthTooSmall: padding output width");
}

TernaryWord PaddedFunction::eval(const TernaryWord& x) const {
  if (static_cast<int>(x.size()) != m_) throw domain_error("WidthMismatch: padded eval");
  Word u;
  if (!split_padded(x, &u)) return TernaryWord(static_cast<std::size_t>(n_), kBot);
  const auto& rows = base_.table().rows();
  for (const auto& [p, q] : rows)
    if (p == u) return pad_to(q, n_);
  return TernaryWord(static_cast<std::size_t>(n_), kBot);
}

std::vector<TernaryWord> PaddedFunction::padded_dom_code() const {
  std::vector<TernaryWord> out;
  for (const auto& [p, q] : base_.table().rows()) out.push_back(pad_to(p, m_));
  return out;
}

std::vector<TernaryWord> PaddedFunction::padded_im_code() const {
  std::vector<TernaryWord> out;
  for (const auto& [p, q] : base_.table().rows()) out.push_back(pad_to(q, n_));
  std::sort(out.begin(), out.end());
  return out;
}

PaddedFunction pad(const Element& e, int m, int n) {
  if (e.k() != 2) throw domain_error("pad: circuits are binary");
  return PaddedFunction(e, m, n);
}

int logic_arity_in(LogicOp op) {
  switch (op) {
    case LogicOp::Dup: case LogicOp::Del: case LogicOp::Not:
    case LogicOp::IsBot: case LogicOp::IsBin: return 1;
    case LogicOp::K0: case LogicOp::K1: case LogicOp::KBot: return 0;
    case LogicOp::And: case LogicOp::Or: case LogicOp::Xor: case LogicOp::Eq: return 2;
    case LogicOp::Mux: return 3;
    case LogicOp::CmpStep: return 4;
  }
  return 0;
}

int logic_arity_out(LogicOp op) {
  switch (op) {
    case LogicOp::Dup: return 2;
    case LogicOp::Del: return 0;
    case LogicOp::CmpStep: return 2;
    default: return 1;
  }
}

Stage Stage::tau(int i) {
  if (i < 1) throw domain_error("Stage::tau: position must be >= 1");
  Stage s;
  s.kind = Kind::Tau;
  s.tau_i = i;
  return s;
}

Stage Stage::gate(Generator g, int low, int width) {
  if (low < 0 || width < 1) throw domain_error("Stage::gate: bad window");
  Stage s;
  s.kind = Kind::Gate;
  s.gen = g;
  s.gate_low = low;
  s.gate_width = width;
  return s;
}

Stage Stage::logic(LogicOp op, std::vector<int> at) {
  if (static_cast<int>(at.size()) != logic_arity_in(op))
    throw domain_error("Stage::logic: arity mismatch");
  Stage s;
  s.kind = Kind::Logic;
  s.op = op;
  s.at = std::move(at);
  return s;
}

namespace {

int stage_width_out(const Stage& s, int w) {
  switch (s.kind) {
    case Stage::Kind::Tau:
      if (s.tau_i + 1 > w) throw domain_error("WidthMismatch: tau beyond word");
      return w;
    case Stage::Kind::Gate:
      if (s.gate_low + s.gate_width > w) throw domain_error("WidthMismatch: gate window");
      return w;
    case Stage::Kind::Logic: {
      for (int p : s.at)
        if (p < 1 || p > w) throw domain_error("WidthMismatch: logic position");
      if (s.op == LogicOp::Dup) return w + 1;
      return w - logic_arity_in(s.op) + logic_arity_out(s.op);
    }
  }
  return w;
}

const Element& cached_generator(const Generator& g) {
  static std::map<std::tuple<GenTag, int, int, bool>, Element> cache;
  auto key = std::make_tuple(g.tag, g.i, g.j, g.inverted);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, generator_element(g, 2)).first;
  return it->second;
}

char logic_eval1(LogicOp op, char a) {
  switch (op) {
    case LogicOp::Not: return a == kBot ? kBot : static_cast<char>(1 - a);
    case LogicOp::IsBot: return a == kBot ? 1 : 0;
    case LogicOp::IsBin: return a == kBot ? 0 : 1;
    default: return kBot;
  }
}

char logic_eval2(LogicOp op, char a, char b) {
  if (op == LogicOp::Eq) return a == b ? 1 : 0;
  if (a == kBot || b == kBot) return kBot;
  switch (op) {
    case LogicOp::And: return a && b;
    case LogicOp::Or: return (a || b) ? 1 : 0;
    case LogicOp::Xor: return a ^ b;
    default: return kBot;
  }
}

}  // namespace

Circuit::Circuit(int input_width, std::vector<Stage> stages) : w_in_(input_width) {
  if (w_in_ < 0) throw domain_error("Circuit: negative width");
  for (auto& s : stages) push(std::move(s));
}

void Circuit::push(Stage s) {
  int w = output_width();
  stage_width_out(s, w);  // validates
  stages_.push_back(std::move(s));
}

int Circuit::output_width() const {
  int w = w_in_;
  for (const auto& s : stages_) w = stage_width_out(s, w);
  return w;
}

std::vector<int> Circuit::width_profile() const {
  std::vector<int> out{w_in_};
  int w = w_in_;
  for (const auto& s : stages_) {
    w = stage_width_out(s, w);
    out.push_back(w);
  }
  return out;
}

bool Circuit::bijective_fragment() const {
  return std::all_of(stages_.begin(), stages_.end(),
                     [](const Stage& s) { return s.kind != Stage::Kind::Logic; });
}

TernaryWord eval_circuit(const Circuit& c, const TernaryWord& input) {
  if (static_cast<int>(input.size()) != c.input_width())
    throw domain_error("WidthMismatch: circuit input");
  TernaryWord w = input;
  for (const auto& s : c.stages()) {
    switch (s.kind) {
      case Stage::Kind::Tau: {
        std::swap(w[static_cast<std::size_t>(s.tau_i - 1)],
                  w[static_cast<std::size_t>(s.tau_i)]);
        break;
      }
      case Stage::Kind::Gate: {
        auto begin = static_cast<std::size_t>(s.gate_low);
        auto len = static_cast<std::size_t>(s.gate_width);
        TernaryWord window = w.substr(begin, len);
        Word u;
        bool ok = split_padded(window, &u);
        TernaryWord result(len, kBot);
        if (ok) {
          const Element& e = cached_generator(s.gen);
          PrefixCode dom = e.dom_code();
          int idx = find_prefix_in_code(dom, u);
          if (idx >= 0) {
            const auto& row = e.table().rows()[static_cast<std::size_t>(idx)];
            Word v = row.second + u.substr(row.first.size());
            if (v.size() <= len) result = pad_to(v, static_cast<int>(len));
          }
        }
        w.replace(begin, len, result);
        break;
      }
      case Stage::Kind::Logic: {
        std::vector<char> in;
        for (int p : s.at) in.push_back(w[static_cast<std::size_t>(p - 1)]);
        if (s.op == LogicOp::Dup) {
          w.push_back(in[0]);
          break;
        }
        std::vector<int> del = s.at;
        std::sort(del.rbegin(), del.rend());
        for (int p : del) w.erase(static_cast<std::size_t>(p - 1), 1);
        switch (s.op) {
          case LogicOp::Del: break;
          case LogicOp::K0: w.push_back(0); break;
          case LogicOp::K1: w.push_back(1); break;
          case LogicOp::KBot: w.push_back(kBot); break;
          case LogicOp::Not: case LogicOp::IsBot: case LogicOp::IsBin:
            w.push_back(logic_eval1(s.op, in[0]));
            break;
          case LogicOp::And: case LogicOp::Or: case LogicOp::Xor: case LogicOp::Eq:
            w.push_back(logic_eval2(s.op, in[0], in[1]));
            break;
          case LogicOp::Mux:
            w.push_back(in[0] == 1 ? in[1] : in[0] == 0 ? in[2] : kBot);
            break;
          case LogicOp::CmpStep: {
            char s1 = in[0], s0 = in[1], a = in[2], b = in[3];
            if (s1 == kBot || s0 == kBot) {
              w.push_back(kBot);
              w.push_back(kBot);
            } else if (s1 == 0 && s0 == 0) {
              // bot sorts before binary letters, matching prefix-is-less.
              auto key = [](char c) { return c == kBot ? 0 : c + 1; };
              if (key(a) == key(b)) { w.push_back(0); w.push_back(0); }
              else if (key(a) < key(b)) { w.push_back(0); w.push_back(1); }
              else { w.push_back(1); w.push_back(0); }
            } else {
              w.push_back(s1);
              w.push_back(s0);
            }
            break;
          }
          case LogicOp::Dup: break;
        }
        break;
      }
    }
  }
  return w;
}

long long circuit_size(const Circuit& c) {
  long long gates = 0;
  for (const auto& s : c.stages()) {
    if (s.kind == Stage::Kind::Logic && (s.op == LogicOp::Dup || s.op == LogicOp::Del))
      continue;  // wiring, not gates
    ++gates;
  }
  auto profile = c.width_profile();
  long long wires = *std::max_element(profile.begin(), profile.end());
  return gates + wires;
}

void splice(Circuit& outer, const Circuit& inner, int offset) {
  for (const auto& s : inner.stages()) {
    switch (s.kind) {
      case Stage::Kind::Tau:
        outer.push(Stage::tau(s.tau_i + offset));
        break;
      case Stage::Kind::Gate:
        outer.push(Stage::gate(s.gen, s.gate_low + offset, s.gate_width));
        break;
      case Stage::Kind::Logic:
        throw domain_error("splice: only bijective stages can be embedded");
    }
  }
}

namespace {

// tau_{i,j} as adjacent swaps, in application order.
std::vector<int> adjacent_expansion(int i, int j) {
  std::vector<int> out;
  for (int t = i; t < j; ++t) out.push_back(t);
  for (int t = j - 2; t >= i; --t) out.push_back(t);
  return out;
}

}  // namespace

Circuit word_to_circuit(const GenWord& word) {
  std::vector<ElementTable> chain;
  chain.reserve(word.size());
  for (const auto& s : word) {
    if (s.control)
      throw domain_error("word_to_circuit: control wrappers have no gate form");
    chain.push_back(eval_symbol(s, 2).table());
  }
  std::size_t width = 1;
  if (!chain.empty()) {
    for (const auto& t : common_refinement(chain)) {
      width = std::max(width, t.dom_code().max_len());
      width = std::max(width, t.im_code().max_len());
    }
  }
  int w = static_cast<int>(width);
  Circuit c(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {  // application order
    if (it->gen.tag == GenTag::Tau) {
      for (int t : adjacent_expansion(it->gen.i + it->lower_by, it->gen.j + it->lower_by))
        c.push(Stage::tau(t));
    } else {
      c.push(Stage::gate(it->gen, it->lower_by, w - it->lower_by));
    }
  }
  return c;
}

namespace {

// The wire permutation moving d top wires below an l-wide block, as tau
// symbols; valid conjugator for uniformly restricted length-preserving
// tables.
GenWord lowering_conjugator(int d, int l) {
  GenWord pi;
  if (d + 1 > l) {
    for (int t = 1; t <= l; ++t) pi.push_back(Generator::tau(t, d + t));
  } else {
    // One left rotation over d+l wires, repeated d times.
    GenWord rot;
    for (int t = d + l - 1; t >= 1; --t) rot.push_back(Generator::tau(t, t + 1));
    for (int r = 0; r < d; ++r) pi.insert(pi.end(), rot.begin(), rot.end());
  }
  return pi;
}

GenWord lowered_gate_word(const Generator& g, int d) {
  if (d == 0) return {GenSymbol{g}};
  Element base = cached_generator(g);
  if (in_lp(base)) {
    int l = static_cast<int>(base.dom_code().max_len());
    GenWord pi = lowering_conjugator(d, l);
    GenWord out = inverse_word(pi);
    out.push_back(GenSymbol{g});
    out.insert(out.end(), pi.begin(), pi.end());
    return out;
  }
  return element_to_word(lower(base, d));
}

}  // namespace

GenWord circuit_to_word(const Circuit& c) {
  GenWord out;
  const auto& stages = c.stages();
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    switch (it->kind) {
      case Stage::Kind::Tau:
        out.push_back(GenSymbol{Generator::tau(it->tau_i, it->tau_i + 1)});
        break;
      case Stage::Kind::Gate: {
        GenWord part = lowered_gate_word(it->gen, it->gate_low);
        out.insert(out.end(), part.begin(), part.end());
        break;
      }
      case Stage::Kind::Logic:
        throw domain_error("NotBijectiveGate: circuit has logic stages");
    }
  }
  return out;
}

ElementTable chain_table_of_circuit(const Circuit& c) {
  const int m = c.input_width();
  std::vector<ElementTable::Row> rows;
  std::vector<Word> frontier{Word{}};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const auto& u : frontier) {
      TernaryWord out = eval_circuit(c, pad_to(u, m));
      Word v;
      bool shaped = split_padded(out, &v);
      if (shaped && !v.empty()) {
        rows.emplace_back(u, v);
        continue;
      }
      if (static_cast<int>(u.size()) >= m)
        throw domain_error("NotBijectiveGate: circuit has no code word on a branch");
      for (char a = 0; a < 2; ++a) next.push_back(u + a);
    }
    frontier = std::move(next);
  }
  return ElementTable(std::move(rows), 2);
}

Element element_of_circuit(const Circuit& c) { return reduce(chain_table_of_circuit(c)); }

GenWord element_to_word(const Element& e) {
  if (e.k() != 2) throw domain_error("element_to_word: binary only");
  Factorization fact = factor_lpF(e);
  GenWord out;
  if (!fact.pi.is_identity()) {
    int level = static_cast<int>(fact.pi.dom_code().max_len());
    ElementTable t = restrict_image_to_level(fact.pi, level);
    PrefixCode lv = level_code(2, level);
    std::vector<std::size_t> perm(lv.size());
    for (const auto& [x, y] : t.rows())
      perm[static_cast<std::size_t>(rank_in_code(lv, x))] =
          static_cast<std::size_t>(rank_in_code(lv, y));
    int w = level;
    if (permutation_parity(perm) == Parity::Odd) {
      perm = lift_identity_wire(perm);
      ++w;
    }
    GenWord pi_word = circuit_to_word(synthesize_even_permutation(perm, w));
    out.insert(out.end(), pi_word.begin(), pi_word.end());
  }
  GenWord f_word = f_to_word(fact.f);
  out.insert(out.end(), f_word.begin(), f_word.end());
  return out;
}

namespace {

// Builder with tracked value handles; logic outputs append at the end of
// the word, deletions shift later positions down.
class Builder {
public:
  explicit Builder(int width_in) : c_(width_in) {
    for (int i = 1; i <= width_in; ++i) pos_.push_back(i);
    width_ = width_in;
  }

  int input(int i) const { return i - 1; }  // handle of input wire i

  int dup(int h) {
    c_.push(Stage::logic(LogicOp::Dup, {at(h)}));
    pos_.push_back(++width_);
    return static_cast<int>(pos_.size()) - 1;
  }

  int constant(LogicOp k) {
    c_.push(Stage::logic(k, {}));
    pos_.push_back(++width_);
    return static_cast<int>(pos_.size()) - 1;
  }

  int op1(LogicOp op, int a) { return emit(op, {a}); }
  int op2(LogicOp op, int a, int b) { return emit(op, {a, b}); }
  int mux(int s, int a, int b) { return emit(LogicOp::Mux, {s, a, b}); }

  std::pair<int, int> cmp_step(int s1, int s0, int a, int b) {
    emit_raw(LogicOp::CmpStep, {s1, s0, a, b});
    pos_.push_back(width_ - 1);
    pos_.push_back(width_);
    int h2 = static_cast<int>(pos_.size()) - 1;
    return {h2 - 1, h2};
  }

  void del(int h) {
    c_.push(Stage::logic(LogicOp::Del, {at(h)}));
    shift_after(at(h));
    pos_[static_cast<std::size_t>(h)] = -1;
    --width_;
  }

  // Delete every live handle except `keep` (which stay in order).
  void keep_only(const std::vector<int>& keep) {
    std::vector<bool> keep_set(pos_.size(), false);
    for (int h : keep) keep_set[static_cast<std::size_t>(h)] = true;
    for (std::size_t h = 0; h < pos_.size(); ++h)
      if (pos_[h] > 0 && !keep_set[h]) del(static_cast<int>(h));
  }

  void splice_bijective(const Circuit& inner, int offset, int window_extend) {
    for (const auto& s : inner.stages()) {
      if (s.kind == Stage::Kind::Tau) {
        c_.push(Stage::tau(s.tau_i + offset));
      } else if (s.kind == Stage::Kind::Gate) {
        c_.push(Stage::gate(s.gen, s.gate_low + offset, s.gate_width + window_extend));
      } else {
        throw domain_error("splice: only bijective stages can be embedded");
      }
    }
  }

  int width() const { return width_; }
  Circuit take() { return std::move(c_); }

private:
  int at(int h) const {
    int p = pos_.at(static_cast<std::size_t>(h));
    if (p <= 0) throw domain_error("Builder: dead handle");
    return p;
  }

  void shift_after(int p) {
    for (auto& q : pos_)
      if (q > p) --q;
  }

  void emit_raw(LogicOp op, const std::vector<int>& hs) {
    std::vector<int> ps;
    ps.reserve(hs.size());
    for (int h : hs) ps.push_back(at(h));
    c_.push(Stage::logic(op, ps));
    std::sort(ps.rbegin(), ps.rend());
    for (int p : ps) shift_after(p);
    for (int h : hs) pos_[static_cast<std::size_t>(h)] = -1;
    width_ -= static_cast<int>(ps.size());
    width_ += logic_arity_out(op);
  }

  int emit(LogicOp op, const std::vector<int>& hs) {
    emit_raw(op, hs);
    pos_.push_back(width_);
    return static_cast<int>(pos_.size()) - 1;
  }

  Circuit c_;
  std::vector<int> pos_;  // handle -> 1-based position, -1 when consumed
  int width_ = 0;
};

// Flag: x1..xw is not of the shape (binary)* (bot)*.
int emit_malformed_flag(Builder& b, const std::vector<int>& xs) {
  int bad = b.constant(LogicOp::K0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    int pair_bad = b.op2(LogicOp::And, b.op1(LogicOp::IsBot, b.dup(xs[i])),
                         b.op1(LogicOp::IsBin, b.dup(xs[i + 1])));
    bad = b.op2(LogicOp::Or, bad, pair_bad);
  }
  return bad;
}

}  // namespace

Circuit restrict_image_circuit(const Circuit& c, int m, int n) {
  if (c.input_width() != m || c.output_width() != n)
    throw domain_error("restrict_image_circuit: width mismatch with the given circuit");
  if (!c.bijective_fragment() || m != n)
    throw domain_error("restrict_image_circuit: expects a width-uniform bijective circuit");
  // The element's restriction to image code {0,1}^n maps p z -> q z; the
  // suffix-carrying gates assemble q z in one pass once the windows are
  // widened to m+n wires. The glue checks input shape and that the result
  // is exactly n binary symbols.
  Builder b(m + n);
  std::vector<int> xs;
  for (int i = 1; i <= m + n; ++i) xs.push_back(b.input(i));

  int malformed = emit_malformed_flag(b, xs);

  // Run the element on the first m+n wires in place.
  b.splice_bijective(c, 0, n);

  // The xs handles now carry the transformed word.
  int ok = b.op1(LogicOp::Not, malformed);
  for (int i = 0; i < n; ++i) ok = b.op2(LogicOp::And, ok, b.op1(LogicOp::IsBin, b.dup(xs[i])));
  ok = b.op2(LogicOp::And, ok, b.op1(LogicOp::IsBot, b.dup(xs[n])));

  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    int kb = b.constant(LogicOp::KBot);
    out.push_back(b.mux(b.dup(ok), xs[i], kb));
  }
  b.keep_only(out);
  return b.take();
}

Circuit invert_F_circuit(const Circuit& c, int m, int n) {
  if (c.input_width() != m || c.output_width() != n)
    throw domain_error("invert_F_circuit: width mismatch with the given circuit");
  if (!c.bijective_fragment())
    throw domain_error("invert_F_circuit: expects a bijective circuit");
  Element f = element_of_circuit(c);
  if (!in_F(f)) throw domain_error("NotOrderPreserving: circuit element is outside F");

  std::vector<int> code_lengths;
  for (const auto& [x, y] : f.table().rows()) code_lengths.push_back(static_cast<int>(x.size()));
  std::sort(code_lengths.begin(), code_lengths.end());
  code_lengths.erase(std::unique(code_lengths.begin(), code_lengths.end()), code_lengths.end());

  Builder b(n);
  std::vector<int> ys;
  for (int i = 1; i <= n; ++i) ys.push_back(b.input(i));
  int invalid = emit_malformed_flag(b, ys);

  // Search state: current vertex V (bot-padded), answer A, done flag D.
  std::vector<int> vreg, areg;
  for (int i = 0; i < m; ++i) vreg.push_back(b.constant(LogicOp::KBot));
  for (int i = 0; i < m; ++i) areg.push_back(b.constant(LogicOp::KBot));
  int done = b.constant(LogicOp::K0);

  for (int iter = 0; iter <= m; ++iter) {
    // Candidate u = v 1 0^(m-1-|v|), or v itself once v is full.
    std::vector<int> u(m);
    {
      int chain = b.constant(LogicOp::K1);  // every position so far binary
      for (int i = 0; i < m; ++i) {
        int ib = b.op1(LogicOp::IsBin, b.dup(vreg[static_cast<std::size_t>(i)]));
        int first_free = b.op2(LogicOp::And, b.dup(chain), b.op1(LogicOp::Not, b.dup(ib)));
        int k1 = b.constant(LogicOp::K1);
        int k0 = b.constant(LogicOp::K0);
        int fill = b.mux(first_free, k1, k0);
        u[static_cast<std::size_t>(i)] =
            b.mux(b.dup(ib), b.dup(vreg[static_cast<std::size_t>(i)]), fill);
        chain = b.op2(LogicOp::And, chain, ib);
      }
      b.del(chain);
    }

    // Find the code-word prefix of u: one circuit copy per code length,
    // shortest first; the first well-formed non-bot output wins.
    int found = b.constant(LogicOp::K0);
    std::vector<int> ostar;
    for (int i = 0; i < n; ++i) ostar.push_back(b.constant(LogicOp::KBot));
    std::vector<int> take_flags;  // aligned with code_lengths
    for (int j : code_lengths) {
      std::vector<int> feed;
      for (int i = 0; i < j; ++i) feed.push_back(b.dup(u[static_cast<std::size_t>(i)]));
      for (int i = j; i < m; ++i) feed.push_back(b.constant(LogicOp::KBot));
      // The feed block is the last m wires; run the copy in place there.
      b.splice_bijective(c, b.width() - m, 0);
      std::vector<int>& o = feed;
      int shaped_bad = emit_malformed_flag(b, o);
      int accept = b.op2(LogicOp::And, b.op1(LogicOp::Not, shaped_bad),
                         b.op1(LogicOp::IsBin, b.dup(o[0])));
      accept = b.op2(LogicOp::And, accept, b.op1(LogicOp::Not, b.dup(found)));
      for (int i = 0; i < n; ++i)
        ostar[static_cast<std::size_t>(i)] =
            b.mux(b.dup(accept), o[static_cast<std::size_t>(i)], ostar[static_cast<std::size_t>(i)]);
      for (int i = n; i < m; ++i) b.del(o[static_cast<std::size_t>(i)]);
      found = b.op2(LogicOp::Or, found, b.dup(accept));
      take_flags.push_back(accept);
    }

    // Dictionary comparison of the selected image against y.
    int s1 = b.constant(LogicOp::K0), s0 = b.constant(LogicOp::K0);
    for (int i = 0; i < n; ++i) {
      auto [n1, n0] = b.cmp_step(s1, s0, b.dup(ostar[static_cast<std::size_t>(i)]),
                                 b.dup(ys[static_cast<std::size_t>(i)]));
      s1 = n1;
      s0 = n0;
    }
    int eq = b.op2(LogicOp::And, b.op1(LogicOp::Not, b.dup(s1)),
                   b.op1(LogicOp::Not, b.dup(s0)));
    int less = b.op2(LogicOp::And, s0, b.op1(LogicOp::Not, s1));
    eq = b.op2(LogicOp::And, eq, b.dup(found));
    eq = b.op2(LogicOp::And, eq, b.op1(LogicOp::Not, b.dup(invalid)));

    // mask_i: the accepted prefix is at least i long.
    std::vector<int> mask(m);
    {
      int suffix = b.constant(LogicOp::K0);
      for (int i = m; i >= 1; --i) {
        for (std::size_t t = 0; t < take_flags.size(); ++t)
          if (code_lengths[t] == i)
            suffix = b.op2(LogicOp::Or, suffix, b.dup(take_flags[t]));
        mask[static_cast<std::size_t>(i - 1)] = b.dup(suffix);
      }
      b.del(suffix);
    }
    for (int t : take_flags) b.del(t);

    int set = b.op2(LogicOp::And, eq, b.op1(LogicOp::Not, b.dup(done)));
    for (int i = 0; i < m; ++i) {
      int kb = b.constant(LogicOp::KBot);
      int masked = b.mux(mask[static_cast<std::size_t>(i)],
                         b.dup(u[static_cast<std::size_t>(i)]), kb);
      areg[static_cast<std::size_t>(i)] =
          b.mux(b.dup(set), masked, areg[static_cast<std::size_t>(i)]);
    }

    // Descend: the first free slot of v takes 1 when f(x) < y, else 0.
    int new_done = b.op2(LogicOp::Or, done, set);
    int grow = b.op1(LogicOp::Not, b.dup(new_done));
    done = new_done;
    {
      int seen = b.constant(LogicOp::K0);
      for (int i = 0; i < m; ++i) {
        int isfirst =
            b.op2(LogicOp::And, b.op1(LogicOp::Not, b.dup(seen)),
                  b.op1(LogicOp::Not,
                        b.op1(LogicOp::IsBin, b.dup(vreg[static_cast<std::size_t>(i)]))));
        seen = b.op2(LogicOp::Or, seen, b.dup(isfirst));
        int k1 = b.constant(LogicOp::K1);
        int k0 = b.constant(LogicOp::K0);
        int bit = b.mux(b.dup(less), k1, k0);
        int write = b.op2(LogicOp::And, isfirst, b.dup(grow));
        vreg[static_cast<std::size_t>(i)] =
            b.mux(write, bit, vreg[static_cast<std::size_t>(i)]);
      }
      b.del(seen);
    }
    b.del(grow);
    b.del(less);
    b.del(found);
    for (int i = 0; i < n; ++i) b.del(ostar[static_cast<std::size_t>(i)]);
    for (int i = 0; i < m; ++i) b.del(u[static_cast<std::size_t>(i)]);
  }
  b.keep_only(areg);
  return b.take();
}

Parity permutation_parity(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = p[cur];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? Parity::Even : Parity::Odd;
}

std::vector<std::size_t> lift_identity_wire(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> out(p.size() * 2);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t a = 0; a < 2; ++a) out[x * 2 + a] = p[x] * 2 + a;
  return out;
}

std::vector<std::size_t> permutation_of_circuit(const Circuit& c) {
  const int w = c.input_width();
  if (c.output_width() != w) throw domain_error("permutation_of_circuit: width changes");
  std::vector<std::size_t> out;
  std::size_t count = 1;
  for (int i = 0; i < w; ++i) count *= 2;
  out.reserve(count);
  for (std::size_t x = 0; x < count; ++x) {
    TernaryWord in(static_cast<std::size_t>(w), 0);
    for (int i = 0; i < w; ++i)
      in[static_cast<std::size_t>(i)] = static_cast<char>((x >> (w - 1 - i)) & 1);
    TernaryWord r = eval_circuit(c, in);
    std::size_t y = 0;
    for (int i = 0; i < w; ++i) {
      if (r[static_cast<std::size_t>(i)] == kBot)
        throw domain_error("permutation_of_circuit: bot output on binary input");
      y = y * 2 + static_cast<std::size_t>(r[static_cast<std::size_t>(i)]);
    }
    out.push_back(y);
  }
  return out;
}

namespace {

struct UnitMove {
  Stage stage;
  std::vector<std::size_t> perm;
};

std::vector<UnitMove> unit_moves(int w) {
  std::vector<UnitMove> moves;
  auto add = [&](Stage s) {
    Circuit c(w, {s});
    moves.push_back({std::move(s), permutation_of_circuit(c)});
  };
  for (int t = 1; t < w; ++t) add(Stage::tau(t));
  for (int d = 0; d <= w - 1; ++d) add(Stage::gate(Generator::make(GenTag::N), d, w - d));
  for (int d = 0; d <= w - 2; ++d) add(Stage::gate(Generator::make(GenTag::C), d, w - d));
  for (int d = 0; d <= w - 3; ++d) add(Stage::gate(Generator::make(GenTag::T), d, w - d));
  return moves;
}

std::uint64_t pack_perm(const std::vector<std::size_t>& p) {
  std::uint64_t key = 0;
  for (std::size_t v : p) key = (key << 8) | v;
  return key;
}

// Full BFS over the group generated by the unit moves; usable up to w = 3.
Circuit synth_small(const std::vector<std::size_t>& p, int w) {
  static std::map<int, std::pair<std::vector<UnitMove>,
                                 std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>>>>
      cache;
  auto& [moves, parents] = cache[w];
  if (moves.empty()) {
    moves = unit_moves(w);
    std::vector<std::size_t> id(1u << w);
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    std::queue<std::vector<std::size_t>> q;
    q.push(id);
    parents.emplace(pack_perm(id), std::make_pair(pack_perm(id), -1));
    while (!q.empty()) {
      auto cur = q.front();
      q.pop();
      std::uint64_t cur_key = pack_perm(cur);
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        std::vector<std::size_t> next(cur.size());
        for (std::size_t x = 0; x < cur.size(); ++x) next[x] = moves[mi].perm[cur[x]];
        std::uint64_t key = pack_perm(next);
        if (parents.emplace(key, std::make_pair(cur_key, static_cast<int>(mi))).second)
          q.push(std::move(next));
      }
    }
  }
  auto it = parents.find(pack_perm(p));
  if (it == parents.end()) throw domain_error("synthesize: permutation unreachable");
  std::vector<int> path;
  std::uint64_t key = pack_perm(p);
  while (parents.at(key).second >= 0) {
    path.push_back(parents.at(key).second);
    key = parents.at(key).first;
  }
  std::reverse(path.begin(), path.end());
  Circuit c(w);
  for (int mi : path) c.push(moves[static_cast<std::size_t>(mi)].stage);
  return c;
}

// BFS over 4-tuples of points for w = 4; T at the top wires realizes the
// base double transposition (1100 1110)(1101 1111).
Circuit synth_w4(const std::vector<std::size_t>& p) {
  const int w = 4;
  static std::vector<UnitMove> moves;
  static std::unordered_map<std::uint32_t, std::pair<std::uint32_t, int>> parents;
  auto pack = [](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return static_cast<std::uint32_t>((a << 12) | (b << 8) | (c << 4) | d);
  };
  const std::uint32_t base = pack(12, 14, 13, 15);
  if (moves.empty()) {
    moves = unit_moves(w);
    std::queue<std::uint32_t> q;
    q.push(base);
    parents.emplace(base, std::make_pair(base, -1));
    while (!q.empty()) {
      std::uint32_t cur = q.front();
      q.pop();
      std::size_t t[4] = {(cur >> 12) & 15, (cur >> 8) & 15, (cur >> 4) & 15, cur & 15};
      for (std::size_t mi = 0; mi < moves.size(); ++mi) {
        std::uint32_t next = pack(moves[mi].perm[t[0]], moves[mi].perm[t[1]],
                                  moves[mi].perm[t[2]], moves[mi].perm[t[3]]);
        if (parents.emplace(next, std::make_pair(cur, static_cast<int>(mi))).second)
          q.push(next);
      }
    }
  }

  // Even permutation as transpositions, in application order.
  std::vector<std::pair<std::size_t, std::size_t>> swaps;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) {
      seen[i] = true;
      continue;
    }
    std::vector<std::size_t> cycle;
    std::size_t cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      cycle.push_back(cur);
      cur = p[cur];
    }
    for (std::size_t t = 1; t < cycle.size(); ++t) swaps.emplace_back(cycle[0], cycle[t]);
  }
  if (swaps.size() % 2 != 0) throw domain_error("OddPermutation: synthesize needs even input");

  // Pair the transpositions into disjoint double transpositions.
  std::vector<std::array<std::size_t, 4>> doubles;
  for (std::size_t t = 0; t < swaps.size(); t += 2) {
    auto [a, b] = swaps[t];
    auto [c2, d2] = swaps[t + 1];
    bool share = a == c2 || a == d2 || b == c2 || b == d2;
    if (!share) {
      doubles.push_back({a, b, c2, d2});
      continue;
    }
    std::size_t fresh[2];
    int found = 0;
    for (std::size_t v = 0; v < p.size() && found < 2; ++v)
      if (v != a && v != b && v != c2 && v != d2) fresh[found++] = v;
    doubles.push_back({a, b, fresh[0], fresh[1]});
    doubles.push_back({fresh[0], fresh[1], c2, d2});
  }

  Circuit out(w);
  for (const auto& dd : doubles) {
    auto it = parents.find(pack(dd[0], dd[1], dd[2], dd[3]));
    if (it == parents.end()) throw domain_error("synthesize: tuple unreachable");
    std::vector<int> path;
    std::uint32_t key = pack(dd[0], dd[1], dd[2], dd[3]);
    while (parents.at(key).second >= 0) {
      path.push_back(parents.at(key).second);
      key = parents.at(key).first;
    }
    // path applied to the base tuple reaches (a,b,c,d); its reverse is the
    // conjugator g with g(a,b,c,d) = base.
    for (auto pi = path.begin(); pi != path.end(); ++pi)
      out.push(moves[static_cast<std::size_t>(*pi)].stage);
    out.push(Stage::gate(Generator::make(GenTag::T), 0, w));
    for (auto pi = path.rbegin(); pi != path.rend(); ++pi)
      out.push(moves[static_cast<std::size_t>(*pi)].stage);
  }
  if (permutation_of_circuit(out) != p)
    throw domain_error("synthesize: internal verification failed");
  return out;
}

}  // namespace

Circuit synthesize_even_permutation(const std::vector<std::size_t>& p, int w) {
  if (w < 1) throw domain_error("synthesize: width must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < w; ++i) count *= 2;
  if (p.size() != count) throw domain_error("synthesize: permutation size mismatch");
  if (permutation_parity(p) == Parity::Odd)
    throw domain_error("OddPermutation: lift with an identity wire first");
  if (w <= 3) return synth_small(p, w);
  if (w == 4) return synth_w4(p);
  throw domain_error("synthesize: widths above 4 are out of scope");
}

namespace {

std::string gate_token(const Generator& g) {
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

const char* logic_token(LogicOp op) {
  switch (op) {
    case LogicOp::Dup: return "dup";
    case LogicOp::Del: return "del";
    case LogicOp::K0: return "k0";
    case LogicOp::K1: return "k1";
    case LogicOp::KBot: return "kb";
    case LogicOp::Not: return "not";
    case LogicOp::IsBot: return "isbot";
    case LogicOp::IsBin: return "isbin";
    case LogicOp::And: return "and";
    case LogicOp::Or: return "or";
    case LogicOp::Xor: return "xor";
    case LogicOp::Eq: return "eq";
    case LogicOp::Mux: return "mux";
    case LogicOp::CmpStep: return "cmp";
  }
  return "?";
}

LogicOp logic_from_token(const std::string& t) {
  static const std::map<std::string, LogicOp> table = {
      {"dup", LogicOp::Dup}, {"del", LogicOp::Del}, {"k0", LogicOp::K0},
      {"k1", LogicOp::K1},   {"kb", LogicOp::KBot}, {"not", LogicOp::Not},
      {"isbot", LogicOp::IsBot}, {"isbin", LogicOp::IsBin}, {"and", LogicOp::And},
      {"or", LogicOp::Or},   {"xor", LogicOp::Xor}, {"eq", LogicOp::Eq},
      {"mux", LogicOp::Mux}, {"cmp", LogicOp::CmpStep}};
  auto it = table.find(t);
  if (it == table.end()) throw domain_error("parse_circuit: unknown logic op " + t);
  return it->second;
}

}  // namespace

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "width_in=" << c.input_width() << " width_out=" << c.output_width() << "\n";
  for (const auto& s : c.stages()) {
    switch (s.kind) {
      case Stage::Kind::Tau:
        out << "tau " << s.tau_i << "\n";
        break;
      case Stage::Kind::Gate: {
        std::string tok = gate_token(s.gen);
        if (s.gen.inverted) tok += "^-1";
        out << "gate " << tok << " low=" << s.gate_low << " width=" << s.gate_width << "\n";
        break;
      }
      case Stage::Kind::Logic: {
        out << "logic " << logic_token(s.op) << " at=";
        for (std::size_t i = 0; i < s.at.size(); ++i) out << (i ? "," : "") << s.at[i];
        if (s.at.empty()) out << "-";
        out << "\n";
        break;
      }
    }
  }
  return out.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Circuit> c;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head.rfind("width_in=", 0) == 0) {
      int w_in = std::stoi(head.substr(9));
      c.emplace(w_in);
      continue;
    }
    if (!c) throw domain_error("parse_circuit: missing width header");
    if (head == "tau") {
      int i;
      ls >> i;
      c->push(Stage::tau(i));
    } else if (head == "gate") {
      std::string tok, lowf, widthf;
      ls >> tok >> lowf >> widthf;
      bool inv = false;
      if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        inv = true;
        tok = tok.substr(0, tok.size() - 3);
      }
      GenWord w = parse_genword(tok);
      if (w.size() != 1 || w[0].lower_by || w[0].control)
        throw domain_error("parse_circuit: bad gate token");
      Generator g = w[0].gen;
      g.inverted = inv;
      if (lowf.rfind("low=", 0) != 0 || widthf.rfind("width=", 0) != 0)
        throw domain_error("parse_circuit: bad gate attributes");
      c->push(Stage::gate(g, std::stoi(lowf.substr(4)), std::stoi(widthf.substr(6))));
    } else if (head == "logic") {
      std::string tok, atf;
      ls >> tok >> atf;
      if (atf.rfind("at=", 0) != 0) throw domain_error("parse_circuit: bad logic attributes");
      std::vector<int> at;
      std::string list = atf.substr(3);
      if (list != "-") {
        std::istringstream as(list);
        std::string item;
        while (std::getline(as, item, ',')) at.push_back(std::stoi(item));
      }
      c->push(Stage::logic(logic_from_token(tok), std::move(at)));
    } else {
      throw domain_error("parse_circuit: unknown stage " + head);
    }
  }
  if (!c) throw domain_error("parse_circuit: empty input");
  return *c;
}

}  // namespace thg
