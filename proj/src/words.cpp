#include "thg/words.hpp"

#include <algorithm>
#include <cstring>

namespace thg {

Ordering dict_compare(const Word& u, const Word& v) {
  if (u == v) return Ordering::Equal;
  return u < v ? Ordering::Less : Ordering::Greater;
}

bool is_prefix(const Word& u, const Word& v) {
  return u.size() <= v.size() && std::memcmp(u.data(), v.data(), u.size()) == 0;
}

bool is_strict_prefix(const Word& u, const Word& v) {
  return u.size() < v.size() && is_prefix(u, v);
}

bool valid_word(const Word& w, int k) {
  for (unsigned char c : w)
    if (c >= static_cast<unsigned>(k)) return false;
  return true;
}

Word parse_word(const std::string& text, int k) {
  if (text == "-") return Word{};
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    int letter;
    if (c >= '0' && c <= '9') letter = c - '0';
    else if (k == 2 && (c == 'a' || c == 'b')) letter = c - 'a';
    else throw domain_error(std::string("parse_word: bad letter '") + c + "'");
    if (letter >= k) throw domain_error("parse_word: letter out of range for alphabet");
    w.push_back(static_cast<char>(letter));
  }
  return w;
}

std::string print_word(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  s.reserve(w.size());
  for (unsigned char c : w) s.push_back(static_cast<char>('0' + c));
  return s;
}

std::string print_word_ab(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (unsigned char c : w) s.push_back(static_cast<char>('a' + c));
  return s;
}

PrefixCode::PrefixCode(std::vector<Word> words, int k) : words_(std::move(words)), k_(k) {
  if (k_ < 2) throw domain_error("PrefixCode: arity must be >= 2");
  std::sort(words_.begin(), words_.end());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!valid_word(words_[i], k_)) throw domain_error("PrefixCode: letter out of range");
    if (i + 1 < words_.size()) {
      if (words_[i] == words_[i + 1]) throw domain_error("PrefixCode: duplicate word");
      // Sorted order puts a prefix immediately before its extensions.
      if (is_prefix(words_[i], words_[i + 1]))
        throw domain_error("PrefixCode: " + print_word(words_[i]) + " is a prefix of " +
                           print_word(words_[i + 1]));
    }
  }
  if (words_.empty()) throw domain_error("PrefixCode: empty");
}

std::size_t PrefixCode::max_len() const {
  std::size_t m = 0;
  for (const auto& w : words_) m = std::max(m, w.size());
  return m;
}

std::size_t PrefixCode::min_len() const {
  std::size_t m = words_.empty() ? 0 : words_[0].size();
  for (const auto& w : words_) m = std::min(m, w.size());
  return m;
}

bool PrefixCode::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

bool is_maximal_prefix_code(const PrefixCode& p) {
  // Sum of k^(L-|w|) must equal k^L where L is the longest word length.
  const std::size_t L = p.max_len();
  const int k = p.k();
  if (L > 62) throw domain_error("is_maximal_prefix_code: words too long for exact check");
  unsigned __int128 total = 0;
  unsigned __int128 full = 1;
  for (std::size_t i = 0; i < L; ++i) full *= static_cast<unsigned>(k);
  for (const auto& w : p.words()) {
    unsigned __int128 part = 1;
    for (std::size_t i = w.size(); i < L; ++i) part *= static_cast<unsigned>(k);
    total += part;
    if (total > full) return false;
  }
  return total == full;
}

int rank_in_code(const PrefixCode& p, const Word& x) {
  auto it = std::lower_bound(p.words().begin(), p.words().end(), x);
  if (it == p.words().end() || *it != x) throw domain_error("NotInCode: " + print_word(x));
  return static_cast<int>(it - p.words().begin());
}

Word unrank(const PrefixCode& p, std::size_t i) {
  if (i >= p.size()) throw domain_error("OutOfRange: unrank index");
  return p.at(i);
}

std::vector<Word> all_words_of_length(int k, int n) {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(k);
  std::vector<Word> out;
  out.reserve(count);
  Word w(static_cast<std::size_t>(n), '\0');
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<char>(k - 1)) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

PrefixCode expand_level(const PrefixCode& p, int n) {
  if (n < 0) throw domain_error("expand_level: negative level");
  if (n == 0) return p;
  auto suffixes = all_words_of_length(p.k(), n);
  std::vector<Word> out;
  out.reserve(p.size() * suffixes.size());
  for (const auto& w : p.words())
    for (const auto& s : suffixes) out.push_back(w + s);
  return PrefixCode(std::move(out), p.k());
}

PrefixCode level_code(int k, int n) {
  if (n == 0) return PrefixCode({Word{}}, k);
  return PrefixCode(all_words_of_length(k, n), k);
}

PrefixCode join_codes(const PrefixCode& a, const PrefixCode& b) {
  if (a.k() != b.k()) throw domain_error("join_codes: alphabet mismatch");
  std::vector<Word> all = a.words();
  all.insert(all.end(), b.words().begin(), b.words().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<Word> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool strict = i + 1 < all.size() && is_prefix(all[i], all[i + 1]);
    if (!strict) out.push_back(all[i]);
  }
  return PrefixCode(std::move(out), a.k());
}

int find_prefix_in_code(const PrefixCode& p, const Word& w) {
  // The candidate prefix is the last code word <= w in dict order.
  auto it = std::upper_bound(p.words().begin(), p.words().end(), w);
  if (it == p.words().begin()) return -1;
  --it;
  if (is_prefix(*it, w)) return static_cast<int>(it - p.words().begin());
  return -1;
}

PrefixCode parse_code(const std::string& text, int k) {
  std::vector<Word> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    words.push_back(parse_word(line.substr(start), k));
  }
  return PrefixCode(std::move(words), k);
}

std::string print_code(const PrefixCode& p) {
  std::string out;
  for (const auto& w : p.words()) {
    out += print_word(w);
    out += '\n';
  }
  return out;
}

}  // namespace thg
