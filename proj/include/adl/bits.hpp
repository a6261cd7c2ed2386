#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adl {

// Fixed-dimension bit vector packed into 64-bit words.  Doubles as the
// indicator representation of a coordinate set S subseteq [n]; CoordSet
// below names that use.  Unused high bits of the last word are kept zero,
// which lets count/equality/hash work straight off the words.
class BitVector {
public:
  BitVector() = default;

  explicit BitVector(int n) : n_(check_dim(n)), words_((n + 63) / 64, 0) {}

  // Leftmost character is coordinate 0.
  static BitVector from_string(const std::string& s) {
    BitVector v(static_cast<int>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(static_cast<int>(i), true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitVector::from_string: bad character");
      }
    }
    return v;
  }

  static BitVector from_indices(int n, const std::vector<int>& idx) {
    BitVector v(n);
    for (int i : idx) v.set(i, true);
    return v;
  }

  static BitVector all_ones(int n) {
    BitVector v(n);
    for (size_t w = 0; w < v.words_.size(); ++w) v.words_[w] = ~uint64_t{0};
    v.mask_tail();
    return v;
  }

  int dimension() const { return n_; }
  bool empty_dimension() const { return n_ == 0; }

  bool get(int i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(int i, bool v) {
    check_index(i);
    const uint64_t bit = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  // |this & m|; this is W_S(x) when m is the set S.
  int count_and(const BitVector& m) const {
    check_same(m);
    int c = 0;
    for (size_t w = 0; w < words_.size(); ++w)
      c += std::popcount(words_[w] & m.words_[w]);
    return c;
  }

  bool any_and(const BitVector& m) const {
    check_same(m);
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & m.words_[w]) return true;
    return false;
  }

  bool none() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const BitVector& b) const {
    check_same(b);
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~b.words_[w]) return false;
    return true;
  }

  BitVector and_with(const BitVector& b) const {
    check_same(b);
    BitVector r(n_);
    for (size_t w = 0; w < words_.size(); ++w)
      r.words_[w] = words_[w] & b.words_[w];
    return r;
  }

  BitVector or_with(const BitVector& b) const {
    check_same(b);
    BitVector r(n_);
    for (size_t w = 0; w < words_.size(); ++w)
      r.words_[w] = words_[w] | b.words_[w];
    return r;
  }

  // this \ b
  BitVector and_not(const BitVector& b) const {
    check_same(b);
    BitVector r(n_);
    for (size_t w = 0; w < words_.size(); ++w)
      r.words_[w] = words_[w] & ~b.words_[w];
    return r;
  }

  BitVector complement_set() const {
    BitVector r(n_);
    for (size_t w = 0; w < words_.size(); ++w) r.words_[w] = ~words_[w];
    r.mask_tail();
    return r;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(count()));
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        out.push_back(static_cast<int>(w) * 64 + b);
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s(static_cast<size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
      if (get(i)) s[static_cast<size_t>(i)] = '1';
    return s;
  }

  bool operator==(const BitVector& b) const {
    return n_ == b.n_ && words_ == b.words_;
  }
  bool operator!=(const BitVector& b) const { return !(*this == b); }

  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n_);
    for (uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  // Order on coordinate sets viewed as ascending index sequences
  // (sequence-lexicographic: {} < {0} < {0,1} < {0,2} < {1}).  Used for
  // deterministic argmin tie-breaking in enumeration.
  static bool lex_less(const BitVector& a, const BitVector& b) {
    a.check_same(b);
    size_t w = 0;
    for (; w < a.words_.size(); ++w)
      if (a.words_[w] != b.words_[w]) break;
    if (w == a.words_.size()) return false;  // equal
    const uint64_t diff = a.words_[w] ^ b.words_[w];
    const int bit = std::countr_zero(diff);
    const bool in_a = (a.words_[w] >> bit) & 1;
    // X = the set containing the first differing index, Y = the other.
    // If Y still has elements past that index, X's sequence is smaller at
    // that position; otherwise Y is a strict prefix of X and Y is smaller.
    const BitVector& y = in_a ? b : a;
    bool y_has_later = false;
    uint64_t high = y.words_[w] >> bit;
    high >>= 1;  // strictly above `bit` within this word (two shifts: bit may be 63)
    if (high) y_has_later = true;
    for (size_t v = w + 1; v < y.words_.size() && !y_has_later; ++v)
      if (y.words_[v]) y_has_later = true;
    const bool x_less = y_has_later;  // X < Y iff Y has a later element
    return in_a ? x_less : !x_less;
  }

private:
  static int check_dim(int n) {
    if (n < 0) throw std::invalid_argument("BitVector: negative dimension");
    return n;
  }
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("BitVector: index out of range");
  }
  void check_same(const BitVector& b) const {
    if (n_ != b.n_) throw std::invalid_argument("BitVector: dimension mismatch");
  }
  void mask_tail() {
    const int rem = n_ & 63;
    if (rem != 0 && !words_.empty())
      words_.back() &= (uint64_t{1} << rem) - 1;
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

using CoordSet = BitVector;

// Monotone disjunction f_S(x) = OR of x_i over i in S.
struct MonotoneDisjunction {
  CoordSet support;

  int eval(const BitVector& x) const { return x.any_and(support) ? 1 : 0; }
  int dimension() const { return support.dimension(); }
};

}  // namespace adl
