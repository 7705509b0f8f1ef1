#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace partsep {

// Fixed-length bit vector packed into 64-bit words. Bits past size() are
// always zero so that word-wise equality and hashing are exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits, bool value = false);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void reset(std::size_t i) { set(i, false); }
  void flip_all();

  std::size_t count() const;
  bool any() const;
  bool none() const { return !any(); }
  bool all() const;

  bool intersects(const BitVec& other) const;
  bool is_subset_of(const BitVec& other) const;

  BitVec& operator|=(const BitVec& other);
  BitVec& operator&=(const BitVec& other);
  BitVec& operator^=(const BitVec& other);
  // this & ~other
  BitVec& subtract(const BitVec& other);

  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  BitVec operator~() const {
    BitVec r = *this;
    r.flip_all();
    return r;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }
  // Lexicographic by bit index 0, 1, ... (bit 0 most significant for ordering).
  friend bool operator<(const BitVec& a, const BitVec& b);

  // Index of first set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_first() const { return find_next(0); }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int b = __builtin_ctzll(word);
        f(w * 64 + static_cast<std::size_t>(b));
        word &= word - 1;
      }
    }
  }

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  // "0101..." with bit 0 first.
  std::string to_string() const;

 private:
  void clear_tail();

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace partsep
