#include "partsep/bitvec.hpp"

#include <algorithm>
#include <bit>

namespace partsep {

BitVec::BitVec(std::size_t nbits, bool value)
    : nbits_(nbits), words_((nbits + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

void BitVec::clear_tail() {
  const std::size_t rem = nbits_ & 63;
  if (rem != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << rem) - 1;
  }
}

void BitVec::flip_all() {
  for (auto& w : words_) w = ~w;
  clear_tail();
}

std::size_t BitVec::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVec::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool BitVec::all() const { return count() == nbits_; }

bool BitVec::intersects(const BitVec& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool BitVec::is_subset_of(const BitVec& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
    if (words_[i] & ~o) return false;
  }
  return true;
}

BitVec& BitVec::operator|=(const BitVec& other) {
  for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  clear_tail();
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
  }
  return *this;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  clear_tail();
  return *this;
}

BitVec& BitVec::subtract(const BitVec& other) {
  for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool operator<(const BitVec& a, const BitVec& b) {
  if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff != 0) {
      const std::uint64_t low = diff & (~diff + 1);
      return (a.words_[i] & low) == 0;
    }
  }
  return false;
}

std::size_t BitVec::find_next(std::size_t from) const {
  if (from >= nbits_) return nbits_;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    if (++w >= words_.size()) return nbits_;
    word = words_[w];
  }
}

std::size_t BitVec::hash() const {
  std::size_t h = std::hash<std::size_t>{}(nbits_);
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string BitVec::to_string() const {
  std::string s(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

}  // namespace partsep
