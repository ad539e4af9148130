#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabkit {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Word-level kernels shared by Bitset and BitMatrix rows. All spans have equal length.
namespace bits {

inline std::size_t popcount(std::span<const Word> a) {
  std::size_t n = 0;
  for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

inline bool any(std::span<const Word> a) {
  for (Word w : a)
    if (w) return true;
  return false;
}

inline void and_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

inline void andnot_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= ~src[i];
}

inline void or_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

inline std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

inline bool test(std::span<const Word> a, std::size_t i) { return (a[i / kWordBits] >> (i % kWordBits)) & 1U; }

inline void set(std::span<Word> a, std::size_t i) { a[i / kWordBits] |= Word{1} << (i % kWordBits); }

// Calls f(i) for every set bit in ascending order.
template <class F>
void for_each_set(std::span<const Word> a, F&& f) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    Word x = a[w];
    while (x) {
      f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

}  // namespace bits

/// Fixed-length bitset over dense indices, the storage unit for element sets and relation rows.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false)
      : size_(size), words_(words_for(size), value ? ~Word{0} : Word{0}) {
    trim();
  }

  static Bitset from_indices(std::size_t size, std::span<const std::size_t> indices);

  std::size_t size() const { return size_; }
  std::size_t count() const { return bits::popcount(words_); }
  bool any() const { return bits::any(words_); }
  bool none() const { return !any(); }

  bool test(std::size_t i) const { return bits::test(words_, i); }
  void set(std::size_t i, bool value = true) {
    if (value)
      words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    else
      words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void reset() { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  Bitset& operator&=(const Bitset& o) {
    bits::and_into(words_, o.words_);
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    bits::or_into(words_, o.words_);
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  Bitset& andnot(const Bitset& o) {
    bits::andnot_into(words_, o.words_);
    return *this;
  }
  Bitset operator~() const {
    Bitset r = *this;
    for (Word& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    bits::for_each_set(words_, [&](std::size_t i) { out.push_back(i); });
    return out;
  }

  // Lowercase hex; character i holds bits [4i, 4i+4) with bit 4i as the nibble's low bit.
  std::string to_hex() const;
  static Bitset from_hex(std::size_t size, std::string_view hex);

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void trim() {
    if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Lexicographic comparison of the ascending member lists.
bool member_lex_less(const Bitset& a, const Bitset& b);

/// Row-major bit matrix; each row padded to whole words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, Word{0}) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

  bool test(std::size_t r, std::size_t c) const { return bits::test(row(r), c); }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word m = Word{1} << (c % kWordBits);
    w = value ? (w | m) : (w & ~m);
  }
  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

  std::size_t count() const { return bits::popcount(data_); }

  Bitset row_bitset(std::size_t r) const {
    Bitset b(cols_);
    std::copy(row(r).begin(), row(r).end(), b.words().begin());
    return b;
  }

  std::span<Word> data() { return data_; }
  std::span<const Word> data() const { return data_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

}  // namespace stabkit
