// Copyright 2026 The qpke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPKE_BITSTRING_H_
#define QPKE_BITSTRING_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace qpke {

using Bytes = std::vector<std::uint8_t>;

/// Fixed-length string of bits.
///
/// Bit 0 is the leftmost bit when displayed. Storage packs bit j into word
/// j / 64 at position j % 64, which makes the little-endian byte image of the
/// words the documented wire packing (bit j in byte j / 8 at position j % 8,
/// LSB first). Unused high bits of the last word are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  /// Parses a string of '0' / '1' characters. Throws std::invalid_argument on
  /// any other character.
  static BitString from_string(std::string_view bits);
  /// Unpacks the first `n` bits of `bytes` (LSB-first within each byte).
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t n);
  /// The low `n` bits of `value`, bit 0 of the string = bit 0 of the value.
  static BitString from_uint(std::uint64_t value, std::size_t n);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// In-place XOR. Throws std::invalid_argument on length mismatch.
  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  /// GF(2) inner product. Throws std::invalid_argument on length mismatch.
  bool dot(const BitString& other) const;

  bool is_zero() const;
  std::size_t popcount() const;

  BitString slice(std::size_t offset, std::size_t len) const;
  /// Overwrites bits [offset, offset + src.size()) with `src`.
  void assign(std::size_t offset, const BitString& src);
  /// XORs `src` into bits [offset, offset + src.size()).
  void xor_at(std::size_t offset, const BitString& src);
  BitString concat(const BitString& tail) const;
  void append(const BitString& tail);
  void push_back(bool bit);

  std::string to_string() const;
  /// Packed bytes, ceil(size / 8) of them.
  Bytes to_bytes() const;
  std::string to_hex() const;
  /// Low 64 bits as an integer (bit 0 of the string is bit 0 of the value).
  std::uint64_t to_uint() const;

  std::span<const std::uint64_t> words() const { return {words_.data(), words_.size()}; }
  std::span<std::uint64_t> mutable_words() { return {words_.data(), words_.size()}; }

  friend bool operator==(const BitString& a, const BitString& b) = default;
  /// Lexicographic in display order ('0' < '1'); shorter strings first on a
  /// common prefix.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

  std::size_t hash() const;

 private:
  void clear_tail();

  std::size_t size_ = 0;
  // Two inline words cover every hash output and signature element.
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

}  // namespace qpke

#endif  // QPKE_BITSTRING_H_
