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

#include "qpke/bitstring.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qpke {

namespace {

void require_same_size(const BitString& a, const BitString& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitString::from_string: bad character");
    }
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t n) {
  if (bytes.size() * 8 < n) {
    throw std::invalid_argument("BitString::from_bytes: not enough bytes");
  }
  BitString out(n);
  for (std::size_t i = 0; i < (n + 7) / 8; ++i) {
    out.words_[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
  }
  out.clear_tail();
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t n) {
  BitString out(n);
  if (n > 0) {
    out.words_[0] = value;
    out.clear_tail();
  }
  return out;
}

void BitString::clear_tail() {
  if (size_ % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

BitString& BitString::operator^=(const BitString& other) {
  require_same_size(*this, other, "BitString xor");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] ^= other.words_[i];
  }
  return *this;
}

bool BitString::dot(const BitString& other) const {
  require_same_size(*this, other, "BitString dot");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    acc ^= words_[i] & other.words_[i];
  }
  return std::popcount(acc) & 1;
}

bool BitString::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitString::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

BitString BitString::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > size_) {
    throw std::out_of_range("BitString::slice");
  }
  BitString out(len);
  const std::size_t shift = offset & 63;
  const std::size_t base = offset >> 6;
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    std::uint64_t lo = words_[base + i] >> shift;
    if (shift != 0 && base + i + 1 < words_.size()) {
      lo |= words_[base + i + 1] << (64 - shift);
    }
    out.words_[i] = lo;
  }
  out.clear_tail();
  return out;
}

void BitString::xor_at(std::size_t offset, const BitString& src) {
  if (offset + src.size_ > size_) {
    throw std::out_of_range("BitString::xor_at");
  }
  const std::size_t shift = offset & 63;
  const std::size_t base = offset >> 6;
  for (std::size_t i = 0; i < src.words_.size(); ++i) {
    const std::uint64_t w = src.words_[i];
    words_[base + i] ^= w << shift;
    if (shift != 0 && base + i + 1 < words_.size()) {
      words_[base + i + 1] ^= w >> (64 - shift);
    }
  }
}

void BitString::assign(std::size_t offset, const BitString& src) {
  if (offset + src.size_ > size_) {
    throw std::out_of_range("BitString::assign");
  }
  // Masked word writes; each source word lands in at most two target words.
  for (std::size_t i = 0; i < src.words_.size(); ++i) {
    const std::size_t n = std::min<std::size_t>(64, src.size_ - 64 * i);
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t v = src.words_[i] & mask;
    const std::size_t pos = offset + 64 * i;
    const std::size_t w = pos >> 6;
    const std::size_t shift = pos & 63;
    words_[w] = (words_[w] & ~(mask << shift)) | (v << shift);
    if (shift != 0 && shift + n > 64) {
      const std::uint64_t hi = mask >> (64 - shift);
      words_[w + 1] = (words_[w + 1] & ~hi) | (v >> (64 - shift));
    }
  }
}

BitString BitString::concat(const BitString& tail) const {
  BitString out = *this;
  out.append(tail);
  return out;
}

void BitString::append(const BitString& tail) {
  const std::size_t old = size_;
  size_ += tail.size_;
  words_.resize((size_ + 63) / 64, 0);
  xor_at(old, tail);
}

void BitString::push_back(bool bit) {
  ++size_;
  if (words_.size() * 64 < size_) {
    words_.push_back(0);
  }
  set(size_ - 1, bit);
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

Bytes BitString::to_bytes() const {
  Bytes out((size_ + 7) / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

std::string BitString::to_hex() const { return qpke::to_hex(to_bytes()); }

std::uint64_t BitString::to_uint() const { return words_.empty() ? 0 : words_[0]; }

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  const std::size_t common = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff != 0) {
      const int bit = std::countr_zero(diff);
      const std::size_t index = i * 64 + static_cast<std::size_t>(bit);
      if (index < a.size_ && index < b.size_) {
        return ((a.words_[i] >> bit) & 1) ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
      }
      break;
    }
  }
  return a.size_ <=> b.size_;
}

std::size_t BitString::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("from_hex: odd length");
  }
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: bad digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace qpke
