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

#include "qpke/serialize.h"

#include <limits>

namespace qpke {

void ByteWriter::put_u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("ByteWriter: field too long");
  }
  put_u32(static_cast<std::uint32_t>(bytes.size()));
  out_.insert(out_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::put_bits(const BitString& bits) {
  if (bits.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("ByteWriter: bit string too long");
  }
  put_u32(static_cast<std::uint32_t>(bits.size()));
  put_fixed_bits(bits);
}

void ByteWriter::put_fixed_bits(const BitString& bits) {
  const Bytes packed = bits.to_bytes();
  out_.insert(out_.end(), packed.begin(), packed.end());
}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
  if (n > in_.size() - pos_) throw ParseError("truncated input");
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::get_u8() { return take(1)[0]; }

std::uint32_t ByteReader::get_u32() {
  const auto b = take(4);
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

Bytes ByteReader::get_bytes() {
  const auto n = get_u32();
  const auto b = take(n);
  return Bytes(b.begin(), b.end());
}

BitString ByteReader::get_bits() { return get_fixed_bits(get_u32()); }

BitString ByteReader::get_bits_exact(std::size_t n) {
  const auto len = get_u32();
  if (len != n) throw ParseError("unexpected bit length");
  return get_fixed_bits(n);
}

BitString ByteReader::get_fixed_bits(std::size_t n) {
  const auto b = take((n + 7) / 8);
  BitString out = BitString::from_bytes(b, n);
  // Padding bits in the last byte must be zero for a canonical encoding.
  if (n % 8 != 0 && (b.back() >> (n % 8)) != 0) throw ParseError("non-canonical padding");
  return out;
}

void ByteReader::expect_done() const {
  if (!done()) throw ParseError("trailing bytes");
}

}  // namespace qpke
