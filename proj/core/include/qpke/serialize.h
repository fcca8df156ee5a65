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

// Length-prefixed binary encoding shared by keys, signatures and ciphertexts.
// Lengths are 32-bit little-endian. A bit string is written as its bit length
// followed by its packed bytes.

#ifndef QPKE_SERIALIZE_H_
#define QPKE_SERIALIZE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qpke/bitstring.h"

namespace qpke {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ByteWriter {
 public:
  void put_u8(std::uint8_t v) { out_.push_back(v); }
  void put_u32(std::uint32_t v);
  /// Length-prefixed raw bytes.
  void put_bytes(std::span<const std::uint8_t> bytes);
  /// Bit length, then packed bytes.
  void put_bits(const BitString& bits);
  /// Packed bytes only; the reader must know the length.
  void put_fixed_bits(const BitString& bits);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

/// Reads the encoding produced by ByteWriter. Every getter throws ParseError
/// on truncated or malformed input.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t get_u8();
  std::uint32_t get_u32();
  Bytes get_bytes();
  BitString get_bits();
  /// Bit string with a known length.
  BitString get_bits_exact(std::size_t n);
  BitString get_fixed_bits(std::size_t n);

  bool done() const { return pos_ == in_.size(); }
  /// Throws ParseError unless every byte was consumed.
  void expect_done() const;

 private:
  std::span<const std::uint8_t> take(std::size_t n);

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace qpke

#endif  // QPKE_SERIALIZE_H_
