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

// Sponge hash over a 256-bit state with a 128-bit rate. The permutation and
// the input encoding are written out in docs/hash.md.

#ifndef QPKE_HASH_H_
#define QPKE_HASH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "qpke/bitstring.h"

namespace qpke::primitives {

class Sponge {
 public:
  static constexpr std::size_t kRateBytes = 16;

  /// Starts a sponge and absorbs the length-prefixed domain tag.
  explicit Sponge(std::string_view tag);

  void absorb(std::span<const std::uint8_t> bytes);
  void absorb_u64(std::uint64_t value);
  /// Bit length as a 64-bit word, then the packed bytes.
  void absorb_bits(const BitString& bits);
  /// Pads on the first call. Further calls continue the output stream.
  BitString squeeze(std::size_t out_bits);

  static void permute(std::array<std::uint64_t, 4>& state);

 private:
  void absorb_block(const std::uint8_t* block);

  std::array<std::uint64_t, 4> state_;
  std::array<std::uint8_t, kRateBytes> buf_{};
  std::size_t buf_len_ = 0;
  bool squeezing_ = false;
};

/// H_tag(msg), `out_bits` long.
BitString hash(std::string_view tag, const BitString& msg, std::size_t out_bits);
/// H_tag(key, msg): the key and the message are absorbed as two fields.
BitString keyed_hash(std::string_view tag, const BitString& key, const BitString& msg,
                     std::size_t out_bits);

/// PRF_K(x) = H_prf(K, x). Deterministic in (K, x, out_bits).
BitString prf_eval(const BitString& key, const BitString& input, std::size_t out_bits);
/// Convenience overload that domain-separates by a label ahead of `input`.
BitString prf_eval(const BitString& key, std::string_view label, const BitString& input,
                   std::size_t out_bits);

}  // namespace qpke::primitives

#endif  // QPKE_HASH_H_
