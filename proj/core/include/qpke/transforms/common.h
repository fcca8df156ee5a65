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

#ifndef QPKE_TRANSFORMS_COMMON_H_
#define QPKE_TRANSFORMS_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpke/bitstring.h"
#include "qpke/rng.h"
#include "qpke/serialize.h"
#include "qpke/tmac.h"

namespace qpke::transforms {

/// Uniform k-subset of [0, n) as an n-bit mask (partial Fisher-Yates).
BitString choose_subset(std::size_t n, std::size_t k, Rng& rng);

/// Most frequent string; ties go to the lexicographically first one.
/// Throws std::invalid_argument on an empty input.
BitString majority(std::span<const BitString> votes);

/// Token parameters, consumed flag, then one state dump per qubit.
void write_token(ByteWriter& w, const primitives::TmacToken& token);
primitives::TmacToken read_token(ByteReader& r);

/// u32 count followed by one length-prefixed blob per element.
template <typename T, typename Encode>
void put_each(ByteWriter& w, const std::vector<T>& xs, Encode encode) {
  w.put_u32(static_cast<std::uint32_t>(xs.size()));
  for (const auto& x : xs) w.put_bytes(encode(x));
}

/// Inverse of put_each; the count must equal `expected`.
template <typename Decode>
auto get_each(ByteReader& r, std::size_t expected, Decode decode, const char* what) {
  const std::uint32_t n = r.get_u32();
  if (n != expected) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(expected) +
                     " elements, got " + std::to_string(n));
  }
  std::vector<decltype(decode(std::span<const std::uint8_t>{}))> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Bytes blob = r.get_bytes();
    out.push_back(decode(std::span<const std::uint8_t>(blob)));
  }
  return out;
}

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_COMMON_H_
