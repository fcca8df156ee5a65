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

// Symmetric encryption from the PRF in counter mode.
//
// cpa: iv | msg xor stream(K, iv)
// cca: iv | msg xor stream(K_enc, iv) | tag, with tag = PRF(K_mac, iv | body)
// and K_enc, K_mac derived from K.

#ifndef QPKE_SKE_H_
#define QPKE_SKE_H_

#include <cstddef>
#include <optional>

#include "qpke/bitstring.h"
#include "qpke/rng.h"

namespace qpke::primitives {

inline constexpr std::size_t kSkeKeyBits = 128;
inline constexpr std::size_t kSkeIvBits = 128;
inline constexpr std::size_t kSkeTagBits = 128;

enum class SkeMode { kCpa, kCca };

BitString ske_keygen(Rng& rng);
std::size_t ske_ct_len(std::size_t msg_bits, SkeMode mode);

/// Fresh random IV.
BitString ske_enc(const BitString& key, const BitString& msg, SkeMode mode, Rng& rng);
/// Caller-chosen IV; deterministic.
BitString ske_enc_with_iv(const BitString& key, const BitString& iv, const BitString& msg,
                          SkeMode mode);
/// nullopt on a malformed ciphertext or (cca) a bad tag.
std::optional<BitString> ske_dec(const BitString& key, const BitString& ct, SkeMode mode);

}  // namespace qpke::primitives

#endif  // QPKE_SKE_H_
