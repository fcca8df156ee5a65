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

// The interface every encryption layer exposes, and small helpers shared by
// the layered constructions.

#ifndef QPKE_SCHEME_H_
#define QPKE_SCHEME_H_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "qpke/bitstring.h"
#include "qpke/rng.h"

namespace qpke {

/// A QPKE scheme: classical secret and verification keys, public keys that
/// may hold quantum state, classical ciphertexts. `dec` returns nullopt for
/// bottom. Public keys are passed to `enc` by value because encryption
/// consumes them.
template <typename S>
concept QpkeScheme = requires(const S& s, const typename S::SecretKey& sk,
                              const typename S::VerificationKey& vk, typename S::PublicKey pk,
                              const typename S::Ciphertext& ct, const BitString& bits,
                              Rng& rng, std::span<const std::uint8_t> bytes) {
  { s.message_bits() } -> std::convertible_to<std::size_t>;
  { s.name() } -> std::convertible_to<std::string>;
  {
    s.skgen(bits)
  } -> std::same_as<std::pair<typename S::SecretKey, typename S::VerificationKey>>;
  { s.pkgen(sk, rng) } -> std::same_as<typename S::PublicKey>;
  { s.enc(vk, std::move(pk), bits, rng) } -> std::same_as<typename S::Ciphertext>;
  { s.dec(sk, ct) } -> std::same_as<std::optional<BitString>>;
  { s.serialize_ct(ct) } -> std::same_as<Bytes>;
  { s.parse_ct(bytes) } -> std::same_as<typename S::Ciphertext>;
  { s.serialize_vk(vk) } -> std::same_as<Bytes>;
  { s.parse_vk(bytes) } -> std::same_as<typename S::VerificationKey>;
  { s.serialize_pk(pk) } -> std::same_as<Bytes>;
  { s.parse_pk(bytes) } -> std::same_as<typename S::PublicKey>;
};

/// Bytes as a bit string (8 bits per byte, LSB first).
inline BitString bits_of(std::span<const std::uint8_t> bytes) {
  return BitString::from_bytes(bytes, bytes.size() * 8);
}

/// Seed for sub-instance `index` of a composite key, domain-separated by `tag`.
BitString derive_seed(std::string_view tag, const BitString& seed, std::uint64_t index);

}  // namespace qpke

#endif  // QPKE_SCHEME_H_
