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

// Stateless hash-tree signatures: a binary certification tree of Lamport
// one-time keys, every key derived from the signing key, with the leaf picked
// by hashing the message. Signing is deterministic, which lets the scheme run
// inside coherent oracles.
//
// Signature layout (bits):
//   leaf index (depth) |
//   for each level 0..depth-1: sibling commitment (lambda_h) | OTS (2 lambda_h^2) |
//   leaf OTS over the message digest (2 lambda_h^2)
// A node's OTS signs the hash of its two children's commitments, so each
// one-time key only ever signs one message.

#ifndef QPKE_SIGNATURE_H_
#define QPKE_SIGNATURE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "qpke/bitstring.h"

namespace qpke::primitives {

/// Bit length of signing keys (the PRF key every node key is derived from).
inline constexpr std::size_t kSigKeyBits = 128;

struct SigParams {
  std::size_t lambda_h = 128;  ///< hash output and OTS digest length
  std::size_t depth = 24;      ///< tree depth; leaf index length

  /// lambda_h 32, depth 16.
  static SigParams toy();
  /// lambda_h 128, depth 24.
  static SigParams demo();
  /// lambda_h 16, depth 4. Keeps deep transform stacks tractable.
  static SigParams micro();
  /// lambda_h 16, depth 0: a single one-time key, for ephemeral keys that
  /// sign exactly one message.
  static SigParams one_time();

  /// Throws std::invalid_argument unless lambda_h is a positive multiple of 8
  /// and depth <= 32. Depth 0 is a bare one-time signature.
  void validate() const;
  std::size_t sig_len() const { return depth + depth * (lambda_h + ots_len()) + ots_len(); }
  std::size_t vk_len() const { return lambda_h; }
  std::size_t ots_len() const { return 2 * lambda_h * lambda_h; }

  std::string to_string() const;
  friend bool operator==(const SigParams&, const SigParams&) = default;
};

/// Signing key k plus a bounded cache of derived node keys. Copies share the
/// cache; the cache is internally synchronized.
class SigningKey {
 public:
  SigningKey(BitString k, SigParams params);

  const BitString& k() const { return k_; }
  const SigParams& params() const { return params_; }

  struct NodeKeys;
  std::shared_ptr<const NodeKeys> node(std::size_t level, const BitString& path) const;

  friend bool operator==(const SigningKey& a, const SigningKey& b) {
    return a.k_ == b.k_ && a.params_ == b.params_;
  }

 private:
  struct Cache;
  BitString k_;
  SigParams params_;
  std::shared_ptr<Cache> cache_;
};

struct SigKeyPair {
  SigningKey sk;
  BitString vk;
};

/// Deterministic in (seed, params). The seed may have any length.
SigKeyPair sig_gen(const BitString& seed, const SigParams& params);
/// vk for an existing signing key.
BitString sig_vk(const SigningKey& sk);
/// Deterministic; always params.sig_len() bits.
BitString sig_sign(const SigningKey& sk, const BitString& msg);
/// Pure. Any length mismatch is a rejection.
bool sig_verify(const BitString& vk, const BitString& msg, const BitString& sig,
                const SigParams& params);

/// Leaf index selected for a message.
BitString sig_leaf_index(const BitString& msg, const SigParams& params);

}  // namespace qpke::primitives

#endif  // QPKE_SIGNATURE_H_
