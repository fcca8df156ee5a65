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

// The signature-based QPKE scheme.
//
//   SKGen: (k, vk) <- Gen.
//   PKGen: r <- {0,1}^u; |psi_r> = |0>|Sign(k, 0||r)> + |1>|Sign(k, 1||r)> on (A, B).
//   Enc:   coherently write Ver(vk, alpha||r, beta) into D and measure D
//          (0 means reject, ct = bottom); apply Z^b on A; measure (A, B) in the
//          Hadamard basis to get d; ct = (r, d).
//   Dec:   b = d . (0||Sign(k, 0||r) xor 1||Sign(k, 1||r)).
//
// BaseScheme runs l independent copies for l-bit messages.

#ifndef QPKE_BASE_H_
#define QPKE_BASE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpke/bitstring.h"
#include "qpke/qsim.h"
#include "qpke/rng.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"

namespace qpke::base {

inline const std::string kRegA = "A";
inline const std::string kRegB = "B";
inline const std::string kRegD = "D";

struct BaseParams {
  primitives::SigParams sig = primitives::SigParams::toy();
  std::size_t u = 16;  ///< randomizer length
  /// When false, Enc skips the signature check. This is the strawman scheme
  /// that tampering breaks; it exists for attack demonstrations.
  bool verify = true;

  /// Toy signatures, u = 16.
  static BaseParams toy();
  /// Demo signatures (lambda_h = 128), u = 64.
  static BaseParams demo();
  /// Micro signatures, u = 16.
  static BaseParams micro();

  void validate() const;
  std::size_t branch_len() const { return 1 + sig.sig_len(); }
  /// Honest public-key layout (A:1, B:sig_len).
  qsim::RegisterLayout layout() const;
  std::string to_string() const;

  friend bool operator==(const BaseParams&, const BaseParams&) = default;
};

struct QuantumPublicKey {
  BitString r;
  qsim::SparseState state;
};

/// Either bottom or (r, d).
struct BaseCiphertext {
  bool present = false;
  BitString r;
  BitString d;

  static BaseCiphertext bottom() { return {}; }
  friend bool operator==(const BaseCiphertext&, const BaseCiphertext&) = default;
};

std::pair<primitives::SigningKey, BitString> base_skgen(const BitString& seed,
                                                        const BaseParams& params);

/// alpha || Sign(k, alpha || r): the basis string of branch alpha.
BitString branch_string(const primitives::SigningKey& sk, bool alpha, const BitString& r);

QuantumPublicKey base_pkgen(const primitives::SigningKey& sk, const BaseParams& params,
                            Rng& rng);
QuantumPublicKey base_pkgen_with_r(const primitives::SigningKey& sk, const BaseParams& params,
                                   const BitString& r);

/// Enc step 1. Returns the post-accept state (D removed), or nullopt when the
/// register widths are wrong or the D measurement rejects.
std::optional<qsim::SparseState> enc_check(const BitString& vk, const BaseParams& params,
                                           const BitString& r, const qsim::SparseState& state,
                                           Rng& rng);
/// Enc step 2: Z^b on A.
qsim::SparseState enc_phase(const qsim::SparseState& state, bool b);
/// Enc step 3: Hadamard measurement of (A, B). The returned state covers every
/// other register (the holder's side).
qsim::Measurement enc_measure(const qsim::SparseState& state, Rng& rng);

struct EncOutcome {
  BaseCiphertext ct;
  /// Post-measurement state on registers outside (A, B), when any exist.
  std::optional<qsim::SparseState> residual;
};

EncOutcome base_enc_full(const BitString& vk, const BaseParams& params, QuantumPublicKey pk,
                         bool b, Rng& rng);
BaseCiphertext base_enc(const BitString& vk, const BaseParams& params, QuantumPublicKey pk,
                        bool b, Rng& rng);
/// nullopt for bottom or a malformed ciphertext.
std::optional<bool> base_dec(const primitives::SigningKey& sk, const BaseParams& params,
                             const BaseCiphertext& ct);

/// tag byte (0x00 bottom, 0x01 present) | r | d, bits packed LSB-first.
Bytes serialize_base_ct(const BaseCiphertext& ct, const BaseParams& params);
/// Throws ParseError.
BaseCiphertext parse_base_ct(std::span<const std::uint8_t> bytes, const BaseParams& params);
void write_base_ct(ByteWriter& w, const BaseCiphertext& ct, const BaseParams& params);
BaseCiphertext read_base_ct(ByteReader& r, const BaseParams& params);

/// r, layout header and state dump, length-prefixed.
void write_quantum_pk(ByteWriter& w, const QuantumPublicKey& pk);
QuantumPublicKey read_quantum_pk(ByteReader& r);

/// l parallel copies of the base scheme with domain-separated keys.
class BaseScheme {
 public:
  using SecretKey = std::vector<primitives::SigningKey>;
  using VerificationKey = std::vector<BitString>;
  using PublicKey = std::vector<QuantumPublicKey>;
  using Ciphertext = std::vector<BaseCiphertext>;

  BaseScheme(BaseParams params, std::size_t message_bits);

  const BaseParams& params() const { return params_; }
  std::size_t message_bits() const { return ell_; }
  std::string name() const { return "base"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const;
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const;
  /// Throws std::invalid_argument if msg has the wrong length. A bundle of the
  /// wrong arity yields an all-bottom ciphertext.
  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg, Rng& rng) const;
  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const;

  Bytes serialize_ct(const Ciphertext& ct) const;
  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_vk(const VerificationKey& vk) const;
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_pk(const PublicKey& pk) const;
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const;

 private:
  BaseParams params_;
  std::size_t ell_;
};

}  // namespace qpke::base

#endif  // QPKE_BASE_H_
