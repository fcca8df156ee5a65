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

// Pure-state public-key variant: one public key state covers every r,
//
//   |pk> = sum over r, b of |r>_R |b>_A |y(b,r)>_B |sigma(b,r)>_C,
//
// with y(b,r) = PRF_K(b||r) and sigma(b,r) = Sign(k, b||r||y(b,r)). Enc
// checks the signature coherently into E, applies Z^b on A, measures R in
// the computational basis (collapsing to the two branches for r), and
// measures (A, B, C) in the Hadamard basis to get d.

#ifndef QPKE_PURE_H_
#define QPKE_PURE_H_

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

namespace qpke::pure {

inline const std::string kRegR = "R";
inline const std::string kRegA = "A";
inline const std::string kRegB = "B";
inline const std::string kRegC = "C";
inline const std::string kRegE = "E";

struct PureParams {
  std::size_t u = 4;   ///< randomizer bits; the key has 2^(u+1) branches
  std::size_t v = 32;  ///< PRF tag bits
  /// Nominal security budget. Recorded only; the intended relation
  /// u = floor(log2(T) / 2) is not enforced at this scale.
  double t_budget = 0.0;
  primitives::SigParams sig = primitives::SigParams::micro();

  /// Throws std::invalid_argument unless 1 <= u <= 8, 1 <= v <= 256, and the
  /// branch count fits the default support cap.
  void validate() const;
  std::size_t branches() const { return std::size_t{2} << u; }
  std::size_t measured_len() const { return 1 + v + sig.sig_len(); }
  qsim::RegisterLayout layout() const;
  std::string to_string() const;
  friend bool operator==(const PureParams&, const PureParams&) = default;
};

struct PureSecretKey {
  primitives::SigningKey k;
  BitString prf_key;
};

struct PureCiphertext {
  bool present = false;
  BitString r;
  BitString d;

  static PureCiphertext bottom() { return {}; }
  friend bool operator==(const PureCiphertext&, const PureCiphertext&) = default;
};

std::pair<PureSecretKey, BitString> pure_skgen(const BitString& seed, const PureParams& params);

BitString pure_tag(const PureSecretKey& sk, const PureParams& params, bool b, const BitString& r);
/// b || y(b,r) || sigma(b,r): the (A, B, C) contents of branch (b, r).
BitString pure_branch(const PureSecretKey& sk, const PureParams& params, bool b,
                      const BitString& r);

/// Throws qsim::CapacityError if 2^(u+1) exceeds the support cap.
qsim::SparseState pure_pkgen(const PureSecretKey& sk, const PureParams& params);

/// Enc step 1: coherent check into E, measure E, drop E. nullopt on reject or
/// when the registers do not match the params.
std::optional<qsim::SparseState> pure_enc_check(const BitString& vk, const PureParams& params,
                                                const qsim::SparseState& state, Rng& rng);
/// Measures R and removes it. Returns r and the state over (A, B, C) and any
/// extra registers.
std::pair<BitString, qsim::SparseState> pure_collapse(const qsim::SparseState& state, Rng& rng);

PureCiphertext pure_enc(const BitString& vk, const PureParams& params,
                        const qsim::SparseState& state, bool b, Rng& rng);
std::optional<bool> pure_dec(const PureSecretKey& sk, const PureParams& params,
                             const PureCiphertext& ct);

void write_pure_ct(ByteWriter& w, const PureCiphertext& ct, const PureParams& params);
PureCiphertext read_pure_ct(ByteReader& r, const PureParams& params);

/// l parallel pure-variant instances.
class PureScheme {
 public:
  using SecretKey = std::vector<PureSecretKey>;
  using VerificationKey = std::vector<BitString>;
  using PublicKey = std::vector<qsim::SparseState>;
  using Ciphertext = std::vector<PureCiphertext>;

  PureScheme(PureParams params, std::size_t message_bits);

  const PureParams& params() const { return params_; }
  std::size_t message_bits() const { return ell_; }
  std::string name() const { return "pure"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const;
  /// Deterministic; `rng` is unused because the key state is pure.
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const;
  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg, Rng& rng) const;
  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const;

  Bytes serialize_ct(const Ciphertext& ct) const;
  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_vk(const VerificationKey& vk) const;
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_pk(const PublicKey& pk) const;
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const;

 private:
  PureParams params_;
  std::size_t ell_;
};

/// XOR-shares each message bit across several pure instances with their own
/// randomizer lengths (one instance per entry of `us`). Off unless chosen
/// explicitly.
class PureSharedScheme {
 public:
  using SecretKey = std::vector<PureScheme::SecretKey>;
  using VerificationKey = std::vector<PureScheme::VerificationKey>;
  using PublicKey = std::vector<PureScheme::PublicKey>;
  using Ciphertext = std::vector<PureScheme::Ciphertext>;

  PureSharedScheme(PureParams base, std::vector<std::size_t> us, std::size_t message_bits);

  std::size_t message_bits() const { return ell_; }
  std::size_t instances() const { return parts_.size(); }
  std::string name() const { return "pure-shared"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const;
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const;
  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg, Rng& rng) const;
  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const;

  Bytes serialize_ct(const Ciphertext& ct) const;
  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_vk(const VerificationKey& vk) const;
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const;
  Bytes serialize_pk(const PublicKey& pk) const;
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const;

 private:
  std::vector<PureScheme> parts_;
  std::size_t ell_;
};

enum class FindBothStrategy {
  /// Measure every copy in the computational basis; succeed when two copies
  /// share r with different b.
  kMeasureAll,
  /// Measure half the copies computationally; the other half get R measured
  /// and (A, B, C) measured in the Hadamard basis, which reveals no tag.
  kBasisSplit,
};

struct FindBothReport {
  std::size_t copies = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  /// (2m+1)^4 (2^-u + 2^-v); values above 1 are vacuous.
  double bound = 0.0;
};

/// Success rate of outputting (r, y(0,r), y(1,r)) from m copies of the key.
FindBothReport cannot_find_both_trial(const PureParams& params, std::size_t copies,
                                      FindBothStrategy strategy, std::size_t trials,
                                      std::uint64_t seed);

}  // namespace qpke::pure

#endif  // QPKE_PURE_H_
