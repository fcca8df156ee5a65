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


// Single-bit experiments over the base construction: IND-pkT-CPA and -CVA as
// defined, and the Hybrid 0/1/2 boxes used in its security argument.
//
// The challenger owns registers A and B of the state the adversary returns;
// every other register of that state stays with the adversary and comes back
// to it (post-measurement) alongside the ciphertext.

#ifndef QPKE_GAMES_BASE_GAME_H_
#define QPKE_GAMES_BASE_GAME_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpke/base.h"
#include "qpke/games/record.h"
#include "qpke/qsim.h"
#include "qpke/rng.h"
#include "qpke/signature.h"

namespace qpke::games {

struct TamperedKey {
  base::QuantumPublicKey pk;
  std::string description;
};

class BaseAdversary {
 public:
  virtual ~BaseAdversary() = default;

  virtual std::string name() const = 0;
  virtual std::unique_ptr<BaseAdversary> clone() const = 0;

  /// Sanity-ceiling adversaries ask for the signing key before the game starts.
  virtual bool wants_secret_key() const { return false; }
  virtual void receive_secret_key(const primitives::SigningKey&) {}

  virtual void receive_keys(const base::BaseParams& params, const BitString& vk,
                            std::vector<base::QuantumPublicKey> copies, Rng& rng) = 0;
  virtual TamperedKey tamper(Rng& rng) = 0;

  /// Final guess in the CPA/CVA games and Hybrid 0. `kept` is the adversary's
  /// side of the state after the challenger measured (A, B).
  virtual bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
                     const std::optional<qsim::SparseState>& kept, Rng& rng) = 0;

  /// Hybrid 1: the challenger hands back r and the unmeasured registers.
  virtual bool guess_from_registers(const BitString& r, const qsim::SparseState& state,
                                    Rng& rng);
  /// Hybrid 2: output (mu0, mu1). The default measures (A, B) and fills the
  /// missing signature with random bits.
  virtual std::pair<BitString, BitString> output_pair(const BitString& r,
                                                      const qsim::SparseState& state, Rng& rng);
};

/// Registry of the built-in adversaries by command-line name.
struct AdversaryInfo {
  std::string name;
  std::string summary;
};
const std::vector<AdversaryInfo>& base_adversaries();
/// Throws std::invalid_argument for an unknown name.
std::unique_ptr<BaseAdversary> make_base_adversary(const std::string& name);

class HonestForwarder : public BaseAdversary {
 public:
  std::string name() const override { return "honest"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  void receive_keys(const base::BaseParams& params, const BitString& vk,
                    std::vector<base::QuantumPublicKey> copies, Rng& rng) override;
  TamperedKey tamper(Rng& rng) override;
  bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
             const std::optional<qsim::SparseState>& kept, Rng& rng) override;

 protected:
  base::BaseParams params_;
  BitString vk_;
  std::vector<base::QuantumPublicKey> copies_;
};

/// Substitutes a key built from a fresh, self-generated signing key.
class KeySwapAttacker : public HonestForwarder {
 public:
  std::string name() const override { return "keyswap"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
  bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
             const std::optional<qsim::SparseState>& kept, Rng& rng) override;

 private:
  std::optional<primitives::SigningKey> own_;
};

/// Sends |0, s0> + |1, s1> for strings it chose, then decodes with them.
class KnownBranchAttacker : public HonestForwarder {
 public:
  std::string name() const override { return "known-branch"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
  bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
             const std::optional<qsim::SparseState>& kept, Rng& rng) override;

 private:
  BitString delta_;
};

/// Applies Z to register A of an honest copy.
class PhaseTamperer : public HonestForwarder {
 public:
  std::string name() const override { return "phase"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
};

/// Replaces the alpha = 1 branch of an honest copy with a random string.
class GarbageBranchTamperer : public HonestForwarder {
 public:
  std::string name() const override { return "garbage-branch"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
};

/// Copies A into a private register C before forwarding, then measures C in
/// the Hadamard basis and outputs that bit.
class EntangledForwarder : public HonestForwarder {
 public:
  static inline const std::string kRegC = "C";

  std::string name() const override { return "entangled"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
  bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
             const std::optional<qsim::SparseState>& kept, Rng& rng) override;
};

/// Measures copy 1 in the computational basis, forwards the collapsed branch
/// and keeps the signature it learned. Hybrid 2 output: that signature plus a
/// guess for the other one.
class MeasureAndCopy : public HonestForwarder {
 public:
  std::string name() const override { return "measure-copy"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  TamperedKey tamper(Rng& rng) override;
  std::pair<BitString, BitString> output_pair(const BitString& r, const qsim::SparseState& state,
                                              Rng& rng) override;

 private:
  bool alpha_ = false;
  BitString sig_;
};

/// Holds the signing key; wins every game it plays.
class SkOracle : public HonestForwarder {
 public:
  std::string name() const override { return "sk-oracle"; }
  std::unique_ptr<BaseAdversary> clone() const override;
  bool wants_secret_key() const override { return true; }
  void receive_secret_key(const primitives::SigningKey& sk) override { sk_ = sk; }
  bool guess(const base::BaseCiphertext& ct, std::optional<bool> cv,
             const std::optional<qsim::SparseState>& kept, Rng& rng) override;
  bool guess_from_registers(const BitString& r, const qsim::SparseState& state,
                            Rng& rng) override;
  std::pair<BitString, BitString> output_pair(const BitString& r, const qsim::SparseState& state,
                                              Rng& rng) override;

 private:
  std::optional<primitives::SigningKey> sk_;
};

/// Base-level tampering maps, reused by the multi-slot adversaries.
base::QuantumPublicKey phase_tamper(const base::QuantumPublicKey& pk);
base::QuantumPublicKey garbage_branch(const base::QuantumPublicKey& pk,
                                      const base::BaseParams& params, Rng& rng);

/// Runs a cpa, cva, hybrid0, hybrid1 or hybrid2 game against the base
/// construction. Throws std::invalid_argument for any other game id.
GameResult run_game(const GameSpec& spec, const base::BaseParams& params,
                    const BaseAdversary& adversary);
/// Hybrid 2 with the success rate of outputting both signatures.
GameResult run_hybrid2(GameSpec spec, const base::BaseParams& params,
                       const BaseAdversary& adversary);

/// Challenger step sequence for a game in which every check passes and no
/// oracle is queried; `rejected` gives the sequence after a signature reject.
std::vector<std::string> golden_base_steps(GameId game, bool rejected);

}  // namespace qpke::games

#endif  // QPKE_GAMES_BASE_GAME_H_
