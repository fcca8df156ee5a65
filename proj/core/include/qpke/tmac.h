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

// Tokenized MAC from conjugate coding.
//
// The message is hashed to `blocks` bits. Block j of the token holds lambda_t
// qubits; qubit (j, i) is |v_ji> when theta_ji = 0 and H|v_ji> when
// theta_ji = 1. Signing measures block j in the basis named by hash bit j.
// Verification checks the positions whose basis matches that hash bit.

#ifndef QPKE_TMAC_H_
#define QPKE_TMAC_H_

#include <cstddef>
#include <vector>

#include "qpke/bitstring.h"
#include "qpke/qsim.h"
#include "qpke/rng.h"

namespace qpke::primitives {

struct TmacParams {
  std::size_t lambda_t = 16;  ///< qubits per block
  std::size_t blocks = 16;    ///< hash bits

  std::size_t qubits() const { return lambda_t * blocks; }
  void validate() const;
  friend bool operator==(const TmacParams&, const TmacParams&) = default;
};

struct TmacKey {
  TmacParams params;
  BitString theta;   ///< basis bit per qubit, index j * lambda_t + i
  BitString values;  ///< encoded bit per qubit
};

/// A signing token: one single-qubit state (register "q") per position. The
/// product is kept factored because its joint support grows as 2^(#theta=1).
class TmacToken {
 public:
  TmacToken(TmacParams params, std::vector<qsim::SparseState> qubits);

  const TmacParams& params() const { return params_; }
  bool consumed() const { return consumed_; }
  /// Throws std::logic_error once consumed.
  const std::vector<qsim::SparseState>& qubits() const;
  /// Hands the qubits to the holder and marks the token consumed.
  std::vector<qsim::SparseState> take();
  /// Tensor product over registers q0, q1, ... Throws qsim::CapacityError for
  /// more than 12 qubits.
  qsim::SparseState joint_state() const;

 private:
  TmacParams params_;
  std::vector<qsim::SparseState> qubits_;
  bool consumed_ = false;
};

TmacKey tmac_keygen(const BitString& seed, const TmacParams& params);
TmacToken tmac_token(const TmacKey& key);
/// The `blocks`-bit digest that selects measurement bases.
BitString tmac_hash(const BitString& msg, const TmacParams& params);
/// Measures one token qubit in the computational (false) or Hadamard (true) basis.
bool tmac_measure_qubit(const qsim::SparseState& qubit, bool hadamard, Rng& rng);
/// Consumes the token. Throws std::logic_error if it was already consumed.
BitString tmac_sign(TmacToken& token, const BitString& msg, Rng& rng);
bool tmac_verify(const TmacKey& key, const BitString& msg, const BitString& sig);

}  // namespace qpke::primitives

#endif  // QPKE_TMAC_H_
