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

#include "qpke/tmac.h"

#include <cmath>
#include <stdexcept>

#include "qpke/hash.h"

namespace qpke::primitives {

namespace {

const std::vector<std::string>& qubit_register() {
  static const std::vector<std::string> kQ{"q"};
  return kQ;
}

}  // namespace

void TmacParams::validate() const {
  if (lambda_t == 0 || blocks == 0) {
    throw std::invalid_argument("TmacParams: lambda_t and blocks must be positive");
  }
}

TmacToken::TmacToken(TmacParams params, std::vector<qsim::SparseState> qubits)
    : params_(params), qubits_(std::move(qubits)) {
  if (qubits_.size() != params_.qubits()) {
    throw std::invalid_argument("TmacToken: qubit count mismatch");
  }
}

const std::vector<qsim::SparseState>& TmacToken::qubits() const {
  if (consumed_) throw std::logic_error("TmacToken: token already consumed");
  return qubits_;
}

std::vector<qsim::SparseState> TmacToken::take() {
  if (consumed_) throw std::logic_error("TmacToken: token already consumed");
  consumed_ = true;
  return std::move(qubits_);
}

qsim::SparseState TmacToken::joint_state() const {
  const auto& qs = qubits();
  if (qs.size() > 12) throw qsim::CapacityError("TmacToken: joint state over 12 qubits");
  qsim::RegisterLayout first{{"q0", 1}};
  auto joint = qsim::SparseState::from_terms(first, qs[0].terms());
  for (std::size_t i = 1; i < qs.size(); ++i) {
    qsim::RegisterLayout l{{"q" + std::to_string(i), 1}};
    joint = qsim::tensor(
        joint, qsim::SparseState::from_terms(l, qs[i].terms()));
  }
  return joint;
}

TmacKey tmac_keygen(const BitString& seed, const TmacParams& params) {
  params.validate();
  return TmacKey{params, prf_eval(seed, "qpke.tmac.theta", {}, params.qubits()),
                 prf_eval(seed, "qpke.tmac.values", {}, params.qubits())};
}

TmacToken tmac_token(const TmacKey& key) {
  const qsim::RegisterLayout layout{{"q", 1}};
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<qsim::SparseState> qubits;
  qubits.reserve(key.params.qubits());
  for (std::size_t i = 0; i < key.params.qubits(); ++i) {
    const bool v = key.values.get(i);
    if (!key.theta.get(i)) {
      qubits.push_back(qsim::make_basis_state(layout, BitString::from_uint(v, 1)));
    } else {
      const std::vector<std::pair<BitString, qsim::Amplitude>> terms{
          {BitString::from_uint(0, 1), s}, {BitString::from_uint(1, 1), v ? -s : s}};
      qubits.push_back(qsim::superpose(layout, terms));
    }
  }
  return TmacToken(key.params, std::move(qubits));
}

BitString tmac_hash(const BitString& msg, const TmacParams& params) {
  return hash("qpke.tmac.msg", msg, params.blocks);
}

bool tmac_measure_qubit(const qsim::SparseState& qubit, bool hadamard, Rng& rng) {
  const auto m = hadamard ? qsim::measure_hadamard_all(qubit, qubit_register(), rng)
                          : qsim::measure_computational(qubit, qubit_register(), rng);
  return m.outcome.get(0);
}

BitString tmac_sign(TmacToken& token, const BitString& msg, Rng& rng) {
  const TmacParams params = token.params();
  const auto qubits = token.take();
  const BitString h = tmac_hash(msg, params);
  BitString sig(params.qubits());
  for (std::size_t j = 0; j < params.blocks; ++j) {
    for (std::size_t i = 0; i < params.lambda_t; ++i) {
      const std::size_t idx = j * params.lambda_t + i;
      sig.set(idx, tmac_measure_qubit(qubits[idx], h.get(j), rng));
    }
  }
  return sig;
}

bool tmac_verify(const TmacKey& key, const BitString& msg, const BitString& sig) {
  const TmacParams& params = key.params;
  if (sig.size() != params.qubits()) return false;
  const BitString h = tmac_hash(msg, params);
  for (std::size_t j = 0; j < params.blocks; ++j) {
    for (std::size_t i = 0; i < params.lambda_t; ++i) {
      const std::size_t idx = j * params.lambda_t + i;
      if (key.theta.get(idx) == h.get(j) && sig.get(idx) != key.values.get(idx)) return false;
    }
  }
  return true;
}

}  // namespace qpke::primitives
