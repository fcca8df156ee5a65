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


// Fixed-size experiments around the security argument: the distinguish-to-
// extract adversary A'', the partial-measurement factor of Boneh and Zhandry,
// double-signing strategies against the tokenized MAC, and Hadamard-sample
// statistics of two-branch states.

#ifndef QPKE_GAMES_DEMOS_H_
#define QPKE_GAMES_DEMOS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qpke/base.h"
#include "qpke/games/record.h"
#include "qpke/qsim.h"
#include "qpke/rng.h"
#include "qpke/tmac.h"

namespace qpke::games {

// ---------------------------------------------------------------------------
// Extractor.
//
// A distinguisher is modelled as a 2x2 unitary V on span{|x0>, |x1>}, where
// x_alpha = alpha || Sign(k, alpha || r) || Psi_alpha, ordered (x0, x1). Its
// output bit is register A after V. W = V^dagger (Z (x) I) V is then diagonal
// Z conjugated by V on the same span.

/// Rotation-after-Hadamard distinguisher with advantage exactly `delta`.
/// Throws std::invalid_argument unless 0 <= delta <= 1.
Eigen::Matrix2cd distinguisher_with_advantage(double delta);
/// |Pr[A = 1 | b = 1] - Pr[A = 1 | b = 0]| after applying V to
/// (|x0> + (-1)^b |x1>) / sqrt(2).
double distinguishing_advantage(const Eigen::Matrix2cd& v);
/// W = V^dagger diag(1, -1) V.
Eigen::Matrix2cd swap_operator(const Eigen::Matrix2cd& v);

struct ExtractorReport {
  double delta = 0;
  Rate success;
  /// Exact success of A'' on the ideal state: |c0|^2 |<x1|W|x0>|^2.
  double exact = 0;
  /// Delta^2 / 4, the floor carried through the security argument.
  double floor = 0;
  Json to_json() const;
};

/// Runs Hybrid 2 with A'' built from V. Each trial draws a key and r, lets the
/// challenger check and phase the honest state (with Psi_alpha = |alpha> on a
/// private register C), then A'' measures A (abort on 1), reads mu0 from B,
/// applies W and reads mu1 from B. Throws std::invalid_argument if V is not
/// unitary.
ExtractorReport extractor_demo(const Eigen::Matrix2cd& v, std::size_t trials, std::uint64_t seed,
                               const base::BaseParams& params = base::BaseParams::micro());

// ---------------------------------------------------------------------------
// Partial-measurement factor.

struct BzInstance {
  qsim::SparseState state;
  BitString target;
  /// Remainder of the algorithm from the pause point; returns its output.
  std::function<BitString(const qsim::SparseState&, Rng&)> resume;
};

struct BzCircuit {
  std::string name;
  /// Registers measured in the computational basis at the pause point.
  std::vector<std::string> measured;
  std::function<BzInstance(Rng&)> prepare;
};

struct BzReport {
  std::string name;
  std::size_t k = 0;
  Rate plain;
  Rate paused;

  /// Pr' / Pr; NaN when Pr is zero.
  double ratio() const;
  double bound() const { return k == 0 ? 0.0 : 1.0 / double(k); }
  Json to_json() const;
};

/// Estimates Pr[output = target] without and with the inserted measurement.
/// k is 2 to the total width of the measured registers.
BzReport bz_factor_check(const BzCircuit& circuit, std::size_t trials, std::uint64_t seed);

/// The extractor pipeline of extractor_demo; the pause point is the moment
/// the challenger hands (A, B) over. Default measurement: register A (k = 2);
/// {"A", "C"} gives k = 4.
BzCircuit extractor_pipeline(const Eigen::Matrix2cd& v,
                             std::vector<std::string> measured = {base::kRegA},
                             const base::BaseParams& params = base::BaseParams::micro());
/// |+>^w followed by a Hadamard-basis measurement; target 0^w. The inserted
/// measurement makes the output uniform, so the ratio is exactly 2^-w.
BzCircuit hadamard_pipeline(std::size_t width);
/// A random computational basis state read out directly; the ratio is 1.
BzCircuit classical_pipeline(std::size_t width);

// ---------------------------------------------------------------------------
// Tokenized MAC double-signing.

enum class DoubleSignStrategy {
  /// Sign msg1 honestly and reuse the outcomes for msg2.
  kMeasureOneBasis,
  /// Sign msg1 honestly and guess the values msg2 needs where the hashes differ.
  kGuessOtherBasis,
  /// Measure every qubit in a uniformly random basis and submit the outcomes
  /// for both messages.
  kRandomBasis,
  /// Measure the differing blocks in the basis halfway between Z and X.
  kIntermediateBasis,
};

const char* to_string(DoubleSignStrategy s);
std::optional<DoubleSignStrategy> parse_double_sign_strategy(std::string_view text);
const std::vector<DoubleSignStrategy>& all_double_sign_strategies();

/// Two messages whose MAC hashes differ in exactly one position.
std::pair<BitString, BitString> tmac_hamming1_pair(const primitives::TmacParams& params, Rng& rng);

/// Exact success probability of a strategy for messages whose hashes differ
/// in `distance` blocks.
double double_sign_analytic(DoubleSignStrategy s, const primitives::TmacParams& params,
                            std::size_t distance);

struct DoubleSignReport {
  DoubleSignStrategy strategy = DoubleSignStrategy::kMeasureOneBasis;
  primitives::TmacParams params;
  Rate success;
  double analytic = 0;
  /// 2^-(lambda_t / 2): the typical-case estimate for one differing block.
  double nominal = 0;
  Json to_json() const;
};

/// Each trial draws a fresh MAC key and token; a success is both signatures
/// verifying. The message pair is fixed per run and differs in one hash bit.
DoubleSignReport tmac_double_sign(DoubleSignStrategy s, const primitives::TmacParams& params,
                                  std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Hadamard-sample statistics.

struct HadamardStats {
  std::size_t width = 0;
  std::size_t samples = 0;
  std::size_t parity_pass = 0;
  /// Largest over b of the total-variation distance between the empirical d
  /// distribution and uniform on {d : d . (x0 xor x1) = b}.
  double tv_distance = 0;
  Json to_json() const;
};

/// Samples d from Z^b-phased two-branch states |0, x0> + |1, x1> of the given
/// total width, with b uniform per sample.
HadamardStats hadamard_stats(std::size_t width, std::size_t samples, std::uint64_t seed);

}  // namespace qpke::games

#endif  // QPKE_GAMES_DEMOS_H_
