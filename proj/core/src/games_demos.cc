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


#include "qpke/games/demos.h"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>


namespace qpke::games {

namespace {

using Matrix2 = Eigen::Matrix2cd;

const std::vector<std::string>& reg_list(const std::string& name) {
  static const std::vector<std::string> kA{base::kRegA};
  static const std::vector<std::string> kB{base::kRegB};
  return name == base::kRegA ? kA : kB;
}

bool is_unitary(const Matrix2& m) {
  return (m.adjoint() * m - Matrix2::Identity()).norm() < 1e-9;
}

const std::string kRegC = "C";

}  // namespace

Matrix2 distinguisher_with_advantage(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("distinguisher_with_advantage: delta outside [0, 1]");
  }
  const double phi = std::acos(delta) / 2;
  Matrix2 rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Matrix2 h;
  h << 1, 1, 1, -1;
  return rot * h / std::sqrt(2.0);
}

double distinguishing_advantage(const Matrix2& v) {
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd plus(s, s), minus(s, -s);
  const double p0 = std::norm((v * plus)(1));
  const double p1 = std::norm((v * minus)(1));
  return std::abs(p1 - p0);
}

Matrix2 swap_operator(const Matrix2& v) {
  Matrix2 z = Matrix2::Zero();
  z(0, 0) = 1;
  z(1, 1) = -1;
  return v.adjoint() * z * v;
}

Json ExtractorReport::to_json() const {
  Json j;
  j["delta"] = delta;
  j["success"] = success.to_json();
  j["exact"] = exact;
  j["floor"] = floor;
  return j;
}

BzCircuit extractor_pipeline(const Matrix2& v, std::vector<std::string> measured,
                             const base::BaseParams& params) {
  if (!is_unitary(v)) throw std::invalid_argument("extractor: V is not unitary");
  params.validate();
  const Matrix2 w = swap_operator(v);
  BzCircuit c;
  c.name = "extractor";
  c.measured = std::move(measured);
  c.prepare = [w, params](Rng& rng) {
    auto [sk, vk] = base::base_skgen(rng.bits(128), params);
    const BitString r = rng.bits(params.u);
    const BitString x0 = base::branch_string(sk, false, r);
    const BitString x1 = base::branch_string(sk, true, r);
    // Psi_alpha = |alpha> on the adversary's register C.
    const BitString y0 = x0.concat(BitString::from_uint(0, 1));
    const BitString y1 = x1.concat(BitString::from_uint(1, 1));
    qsim::RegisterLayout layout = params.layout();
    layout.add(kRegC, 1);
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::pair<BitString, qsim::Amplitude>> terms{{y0, s}, {y1, s}};
    const auto sent = qsim::superpose(layout, terms);

    // Hybrid 2 steps 5-7: coherent check, Z^b, hand (A, B) back.
    auto accepted = base::enc_check(vk, params, r, sent, rng);
    if (!accepted) throw std::logic_error("extractor: honest state rejected");
    const bool b = rng.bit();
    BzInstance inst{base::enc_phase(*accepted, b), x0.slice(1, x0.size() - 1).concat(
                                                       x1.slice(1, x1.size() - 1)),
                    {}};
    qsim::SubspaceUnitary wu{{y0, y1}, w};
    inst.resume = [wu](const qsim::SparseState& st, Rng& g) {
      // A'': measure A, abort on 1, read mu0, apply W, read mu1.
      const auto ma = qsim::measure_computational(st, reg_list(base::kRegA), g);
      if (ma.outcome.get(0)) return BitString();
      const auto m0 = qsim::measure_computational(ma.state, reg_list(base::kRegB), g);
      const auto swapped = qsim::apply_subspace_unitary(m0.state, wu);
      const auto m1 = qsim::measure_computational(swapped, reg_list(base::kRegB), g);
      return m0.outcome.concat(m1.outcome);
    };
    return inst;
  };
  return c;
}

ExtractorReport extractor_demo(const Matrix2& v, std::size_t trials, std::uint64_t seed,
                               const base::BaseParams& params) {
  const BzCircuit c = extractor_pipeline(v, {base::kRegA}, params);
  ExtractorReport rep;
  rep.delta = distinguishing_advantage(v);
  rep.exact = 0.5 * std::norm(swap_operator(v)(1, 0));
  rep.floor = rep.delta * rep.delta / 4;
  rep.success.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).fork(t);
    BzInstance inst = c.prepare(rng);
    if (inst.resume(inst.state, rng) == inst.target) ++rep.success.successes;
  }
  return rep;
}

double BzReport::ratio() const {
  if (plain.successes == 0) return std::numeric_limits<double>::quiet_NaN();
  return paused.value() / plain.value();
}

Json BzReport::to_json() const {
  Json j;
  j["name"] = name;
  j["k"] = k;
  j["plain"] = plain.to_json();
  j["paused"] = paused.to_json();
  const double r = ratio();
  j["ratio"] = std::isnan(r) ? Json() : Json(r);
  j["bound"] = bound();
  return j;
}

BzReport bz_factor_check(const BzCircuit& circuit, std::size_t trials, std::uint64_t seed) {
  BzReport rep;
  rep.name = circuit.name;
  rep.plain.trials = trials;
  rep.paused.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Rng root = Rng(seed).fork(t);
    Rng plain_rng = root.fork("plain");
    BzInstance plain = circuit.prepare(plain_rng);
    if (rep.k == 0) {
      std::size_t width = 0;
      for (const auto& name : circuit.measured) width += plain.state.layout().at(name).width;
      if (width >= 20) throw std::invalid_argument("bz_factor_check: measurement too wide");
      rep.k = std::size_t{1} << width;
    }
    if (plain.resume(plain.state, plain_rng) == plain.target) ++rep.plain.successes;

    Rng paused_rng = root.fork("paused");
    BzInstance paused = circuit.prepare(paused_rng);
    const auto m = qsim::measure_computational(paused.state, circuit.measured, paused_rng);
    if (paused.resume(m.state, paused_rng) == paused.target) ++rep.paused.successes;
  }
  return rep;
}

BzCircuit hadamard_pipeline(std::size_t width) {
  if (width == 0 || width > 12) throw std::invalid_argument("hadamard_pipeline: width 1..12");
  BzCircuit c;
  c.name = "hadamard";
  c.measured = {"Q"};
  c.prepare = [width](Rng&) {
    const qsim::RegisterLayout layout{{"Q", width}};
    std::vector<std::pair<BitString, qsim::Amplitude>> terms;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << width); ++x) {
      terms.emplace_back(BitString::from_uint(x, width), 1.0);
    }
    BzInstance inst{qsim::superpose(layout, terms), BitString(width), {}};
    inst.resume = [](const qsim::SparseState& st, Rng& g) {
      const std::vector<std::string> q{"Q"};
      return qsim::measure_hadamard_all(st, q, g).outcome;
    };
    return inst;
  };
  return c;
}

BzCircuit classical_pipeline(std::size_t width) {
  if (width == 0 || width > 16) throw std::invalid_argument("classical_pipeline: width 1..16");
  BzCircuit c;
  c.name = "classical";
  c.measured = {"Q"};
  c.prepare = [width](Rng& rng) {
    const qsim::RegisterLayout layout{{"Q", width}};
    const BitString x = rng.bits(width);
    BzInstance inst{qsim::make_basis_state(layout, x), x, {}};
    inst.resume = [](const qsim::SparseState& st, Rng& g) {
      const std::vector<std::string> q{"Q"};
      return qsim::measure_computational(st, q, g).outcome;
    };
    return inst;
  };
  return c;
}

const char* to_string(DoubleSignStrategy s) {
  switch (s) {
    case DoubleSignStrategy::kMeasureOneBasis:
      return "measure-one-basis";
    case DoubleSignStrategy::kGuessOtherBasis:
      return "guess-other-basis";
    case DoubleSignStrategy::kRandomBasis:
      return "random-basis";
    case DoubleSignStrategy::kIntermediateBasis:
      return "intermediate-basis";
  }
  return "?";
}

const std::vector<DoubleSignStrategy>& all_double_sign_strategies() {
  static const std::vector<DoubleSignStrategy> kAll{
      DoubleSignStrategy::kMeasureOneBasis, DoubleSignStrategy::kGuessOtherBasis,
      DoubleSignStrategy::kRandomBasis, DoubleSignStrategy::kIntermediateBasis};
  return kAll;
}

std::optional<DoubleSignStrategy> parse_double_sign_strategy(std::string_view text) {
  for (auto s : all_double_sign_strategies()) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::pair<BitString, BitString> tmac_hamming1_pair(const primitives::TmacParams& params,
                                                   Rng& rng) {
  params.validate();
  std::map<BitString, BitString> seen;
  for (;;) {
    BitString m = rng.bits(64);
    const BitString h = primitives::tmac_hash(m, params);
    for (std::size_t j = 0; j < params.blocks; ++j) {
      BitString n = h;
      n.set(j, !n.get(j));
      auto it = seen.find(n);
      if (it != seen.end()) return {it->second, m};
    }
    seen.emplace(h, std::move(m));
  }
}

double double_sign_analytic(DoubleSignStrategy s, const primitives::TmacParams& params,
                            std::size_t distance) {
  const double lt = double(params.lambda_t);
  const double diff = lt * double(distance);
  const double same = lt * double(params.blocks - distance);
  switch (s) {
    case DoubleSignStrategy::kMeasureOneBasis:
    case DoubleSignStrategy::kGuessOtherBasis:
      return std::pow(0.75, diff);
    case DoubleSignStrategy::kRandomBasis:
      return std::pow(0.875, same) * std::pow(0.75, diff);
    case DoubleSignStrategy::kIntermediateBasis: {
      const double c = std::cos(std::numbers::pi / 8);
      return std::pow(c * c, diff);
    }
  }
  return 0.0;
}

Json DoubleSignReport::to_json() const {
  Json j;
  j["strategy"] = to_string(strategy);
  j["lambda_t"] = params.lambda_t;
  j["blocks"] = params.blocks;
  j["success"] = success.to_json();
  j["analytic"] = analytic;
  j["nominal"] = nominal;
  return j;
}

DoubleSignReport tmac_double_sign(DoubleSignStrategy s, const primitives::TmacParams& params,
                                  std::size_t trials, std::uint64_t seed) {
  Rng pair_rng = Rng(seed).fork("pair");
  const auto [m1, m2] = tmac_hamming1_pair(params, pair_rng);
  const BitString h1 = primitives::tmac_hash(m1, params);
  const BitString h2 = primitives::tmac_hash(m2, params);

  const double c = std::cos(std::numbers::pi / 8), sn = std::sin(std::numbers::pi / 8);
  Eigen::MatrixXcd tilt(2, 2);
  tilt << c, sn, -sn, c;
  const std::vector<std::string> q{"q"};

  DoubleSignReport rep{s, params, {0, trials}, double_sign_analytic(s, params, 1),
                       std::pow(2.0, -double(params.lambda_t) / 2)};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).fork(t);
    const auto key = primitives::tmac_keygen(rng.bits(128), params);
    auto token = primitives::tmac_token(key);
    const auto qubits = token.take();
    BitString sig1(params.qubits()), sig2(params.qubits());
    for (std::size_t j = 0; j < params.blocks; ++j) {
      const bool differ = h1.get(j) != h2.get(j);
      for (std::size_t i = 0; i < params.lambda_t; ++i) {
        const std::size_t idx = j * params.lambda_t + i;
        const auto& qubit = qubits[idx];
        bool v1 = false, v2 = false;
        if (s == DoubleSignStrategy::kRandomBasis) {
          v1 = v2 = primitives::tmac_measure_qubit(qubit, rng.bit(), rng);
        } else if (!differ) {
          v1 = v2 = primitives::tmac_measure_qubit(qubit, h1.get(j), rng);
        } else if (s == DoubleSignStrategy::kIntermediateBasis) {
          const auto tilted = qsim::apply_register_unitary(qubit, "q", tilt);
          v1 = v2 = qsim::measure_computational(tilted, q, rng).outcome.get(0);
        } else {
          v1 = primitives::tmac_measure_qubit(qubit, h1.get(j), rng);
          v2 = s == DoubleSignStrategy::kGuessOtherBasis ? rng.bit() : v1;
        }
        sig1.set(idx, v1);
        sig2.set(idx, v2);
      }
    }
    if (primitives::tmac_verify(key, m1, sig1) && primitives::tmac_verify(key, m2, sig2)) {
      ++rep.success.successes;
    }
  }
  return rep;
}

Json HadamardStats::to_json() const {
  Json j;
  j["width"] = width;
  j["samples"] = samples;
  j["parity_pass"] = parity_pass;
  j["tv_distance"] = tv_distance;
  return j;
}

HadamardStats hadamard_stats(std::size_t width, std::size_t samples, std::uint64_t seed) {
  if (width < 2 || width > 24) throw std::invalid_argument("hadamard_stats: width 2..24");
  Rng rng(seed);
  const BitString x0 = BitString::from_uint(0, 1).concat(rng.bits(width - 1));
  const BitString x1 = BitString::from_uint(1, 1).concat(rng.bits(width - 1));
  const BitString delta = x0 ^ x1;
  const qsim::RegisterLayout layout{{base::kRegA, 1}, {base::kRegB, width - 1}};
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<BitString, qsim::Amplitude>> terms{{x0, s}, {x1, s}};
  const auto honest = qsim::superpose(layout, terms);
  const qsim::SparseState phased[2] = {honest, base::enc_phase(honest, true)};
  const std::vector<std::string> ab{base::kRegA, base::kRegB};

  HadamardStats st{width, samples, 0, 0.0};
  std::map<BitString, std::size_t> counts[2];
  std::size_t per_b[2] = {0, 0};
  for (std::size_t i = 0; i < samples; ++i) {
    const bool b = rng.bit();
    const BitString d = qsim::measure_hadamard_all(phased[b], ab, rng).outcome;
    if (d.dot(delta) == b) ++st.parity_pass;
    ++counts[b][d];
    ++per_b[b];
  }
  // Each coset {d : d . delta = b} has 2^(width-1) elements.
  const double p = std::ldexp(1.0, -int(width - 1));
  for (int b = 0; b < 2; ++b) {
    if (per_b[b] == 0) continue;
    double tv = 0;
    std::size_t inside = 0;
    for (const auto& [d, n] : counts[b]) {
      const double q = double(n) / double(per_b[b]);
      if (d.dot(delta) == bool(b)) {
        ++inside;
        tv += std::abs(q - p);
      } else {
        tv += q;
      }
    }
    tv += p * double((std::size_t{1} << (width - 1)) - inside);
    st.tv_distance = std::max(st.tv_distance, tv / 2);
  }
  return st;
}

}  // namespace qpke::games
