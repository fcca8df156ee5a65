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


#include "qpke/games/base_game.h"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace qpke::games {

namespace {

const std::vector<std::string>& ab_regs() {
  static const std::vector<std::string> kAB{base::kRegA, base::kRegB};
  return kAB;
}

base::QuantumPublicKey first_copy(const std::vector<base::QuantumPublicKey>& copies) {
  if (copies.empty()) throw ProtocolViolation("adversary received no key copies");
  return copies.front();
}

// Reads (alpha, sigma) from a computational-basis outcome over (A, B).
std::pair<bool, BitString> split_branch(const BitString& ab) {
  return {ab.get(0), ab.slice(1, ab.size() - 1)};
}

}  // namespace

bool BaseAdversary::guess_from_registers(const BitString&, const qsim::SparseState&, Rng& rng) {
  return rng.bit();
}

std::pair<BitString, BitString> BaseAdversary::output_pair(const BitString&,
                                                           const qsim::SparseState& state,
                                                           Rng& rng) {
  const auto m = qsim::measure_computational(state, ab_regs(), rng);
  auto [alpha, sigma] = split_branch(m.outcome);
  BitString other = rng.bits(sigma.size());
  return alpha ? std::pair{std::move(other), std::move(sigma)}
               : std::pair{std::move(sigma), std::move(other)};
}

std::unique_ptr<BaseAdversary> HonestForwarder::clone() const {
  return std::make_unique<HonestForwarder>(*this);
}

void HonestForwarder::receive_keys(const base::BaseParams& params, const BitString& vk,
                                   std::vector<base::QuantumPublicKey> copies, Rng&) {
  params_ = params;
  vk_ = vk;
  copies_ = std::move(copies);
}

TamperedKey HonestForwarder::tamper(Rng&) { return {first_copy(copies_), "forward copy 1"}; }

bool HonestForwarder::guess(const base::BaseCiphertext&, std::optional<bool>,
                            const std::optional<qsim::SparseState>&, Rng& rng) {
  return rng.bit();
}

std::unique_ptr<BaseAdversary> KeySwapAttacker::clone() const {
  return std::make_unique<KeySwapAttacker>(*this);
}

TamperedKey KeySwapAttacker::tamper(Rng& rng) {
  own_ = base::base_skgen(rng.bits(128), params_).first;
  return {base::base_pkgen(*own_, params_, rng), "key from a self-generated signing key"};
}

bool KeySwapAttacker::guess(const base::BaseCiphertext& ct, std::optional<bool>,
                            const std::optional<qsim::SparseState>&, Rng& rng) {
  if (const auto b = own_ ? base::base_dec(*own_, params_, ct) : std::nullopt) return *b;
  return rng.bit();
}

std::unique_ptr<BaseAdversary> KnownBranchAttacker::clone() const {
  return std::make_unique<KnownBranchAttacker>(*this);
}

TamperedKey KnownBranchAttacker::tamper(Rng& rng) {
  const std::size_t n = params_.sig.sig_len();
  const BitString x0 = BitString::from_uint(0, 1).concat(rng.bits(n));
  const BitString x1 = BitString::from_uint(1, 1).concat(rng.bits(n));
  delta_ = x0 ^ x1;
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<BitString, qsim::Amplitude>> terms{{x0, s}, {x1, s}};
  return {{first_copy(copies_).r, qsim::superpose(params_.layout(), terms)},
          "both branches replaced by known strings"};
}

bool KnownBranchAttacker::guess(const base::BaseCiphertext& ct, std::optional<bool>,
                                const std::optional<qsim::SparseState>&, Rng& rng) {
  if (ct.present && ct.d.size() == delta_.size()) return ct.d.dot(delta_);
  return rng.bit();
}

base::QuantumPublicKey phase_tamper(const base::QuantumPublicKey& pk) {
  return {pk.r, qsim::apply_z_power(pk.state, base::kRegA, true)};
}

base::QuantumPublicKey garbage_branch(const base::QuantumPublicKey& pk,
                                      const base::BaseParams& params, Rng& rng) {
  const qsim::Amplitude s = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<BitString, qsim::Amplitude>> terms;
  for (const auto& [basis, amp] : pk.state.terms()) {
    if (!basis.get(0)) terms.emplace_back(basis, s);
  }
  if (terms.size() != 1) throw ProtocolViolation("garbage_branch: expected an honest key");
  terms.emplace_back(BitString::from_uint(1, 1).concat(rng.bits(params.sig.sig_len())), s);
  return {pk.r, qsim::superpose(params.layout(), terms)};
}

std::unique_ptr<BaseAdversary> PhaseTamperer::clone() const {
  return std::make_unique<PhaseTamperer>(*this);
}

TamperedKey PhaseTamperer::tamper(Rng&) {
  return {phase_tamper(first_copy(copies_)), "Z on register A of copy 1"};
}

std::unique_ptr<BaseAdversary> GarbageBranchTamperer::clone() const {
  return std::make_unique<GarbageBranchTamperer>(*this);
}

TamperedKey GarbageBranchTamperer::tamper(Rng& rng) {
  return {garbage_branch(first_copy(copies_), params_, rng), "branch 1 of copy 1 replaced"};
}

std::unique_ptr<BaseAdversary> EntangledForwarder::clone() const {
  return std::make_unique<EntangledForwarder>(*this);
}

TamperedKey EntangledForwarder::tamper(Rng&) {
  base::QuantumPublicKey pk = first_copy(copies_);
  const std::vector<std::string> in{base::kRegA};
  auto with_c = qsim::add_register(pk.state, kRegC, 1);
  pk.state = qsim::coherent_eval(with_c, [](const BitString& a) { return a; }, in, kRegC);
  return {std::move(pk), "copy 1 with A copied into private register C"};
}

bool EntangledForwarder::guess(const base::BaseCiphertext&, std::optional<bool>,
                               const std::optional<qsim::SparseState>& kept, Rng& rng) {
  if (!kept || !kept->layout().contains(kRegC)) return rng.bit();
  const std::vector<std::string> c{kRegC};
  return qsim::measure_hadamard_all(*kept, c, rng).outcome.get(0);
}

std::unique_ptr<BaseAdversary> MeasureAndCopy::clone() const {
  return std::make_unique<MeasureAndCopy>(*this);
}

TamperedKey MeasureAndCopy::tamper(Rng& rng) {
  base::QuantumPublicKey pk = first_copy(copies_);
  auto m = qsim::measure_computational(pk.state, ab_regs(), rng);
  std::tie(alpha_, sig_) = split_branch(m.outcome);
  pk.state = std::move(m.state);
  return {std::move(pk), "copy 1 measured in the computational basis"};
}

std::pair<BitString, BitString> MeasureAndCopy::output_pair(const BitString&,
                                                            const qsim::SparseState&, Rng& rng) {
  BitString forged = rng.bits(sig_.size());
  return alpha_ ? std::pair{std::move(forged), sig_} : std::pair{sig_, std::move(forged)};
}

std::unique_ptr<BaseAdversary> SkOracle::clone() const { return std::make_unique<SkOracle>(*this); }

bool SkOracle::guess(const base::BaseCiphertext& ct, std::optional<bool>,
                     const std::optional<qsim::SparseState>&, Rng& rng) {
  if (const auto b = sk_ ? base::base_dec(*sk_, params_, ct) : std::nullopt) return *b;
  return rng.bit();
}

bool SkOracle::guess_from_registers(const BitString& r, const qsim::SparseState& state, Rng& rng) {
  if (!sk_) return rng.bit();
  // With k the branches can be uncomputed, leaving the phase on A readable.
  const qsim::Amplitude a0 = state.amplitude(base::branch_string(*sk_, false, r));
  const qsim::Amplitude a1 = state.amplitude(base::branch_string(*sk_, true, r));
  if (std::abs(a0) < qsim::kPruneThreshold || std::abs(a1) < qsim::kPruneThreshold) {
    return rng.bit();
  }
  return (a1 / a0).real() < 0;
}

std::pair<BitString, BitString> SkOracle::output_pair(const BitString& r,
                                                      const qsim::SparseState& state, Rng& rng) {
  if (!sk_) return BaseAdversary::output_pair(r, state, rng);
  const BitString x0 = base::branch_string(*sk_, false, r);
  const BitString x1 = base::branch_string(*sk_, true, r);
  return {x0.slice(1, x0.size() - 1), x1.slice(1, x1.size() - 1)};
}

const std::vector<AdversaryInfo>& base_adversaries() {
  static const std::vector<AdversaryInfo> kList{
      {"honest", "forwards an honest copy and guesses at random"},
      {"keyswap", "substitutes a key made from its own signing key"},
      {"known-branch", "substitutes two branches it knows and decodes d with them"},
      {"phase", "applies Z to register A before forwarding"},
      {"garbage-branch", "replaces one branch with random bits"},
      {"entangled", "keeps a register C entangled with A and measures it"},
      {"measure-copy", "measures a copy to learn one signature"},
      {"sk-oracle", "is handed the signing key (sanity ceiling)"},
  };
  return kList;
}

std::unique_ptr<BaseAdversary> make_base_adversary(const std::string& name) {
  if (name == "honest") return std::make_unique<HonestForwarder>();
  if (name == "keyswap") return std::make_unique<KeySwapAttacker>();
  if (name == "known-branch") return std::make_unique<KnownBranchAttacker>();
  if (name == "phase") return std::make_unique<PhaseTamperer>();
  if (name == "garbage-branch") return std::make_unique<GarbageBranchTamperer>();
  if (name == "entangled") return std::make_unique<EntangledForwarder>();
  if (name == "measure-copy") return std::make_unique<MeasureAndCopy>();
  if (name == "sk-oracle") return std::make_unique<SkOracle>();
  throw std::invalid_argument("unknown adversary: " + name);
}

namespace {

bool is_hybrid(GameId g) {
  return g == GameId::kHybrid0 || g == GameId::kHybrid1 || g == GameId::kHybrid2;
}

// Runs an adversary callback; any exception it raises is a protocol violation.
template <class F>
auto adversary_call(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ProtocolViolation&) {
    throw;
  } catch (const std::exception& e) {
    throw ProtocolViolation(e.what());
  }
}

void play_trial(const GameSpec& spec, const base::BaseParams& params, BaseAdversary& adv,
                TrialRecord& rec) {
  const GameId game = spec.game;
  const bool hybrid = is_hybrid(game);
  const Rng root = Rng(spec.seed).fork(rec.trial);
  Rng ch = root.fork("challenger");
  Rng ar = root.fork("adversary");

  auto [sk, vk] = base::base_skgen(ch.bits(128), params);
  rec.step(hybrid ? "gen" : "skgen");
  if (hybrid) rec.step("send_vk");
  if (adv.wants_secret_key()) {
    adversary_call([&] { adv.receive_secret_key(sk); });
    rec.step("disclose_sk");
  }

  std::vector<base::QuantumPublicKey> copies;
  for (std::size_t i = 0; i < spec.copies; ++i) {
    copies.push_back(base::base_pkgen(sk, params, ch));
    rec.r_values.push_back(copies.back().r.to_string());
  }
  rec.step(hybrid ? "sample_r" : "pkgen");
  rec.step(hybrid ? "send_pk" : "send_keys");
  adversary_call([&] { adv.receive_keys(params, vk, std::move(copies), ar); });

  TamperedKey tk = adversary_call([&] { return adv.tamper(ar); });
  rec.step("tamper");
  rec.tamper = tk.description + "; r=" + tk.pk.r.to_string();

  bool b = false;
  if (!hybrid) {
    b = ch.bit();
    rec.b = b;
    rec.step("sample_b");
  }
  auto accepted = base::enc_check(vk, params, tk.pk.r, tk.pk.state, ch);
  rec.step(hybrid ? "check_sig" : "enc_check");
  rec.d_outcome = accepted ? "accept" : "reject";

  if (!accepted && hybrid) {
    rec.bottom_ct = true;
    rec.step("send_bottom");
    rec.step("halt");
    return;
  }
  if (hybrid) {
    b = ch.bit();
    rec.b = b;
    rec.step("sample_b");
  }

  base::BaseCiphertext ct = base::BaseCiphertext::bottom();
  std::optional<qsim::SparseState> kept;
  std::optional<qsim::SparseState> handed;
  if (accepted) {
    auto phased = base::enc_phase(*accepted, b);
    rec.step(hybrid ? "apply_z" : "enc_phase");
    if (game == GameId::kHybrid1 || game == GameId::kHybrid2) {
      handed = std::move(phased);
      rec.step("send_registers");
    } else {
      auto m = base::enc_measure(phased, ch);
      rec.step(hybrid ? "measure_hadamard" : "enc_measure");
      ct = base::BaseCiphertext{true, tk.pk.r, std::move(m.outcome)};
      if (!m.state.layout().registers().empty()) kept = std::move(m.state);
    }
  }
  rec.bottom_ct = !ct.present && !handed;

  if (game == GameId::kHybrid2) {
    auto [mu0, mu1] = adversary_call([&] { return adv.output_pair(tk.pk.r, *handed, ar); });
    rec.step("output_pair");
    rec.mu = std::pair{fingerprint(mu0), fingerprint(mu1)};
    const BitString x0 = base::branch_string(sk, false, tk.pk.r);
    const BitString x1 = base::branch_string(sk, true, tk.pk.r);
    rec.win = mu0 == x0.slice(1, x0.size() - 1) && mu1 == x1.slice(1, x1.size() - 1);
    rec.step("score");
    return;
  }

  bool guess = false;
  if (game == GameId::kHybrid1) {
    guess = adversary_call([&] { return adv.guess_from_registers(tk.pk.r, *handed, ar); });
  } else {
    rec.step("send_ct");
    std::optional<bool> cv;
    if (game == GameId::kCva) {
      cv = base::base_dec(sk, params, ct).has_value();
      rec.cv = cv;
      rec.step("cv");
    }
    guess = adversary_call([&] { return adv.guess(ct, cv, kept, ar); });
  }
  rec.step("guess");
  rec.b_guess = guess;
  rec.win = guess == b;
  rec.step("score");
}

}  // namespace

GameResult run_game(const GameSpec& spec, const base::BaseParams& params,
                    const BaseAdversary& adversary) {
  switch (spec.game) {
    case GameId::kCpa:
    case GameId::kCva:
    case GameId::kHybrid0:
    case GameId::kHybrid1:
    case GameId::kHybrid2:
      break;
    default:
      throw std::invalid_argument(std::string("base games do not include ") + to_string(spec.game));
  }
  params.validate();
  GameResult result{spec, params.verify ? "base" : "strawman", adversary.name(), {}};
  result.trials.resize(spec.trials);
  run_trials(spec.trials, spec.jobs, [&](std::size_t t, std::size_t) {
    TrialRecord& rec = result.trials[t];
    rec.trial = t;
    rec.seed = spec.seed;
    auto adv = adversary.clone();
    try {
      play_trial(spec, params, *adv, rec);
    } catch (const ProtocolViolation& e) {
      rec.aborted = true;
      rec.abort_reason = e.what();
      rec.win = false;
    }
  });
  return result;
}

GameResult run_hybrid2(GameSpec spec, const base::BaseParams& params,
                       const BaseAdversary& adversary) {
  spec.game = GameId::kHybrid2;
  return run_game(spec, params, adversary);
}

std::vector<std::string> golden_base_steps(GameId game, bool rejected) {
  switch (game) {
    case GameId::kCpa:
    case GameId::kCva: {
      std::vector<std::string> s{"skgen", "pkgen", "send_keys", "tamper", "sample_b", "enc_check"};
      if (!rejected) s.insert(s.end(), {"enc_phase", "enc_measure"});
      s.push_back("send_ct");
      if (game == GameId::kCva) s.push_back("cv");
      s.insert(s.end(), {"guess", "score"});
      return s;
    }
    case GameId::kHybrid0:
    case GameId::kHybrid1:
    case GameId::kHybrid2: {
      std::vector<std::string> s{"gen", "send_vk", "sample_r", "send_pk", "tamper", "check_sig"};
      if (rejected) {
        s.insert(s.end(), {"send_bottom", "halt"});
        return s;
      }
      s.insert(s.end(), {"sample_b", "apply_z"});
      if (game == GameId::kHybrid0) {
        s.insert(s.end(), {"measure_hadamard", "send_ct", "guess"});
      } else if (game == GameId::kHybrid1) {
        s.insert(s.end(), {"send_registers", "guess"});
      } else {
        s.insert(s.end(), {"send_registers", "output_pair"});
      }
      s.push_back("score");
      return s;
    }
    default:
      throw std::invalid_argument("golden_base_steps: not a base game");
  }
}

}  // namespace qpke::games
