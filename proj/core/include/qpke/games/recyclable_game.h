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


// Security experiments for the recyclable variant: security under quantum
// public keys and security under recycled keys, each with a classical
// encryption oracle rEnc(rk, .).

#ifndef QPKE_GAMES_RECYCLABLE_GAME_H_
#define QPKE_GAMES_RECYCLABLE_GAME_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpke/games/record.h"
#include "qpke/games/scheme_game.h"
#include "qpke/transforms/recyclable.h"

namespace qpke::games {

template <QpkeScheme Inner>
class EncOracle {
 public:
  using S = transforms::Recyclable<Inner>;

  EncOracle(const S& scheme, typename S::RecycledKey& rk, TrialRecord& rec)
      : scheme_(scheme), rk_(rk), rec_(rec) {}

  typename S::Ciphertext query(const BitString& msg) {
    if (msg.size() != scheme_.message_bits()) {
      throw ProtocolViolation("rEnc query has the wrong message length");
    }
    auto ct = scheme_.renc(rk_, msg);
    Json q;
    q["oracle"] = "renc";
    q["msg"] = msg.to_string();
    q["ct"] = fingerprint(scheme_.serialize_ct(ct));
    rec_.queries.push_back(std::move(q));
    rec_.step("renc");
    return ct;
  }

 private:
  const S& scheme_;
  typename S::RecycledKey& rk_;
  TrialRecord& rec_;
};

template <QpkeScheme Inner>
class RecyclableAdversary {
 public:
  using S = transforms::Recyclable<Inner>;
  using PublicKey = typename S::PublicKey;
  using Ciphertext = typename S::Ciphertext;

  struct Choice {
    PublicKey pk;
    BitString m0;  ///< the single message in the recycled-key game
    BitString m1;
    std::string description;
  };

  virtual ~RecyclableAdversary() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<RecyclableAdversary> clone() const = 0;

  virtual void receive_keys(const S& scheme, const typename S::VerificationKey& vk,
                            std::vector<PublicKey> copies, Rng&) {
    scheme_ = &scheme;
    vk_ = vk;
    copies_ = std::move(copies);
  }
  virtual Choice choose(Rng&) {
    if (copies_.empty()) throw ProtocolViolation("adversary received no key copies");
    return {copies_.front(), zeros(), ones(), "forward copy 1"};
  }
  /// Recycled-key game: sees the first ciphertext, then names (msg0, msg1).
  virtual std::pair<BitString, BitString> choose_recycled(const Ciphertext&, EncOracle<Inner>&,
                                                          Rng&) {
    return {zeros(), ones()};
  }
  virtual bool guess(const Ciphertext&, EncOracle<Inner>&, Rng& rng) { return rng.bit(); }

 protected:
  BitString zeros() const { return BitString(scheme_->message_bits()); }
  BitString ones() const {
    BitString m(scheme_->message_bits());
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, true);
    return m;
  }

  const S* scheme_ = nullptr;
  typename S::VerificationKey vk_{};
  std::vector<PublicKey> copies_;
};

template <QpkeScheme Inner>
class RecyclableHonest : public RecyclableAdversary<Inner> {
 public:
  std::string name() const override { return "honest"; }
  std::unique_ptr<RecyclableAdversary<Inner>> clone() const override {
    return std::make_unique<RecyclableHonest>(*this);
  }
};

/// Asks rEnc for both candidate messages and compares the symmetric parts with
/// the challenge. Fresh IVs per call make the comparison useless.
template <QpkeScheme Inner>
class RecyclableMatcher : public RecyclableAdversary<Inner> {
 public:
  using Base = RecyclableAdversary<Inner>;
  std::string name() const override { return "match"; }
  std::unique_ptr<Base> clone() const override {
    return std::make_unique<RecyclableMatcher>(*this);
  }
  bool guess(const typename Base::Ciphertext& ct, EncOracle<Inner>& oracle, Rng& rng) override {
    if (oracle.query(this->zeros()).sct == ct.sct) return false;
    if (oracle.query(this->ones()).sct == ct.sct) return true;
    return rng.bit();
  }
};

std::vector<std::string> golden_recyclable_steps(GameId game);

/// Runs recyclable-qpk or recyclable-rk. Throws std::invalid_argument for any
/// other game id.
template <QpkeScheme Inner>
GameResult run_game(const GameSpec& spec, const transforms::Recyclable<Inner>& scheme,
                    const RecyclableAdversary<Inner>& adversary) {
  if (spec.game != GameId::kRecyclableQpk && spec.game != GameId::kRecyclableRk) {
    throw std::invalid_argument(std::string("recyclable games do not include ") +
                                to_string(spec.game));
  }
  const bool rk_game = spec.game == GameId::kRecyclableRk;
  GameResult result{spec, scheme.name(), adversary.name(), {}};
  result.trials.resize(spec.trials);
  run_trials(spec.trials, spec.jobs, [&](std::size_t t, std::size_t) {
    TrialRecord& rec = result.trials[t];
    rec.trial = t;
    rec.seed = spec.seed;
    auto adv = adversary.clone();
    try {
      const Rng root = Rng(spec.seed).fork(t);
      Rng ch = root.fork("challenger");
      Rng ar = root.fork("adversary");
      auto [sk, vk] = scheme.skgen(ch.bits(128));
      rec.step("skgen");
      std::vector<typename transforms::Recyclable<Inner>::PublicKey> copies;
      for (std::size_t i = 0; i < spec.copies; ++i) copies.push_back(scheme.pkgen(sk, ch));
      rec.step("pkgen");
      rec.step("send_keys");
      detail::adversary_call([&] { adv->receive_keys(scheme, vk, std::move(copies), ar); });
      auto choice = detail::adversary_call([&] { return adv->choose(ar); });
      rec.step("choose");
      rec.tamper = choice.description;
      const std::size_t n = scheme.message_bits();
      if (choice.m0.size() != n || (!rk_game && choice.m1.size() != n)) {
        throw ProtocolViolation("challenge messages have the wrong length");
      }
      bool b = false;
      if (!rk_game) {
        b = ch.bit();
        rec.b = b;
        rec.step("sample_b");
      }
      auto [first, rk] =
          scheme.enc_recycle(vk, std::move(choice.pk), b ? choice.m1 : choice.m0, ch);
      rec.step("enc");
      rec.bottom_ct = has_bottom(scheme, first);
      rec.step("send_ct");
      EncOracle<Inner> oracle(scheme, rk, rec);
      auto challenge = first;
      if (rk_game) {
        auto [m0, m1] =
            detail::adversary_call([&] { return adv->choose_recycled(first, oracle, ar); });
        rec.step("choose_messages");
        if (m0.size() != n || m1.size() != n) {
          throw ProtocolViolation("challenge messages have the wrong length");
        }
        b = ch.bit();
        rec.b = b;
        rec.step("sample_b");
        challenge = scheme.renc(rk, b ? m1 : m0);
        rec.step("renc_challenge");
        rec.step("send_ct");
      }
      const bool guess = detail::adversary_call([&] { return adv->guess(challenge, oracle, ar); });
      rec.step("guess");
      rec.b_guess = guess;
      rec.win = guess == b;
      rec.step("score");
    } catch (const ProtocolViolation& e) {
      rec.aborted = true;
      rec.abort_reason = e.what();
      rec.win = false;
    }
  });
  return result;
}

}  // namespace qpke::games

#endif  // QPKE_GAMES_RECYCLABLE_GAME_H_
