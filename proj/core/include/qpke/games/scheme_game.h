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


// IND-pkT-CPA/CVA/CCA/1CCA experiments for any QpkeScheme, decryption error
// detectability experiments, and the built-in scheme-level adversaries.

#ifndef QPKE_GAMES_SCHEME_GAME_H_
#define QPKE_GAMES_SCHEME_GAME_H_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpke/base.h"
#include "qpke/games/record.h"
#include "qpke/pure.h"
#include "qpke/rng.h"
#include "qpke/scheme.h"
#include "qpke/signature.h"
#include "qpke/tmac.h"
#include "qpke/transforms/cca.h"
#include "qpke/transforms/counting.h"
#include "qpke/transforms/cva.h"
#include "qpke/transforms/detect_wrap.h"
#include "qpke/transforms/mkey.h"
#include "qpke/transforms/onecca.h"
#include "qpke/transforms/recyclable.h"

namespace qpke::games {

// ---------------------------------------------------------------------------
// Bottom detection. A ciphertext "contains bottom" when some quantum-encryption
// step inside it rejected the key it was given.

bool has_bottom(const base::BaseScheme& s, const base::BaseScheme::Ciphertext& ct);
bool has_bottom(const pure::PureScheme& s, const pure::PureScheme::Ciphertext& ct);
template <class S>
bool has_bottom(const S& s, const typename S::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::Cva<I>& s, const typename transforms::Cva<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::OneCca<I>& s,
                const typename transforms::OneCca<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::Cca<I>& s, const typename transforms::Cca<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::MKey<I>& s, const typename transforms::MKey<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::DetectWrap<I>& s,
                const typename transforms::DetectWrap<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::Recyclable<I>& s,
                const typename transforms::Recyclable<I>::Ciphertext& ct);
template <class I>
bool has_bottom(const transforms::Counting<I>& s,
                const typename transforms::Counting<I>::Ciphertext& ct);

template <class S>
bool has_bottom(const S&, const typename S::Ciphertext&) {
  return false;
}
template <class I>
bool has_bottom(const transforms::Cva<I>& s, const typename transforms::Cva<I>::Ciphertext& ct) {
  for (const auto& c : ct.cts) {
    if (has_bottom(s.inner(), c)) return true;
  }
  return false;
}
template <class I>
bool has_bottom(const transforms::OneCca<I>& s,
                const typename transforms::OneCca<I>::Ciphertext& ct) {
  for (const auto& c : ct.cts) {
    if (has_bottom(s.inner(), c)) return true;
  }
  return false;
}
template <class I>
bool has_bottom(const transforms::Cca<I>& s, const typename transforms::Cca<I>::Ciphertext& ct) {
  return has_bottom(s.inner(), ct.inner);
}
template <class I>
bool has_bottom(const transforms::MKey<I>& s,
                const typename transforms::MKey<I>::Ciphertext& ct) {
  return !ct.inner || has_bottom(s.inner(), *ct.inner);
}
template <class I>
bool has_bottom(const transforms::DetectWrap<I>& s,
                const typename transforms::DetectWrap<I>::Ciphertext& ct) {
  return has_bottom(s.inner(), ct.inner);
}
template <class I>
bool has_bottom(const transforms::Recyclable<I>& s,
                const typename transforms::Recyclable<I>::Ciphertext& ct) {
  return has_bottom(s.inner(), ct.qct);
}
template <class I>
bool has_bottom(const transforms::Counting<I>& s,
                const typename transforms::Counting<I>::Ciphertext& ct) {
  return has_bottom(s.inner(), ct);
}

// ---------------------------------------------------------------------------
// Decryption oracle.

/// ODec for one trial. Stage 1 answers Dec(sk, .) for every input. After
/// arm() (stage 2) it answers bottom on any input whose serialization equals
/// the challenge bytes. An optional budget caps the total number of queries
/// over both stages; exceeding it raises ProtocolViolation.
template <QpkeScheme S>
class DecOracle {
 public:
  DecOracle(const S& scheme, const typename S::SecretKey& sk, std::optional<std::size_t> budget,
            TrialRecord& rec)
      : scheme_(scheme), sk_(sk), budget_(budget), rec_(rec) {}

  int stage() const { return challenge_ ? 2 : 1; }
  std::size_t used() const { return used_; }
  std::optional<std::size_t> remaining() const {
    if (!budget_) return std::nullopt;
    return *budget_ - used_;
  }

  void arm(Bytes challenge) { challenge_ = std::move(challenge); }

  std::optional<BitString> query(const typename S::Ciphertext& ct) {
    return answer(scheme_.serialize_ct(ct), &ct);
  }

  /// Unparseable bytes decrypt to bottom.
  std::optional<BitString> query_bytes(std::span<const std::uint8_t> bytes) {
    return answer(Bytes(bytes.begin(), bytes.end()), nullptr);
  }

 private:
  std::optional<BitString> answer(const Bytes& bytes, const typename S::Ciphertext* parsed) {
    if (budget_ && used_ >= *budget_) {
      throw ProtocolViolation("decryption query budget of " + std::to_string(*budget_) +
                              " exceeded");
    }
    ++used_;
    Json q;
    q["stage"] = stage();
    q["ct"] = fingerprint(bytes);
    std::optional<BitString> out;
    const bool refused = challenge_ && bytes == *challenge_;
    if (!refused) {
      if (parsed) {
        out = scheme_.dec(sk_, *parsed);
      } else {
        try {
          out = scheme_.dec(sk_, scheme_.parse_ct(bytes));
        } catch (const ParseError&) {
          out = std::nullopt;
        }
      }
    }
    q["refused"] = refused;
    q["result"] = out ? out->to_string() : std::string("bottom");
    rec_.queries.push_back(std::move(q));
    rec_.step(stage() == 1 ? "odec1" : "odec2");
    return out;
  }

  const S& scheme_;
  const typename S::SecretKey& sk_;
  std::optional<std::size_t> budget_;
  TrialRecord& rec_;
  std::optional<Bytes> challenge_;
  std::size_t used_ = 0;
};

// ---------------------------------------------------------------------------
// Adversary interface.

template <QpkeScheme S>
class SchemeAdversary {
 public:
  using SecretKey = typename S::SecretKey;
  using VerificationKey = typename S::VerificationKey;
  using PublicKey = typename S::PublicKey;
  using Ciphertext = typename S::Ciphertext;

  /// (pk', msg0, msg1) as output by the adversary's first stage.
  struct Choice {
    PublicKey pk;
    BitString m0;
    BitString m1;
    std::string description;
  };

  virtual ~SchemeAdversary() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<SchemeAdversary> clone() const = 0;

  virtual bool wants_secret_key() const { return false; }
  virtual void receive_secret_key(const SecretKey&) {}

  virtual void receive_keys(const S& scheme, const VerificationKey& vk,
                            std::vector<PublicKey> copies, Rng&) {
    scheme_ = &scheme;
    vk_ = vk;
    copies_ = std::move(copies);
  }

  /// First stage; `oracle` is ODec1 in the CCA games and null otherwise.
  /// Default: forward copy 1 with messages 0^l and 1^l.
  virtual Choice choose(DecOracle<S>* oracle, Rng& rng) {
    (void)oracle;
    (void)rng;
    return {first_copy(), zeros(), ones(), "forward copy 1"};
  }

  /// Second stage; `cv` is set in CVA/CCA games, `oracle` is ODec2 or null.
  virtual bool guess(const Ciphertext& ct, std::optional<bool> cv, DecOracle<S>* oracle,
                     Rng& rng) {
    (void)ct;
    (void)cv;
    (void)oracle;
    return rng.bit();
  }

 protected:
  PublicKey first_copy() const {
    if (copies_.empty()) throw ProtocolViolation("adversary received no key copies");
    return copies_.front();
  }
  BitString zeros() const { return BitString(scheme_->message_bits()); }
  BitString ones() const {
    BitString m(scheme_->message_bits());
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, true);
    return m;
  }
  /// 0, 1 for the two challenge messages, nullopt for anything else.
  std::optional<bool> which(const std::optional<BitString>& m) const {
    if (!m) return std::nullopt;
    if (*m == zeros()) return false;
    if (*m == ones()) return true;
    return std::nullopt;
  }

  const S* scheme_ = nullptr;
  VerificationKey vk_{};
  std::vector<PublicKey> copies_;
};

template <QpkeScheme S>
class GenericHonest : public SchemeAdversary<S> {
 public:
  std::string name() const override { return "honest"; }
  std::unique_ptr<SchemeAdversary<S>> clone() const override {
    return std::make_unique<GenericHonest>(*this);
  }
};

/// Substitutes a public key generated under its own secret key.
template <QpkeScheme S>
class GenericKeySwap : public SchemeAdversary<S> {
 public:
  using Base = SchemeAdversary<S>;
  std::string name() const override { return "keyswap"; }
  std::unique_ptr<Base> clone() const override { return std::make_unique<GenericKeySwap>(*this); }

  typename Base::Choice choose(DecOracle<S>*, Rng& rng) override {
    auto [sk, vk] = this->scheme_->skgen(rng.bits(128));
    auto pk = this->scheme_->pkgen(sk, rng);
    own_.emplace(std::move(sk));
    return {std::move(pk), this->zeros(), this->ones(), "key from a self-generated secret key"};
  }

  bool guess(const typename Base::Ciphertext& ct, std::optional<bool>, DecOracle<S>*,
             Rng& rng) override {
    if (own_) {
      if (auto w = this->which(this->scheme_->dec(*own_, ct))) return *w;
    }
    return rng.bit();
  }

 private:
  std::optional<typename Base::SecretKey> own_;
};

/// Holds the secret key and decrypts the challenge.
template <QpkeScheme S>
class GenericSkOracle : public SchemeAdversary<S> {
 public:
  using Base = SchemeAdversary<S>;
  std::string name() const override { return "sk-oracle"; }
  std::unique_ptr<Base> clone() const override { return std::make_unique<GenericSkOracle>(*this); }
  bool wants_secret_key() const override { return true; }
  void receive_secret_key(const typename Base::SecretKey& sk) override { sk_.emplace(sk); }

  bool guess(const typename Base::Ciphertext& ct, std::optional<bool>, DecOracle<S>*,
             Rng& rng) override {
    if (sk_) {
      if (auto w = this->which(this->scheme_->dec(*sk_, ct))) return *w;
    }
    return rng.bit();
  }

 private:
  std::optional<typename Base::SecretKey> sk_;
};

/// Queries ODec2 on the challenge twice. Legal in the CCA game (both answers
/// are bottom); a protocol violation in the 1CCA game.
template <QpkeScheme S>
class GreedyQuerier : public SchemeAdversary<S> {
 public:
  using Base = SchemeAdversary<S>;
  std::string name() const override { return "greedy"; }
  std::unique_ptr<Base> clone() const override { return std::make_unique<GreedyQuerier>(*this); }

  bool guess(const typename Base::Ciphertext& ct, std::optional<bool>, DecOracle<S>* oracle,
             Rng& rng) override {
    if (oracle) {
      oracle->query(ct);
      oracle->query(ct);
    }
    return rng.bit();
  }
};

/// Against the multi-bit base scheme: flips the A-position bit of d in slot 1
/// of the challenge, which flips the decrypted bit, and asks ODec2.
class BaseMauler : public SchemeAdversary<base::BaseScheme> {
 public:
  std::string name() const override { return "maul"; }
  std::unique_ptr<SchemeAdversary<base::BaseScheme>> clone() const override {
    return std::make_unique<BaseMauler>(*this);
  }
  bool guess(const Ciphertext& ct, std::optional<bool> cv,
             DecOracle<base::BaseScheme>* oracle, Rng& rng) override;
};

/// Against the CCA layer: keeps a second token, re-authenticates the
/// challenge's inner ciphertext with it, re-signs with a fresh binding key
/// and asks ODec2.
template <QpkeScheme Inner>
class CcaReplay : public SchemeAdversary<transforms::Cca<Inner>> {
 public:
  using S = transforms::Cca<Inner>;
  using Base = SchemeAdversary<S>;
  std::string name() const override { return "replay"; }
  std::unique_ptr<Base> clone() const override { return std::make_unique<CcaReplay>(*this); }

  typename Base::Choice choose(DecOracle<S>*, Rng&) override {
    if (this->copies_.size() < 2) throw ProtocolViolation("replay needs two key copies");
    spare_.emplace(this->copies_[1].token);
    return {this->copies_[0], this->zeros(), this->ones(), "forward copy 1, keep token 2"};
  }

  bool guess(const typename Base::Ciphertext& ct, std::optional<bool>, DecOracle<S>* oracle,
             Rng& rng) override {
    if (!oracle || !spare_ || spare_->consumed()) return rng.bit();
    typename Base::Ciphertext forged = ct;
    const BitString payload = bits_of(this->scheme_->inner().serialize_ct(ct.inner));
    forged.mac_sig = primitives::tmac_sign(*spare_, payload, rng);
    const auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits),
                                        this->scheme_->params().bind);
    forged.sig = primitives::sig_sign(kp.sk, payload.concat(forged.mac_sig));
    if (auto w = this->which(oracle->query(forged))) return *w;
    return rng.bit();
  }

 private:
  std::optional<primitives::TmacToken> spare_;
};

// ---------------------------------------------------------------------------
// Game driver.

std::vector<std::string> golden_scheme_steps(GameId game, std::size_t odec1 = 0,
                                             std::size_t odec2 = 0);

namespace detail {

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

template <QpkeScheme S>
void play_scheme_trial(const GameSpec& spec, const S& scheme, SchemeAdversary<S>& adv,
                       TrialRecord& rec) {
  const GameId game = spec.game;
  const bool cca = game == GameId::kCca || game == GameId::kOneCca;
  const Rng root = Rng(spec.seed).fork(rec.trial);
  Rng ch = root.fork("challenger");
  Rng ar = root.fork("adversary");

  auto [sk, vk] = scheme.skgen(ch.bits(128));
  rec.step("skgen");
  if (adv.wants_secret_key()) {
    adversary_call([&] { adv.receive_secret_key(sk); });
    rec.step("disclose_sk");
  }
  std::vector<typename S::PublicKey> copies;
  for (std::size_t i = 0; i < spec.copies; ++i) copies.push_back(scheme.pkgen(sk, ch));
  rec.step("pkgen");
  rec.step("send_keys");
  adversary_call([&] { adv.receive_keys(scheme, vk, std::move(copies), ar); });

  std::optional<DecOracle<S>> oracle;
  if (cca) {
    oracle.emplace(scheme, sk, game == GameId::kOneCca ? std::optional<std::size_t>(1)
                                                       : std::nullopt,
                   rec);
  }
  DecOracle<S>* odec = oracle ? &*oracle : nullptr;
  auto choice = adversary_call([&] { return adv.choose(odec, ar); });
  rec.step("choose");
  rec.tamper = choice.description;
  if (choice.m0.size() != scheme.message_bits() || choice.m1.size() != scheme.message_bits()) {
    throw ProtocolViolation("challenge messages have the wrong length");
  }

  const bool b = ch.bit();
  rec.b = b;
  rec.step("sample_b");
  auto ct = scheme.enc(vk, std::move(choice.pk), b ? choice.m1 : choice.m0, ch);
  rec.step("enc");
  rec.bottom_ct = has_bottom(scheme, ct);
  std::optional<bool> cv;
  if (game != GameId::kCpa) {
    cv = scheme.dec(sk, ct).has_value();
    rec.cv = cv;
    rec.step("cv");
  }
  if (oracle) oracle->arm(scheme.serialize_ct(ct));
  rec.step("send_ct");
  const bool guess = adversary_call([&] { return adv.guess(ct, cv, odec, ar); });
  rec.step("guess");
  rec.b_guess = guess;
  rec.win = guess == b;
  rec.step("score");
}

}  // namespace detail

/// Runs a cpa, cva, cca or 1cca game. Throws std::invalid_argument for any
/// other game id.
template <QpkeScheme S>
GameResult run_game(const GameSpec& spec, const S& scheme, const SchemeAdversary<S>& adversary) {
  switch (spec.game) {
    case GameId::kCpa:
    case GameId::kCva:
    case GameId::kCca:
    case GameId::kOneCca:
      break;
    default:
      throw std::invalid_argument(std::string("scheme games do not include ") +
                                  to_string(spec.game));
  }
  GameResult result{spec, scheme.name(), adversary.name(), {}};
  result.trials.resize(spec.trials);
  run_trials(spec.trials, spec.jobs, [&](std::size_t t, std::size_t) {
    TrialRecord& rec = result.trials[t];
    rec.trial = t;
    rec.seed = spec.seed;
    auto adv = adversary.clone();
    try {
      detail::play_scheme_trial(spec, scheme, *adv, rec);
    } catch (const ProtocolViolation& e) {
      rec.aborted = true;
      rec.abort_reason = e.what();
      rec.win = false;
    }
  });
  return result;
}

// ---------------------------------------------------------------------------
// Decryption error detectability.

struct DetectabilityReport {
  std::string scheme;
  std::string adversary;
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t bottoms = 0;
  std::size_t violations = 0;
  std::size_t aborted = 0;

  Rate violation_rate() const { return {violations, trials}; }
  Json to_json() const;
};

/// The adversary's choose() supplies (pk', msg) with msg = m0; a violation is a
/// decryption to a message other than msg and bottom.
template <QpkeScheme S>
DetectabilityReport run_detectability_game(const S& scheme, const SchemeAdversary<S>& adversary,
                                           std::size_t trials, std::uint64_t seed,
                                           std::size_t copies = 4) {
  DetectabilityReport rep{scheme.name(), adversary.name(), trials};
  for (std::size_t t = 0; t < trials; ++t) {
    const Rng root = Rng(seed).fork(t);
    Rng ch = root.fork("challenger");
    Rng ar = root.fork("adversary");
    auto adv = adversary.clone();
    try {
      auto [sk, vk] = scheme.skgen(ch.bits(128));
      if (adv->wants_secret_key()) adv->receive_secret_key(sk);
      std::vector<typename S::PublicKey> pks;
      for (std::size_t i = 0; i < copies; ++i) pks.push_back(scheme.pkgen(sk, ch));
      detail::adversary_call([&] { adv->receive_keys(scheme, vk, std::move(pks), ar); });
      auto choice = detail::adversary_call([&] { return adv->choose(nullptr, ar); });
      if (choice.m0.size() != scheme.message_bits()) {
        throw ProtocolViolation("message has the wrong length");
      }
      const auto ct = scheme.enc(vk, std::move(choice.pk), choice.m0, ch);
      const auto out = scheme.dec(sk, ct);
      if (!out) {
        ++rep.bottoms;
      } else if (*out == choice.m0) {
        ++rep.correct;
      } else {
        ++rep.violations;
      }
    } catch (const ProtocolViolation&) {
      ++rep.aborted;
    }
  }
  return rep;
}

/// Strong variant: each trial draws (sk', vk', pk') from up to three
/// independent key pairs, optionally passes pk' through `corrupt`, encrypts a
/// random message and decrypts with sk'.
template <QpkeScheme S>
DetectabilityReport run_strong_detectability(
    const S& scheme, std::size_t trials, std::uint64_t seed,
    const std::function<void(typename S::PublicKey&, Rng&)>& corrupt = {}) {
  DetectabilityReport rep{scheme.name(), corrupt ? "mismatch+corrupt" : "mismatch", trials};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).fork(t);
    auto k1 = scheme.skgen(rng.bits(128));
    auto k2 = scheme.skgen(rng.bits(128));
    // Sources for (sk', vk', pk'): 0 means key pair 1, 1 means key pair 2.
    const unsigned mode = unsigned(rng.below(8));
    const auto& sk = (mode & 1) ? k2.first : k1.first;
    const auto& vk = (mode & 2) ? k2.second : k1.second;
    auto pk = scheme.pkgen((mode & 4) ? k2.first : k1.first, rng);
    if (corrupt && rng.bit()) corrupt(pk, rng);
    const BitString msg = rng.bits(scheme.message_bits());
    const auto out = scheme.dec(sk, scheme.enc(vk, std::move(pk), msg, rng));
    if (!out) {
      ++rep.bottoms;
    } else if (*out == msg) {
      ++rep.correct;
    } else {
      ++rep.violations;
    }
  }
  return rep;
}

/// Adversary for the detectability game over schemes whose public key is a
/// vector of base keys: applies a base-level tamper map to every slot.
template <QpkeScheme S>
class SlotTamperer : public SchemeAdversary<S> {
 public:
  using Base = SchemeAdversary<S>;
  using Map = std::function<base::QuantumPublicKey(const base::QuantumPublicKey&, Rng&)>;

  SlotTamperer(std::string name, Map map) : name_(std::move(name)), map_(std::move(map)) {}
  std::string name() const override { return name_; }
  std::unique_ptr<Base> clone() const override { return std::make_unique<SlotTamperer>(*this); }

  typename Base::Choice choose(DecOracle<S>*, Rng& rng) override {
    auto pk = this->first_copy();
    for (auto& slot : pk) slot = map_(slot, rng);
    BitString msg = rng.bits(this->scheme_->message_bits());
    return {std::move(pk), msg, msg, name_};
  }

 private:
  std::string name_;
  Map map_;
};

}  // namespace qpke::games

#endif  // QPKE_GAMES_SCHEME_GAME_H_
