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

// One-query CCA upgrade: 2n inner instances indexed by (position, bit). Enc
// draws a fresh binding signature key pair, XOR-shares the message into n
// shares, encrypts share i under instance (i, sigvk[i]), and signs the
// component ciphertexts. Dec checks the signature, decrypts the selected
// instances, and XORs the shares.

#ifndef QPKE_TRANSFORMS_ONECCA_H_
#define QPKE_TRANSFORMS_ONECCA_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"
#include "qpke/transforms/common.h"

namespace qpke::transforms {

struct OneCcaParams {
  primitives::SigParams bind = primitives::SigParams::micro();
  /// Number of sigvk bits that select instances; 0 means all of them. Smaller
  /// values index by a prefix and exist for degenerate-case tests.
  std::size_t index_bits = 0;

  std::size_t n() const { return index_bits == 0 ? bind.vk_len() : index_bits; }
};

template <QpkeScheme Inner>
class OneCca {
 public:
  using SecretKey = std::vector<typename Inner::SecretKey>;
  using VerificationKey = std::vector<typename Inner::VerificationKey>;
  using PublicKey = std::vector<typename Inner::PublicKey>;

  struct Ciphertext {
    BitString sigvk;
    std::vector<typename Inner::Ciphertext> cts;
    BitString sigma;
  };

  OneCca(Inner inner, OneCcaParams params = {})
      : inner_(std::move(inner)), params_(params) {
    params_.bind.validate();
    if (params_.n() == 0 || params_.n() > params_.bind.vk_len()) {
      throw std::invalid_argument("OneCca: index_bits out of range");
    }
  }

  const Inner& inner() const { return inner_; }
  const OneCcaParams& params() const { return params_; }
  std::size_t n() const { return params_.n(); }
  std::size_t message_bits() const { return inner_.message_bits(); }
  std::string name() const { return "1cca(" + inner_.name() + ")"; }

  static std::size_t slot(std::size_t i, bool bit) { return 2 * i + (bit ? 1 : 0); }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    SecretKey sk;
    VerificationKey vk;
    for (std::size_t j = 0; j < 2 * n(); ++j) {
      auto [s, v] = inner_.skgen(derive_seed("qpke.1cca.slot", seed, j));
      sk.push_back(std::move(s));
      vk.push_back(std::move(v));
    }
    return {std::move(sk), std::move(vk)};
  }

  PublicKey pkgen(const SecretKey& sk, Rng& rng) const {
    check_arity(sk.size());
    PublicKey pk;
    for (const auto& s : sk) pk.push_back(inner_.pkgen(s, rng));
    return pk;
  }

  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    check_arity(vk.size());
    check_arity(pk.size());
    if (msg.size() != message_bits()) throw std::invalid_argument("OneCca::enc: message length");
    auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits), params_.bind);
    Ciphertext ct;
    ct.sigvk = kp.vk;
    BitString last = msg;
    for (std::size_t i = 0; i < n(); ++i) {
      BitString share;
      if (i + 1 < n()) {
        share = rng.bits(message_bits());
        last ^= share;
      } else {
        share = last;
      }
      const std::size_t j = slot(i, ct.sigvk.get(i));
      ct.cts.push_back(inner_.enc(vk[j], std::move(pk[j]), share, rng));
    }
    ct.sigma = primitives::sig_sign(kp.sk, signed_payload(ct.cts));
    return ct;
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    if (sk.size() != 2 * n() || !shaped(ct)) return std::nullopt;
    if (!primitives::sig_verify(ct.sigvk, signed_payload(ct.cts), ct.sigma, params_.bind)) {
      return std::nullopt;
    }
    BitString msg(message_bits());
    for (std::size_t i = 0; i < n(); ++i) {
      const auto u = inner_.dec(sk[slot(i, ct.sigvk.get(i))], ct.cts[i]);
      if (!u || u->size() != message_bits()) return std::nullopt;
      msg ^= *u;
    }
    return msg;
  }

  /// The bits the binding signature covers.
  BitString signed_payload(const std::vector<typename Inner::Ciphertext>& cts) const {
    ByteWriter w;
    put_each(w, cts, [&](const auto& c) { return inner_.serialize_ct(c); });
    return bits_of(w.bytes());
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    if (!shaped(ct)) throw std::invalid_argument("OneCca::serialize_ct: malformed");
    ByteWriter w;
    w.put_fixed_bits(ct.sigvk);
    put_each(w, ct.cts, [&](const auto& c) { return inner_.serialize_ct(c); });
    w.put_fixed_bits(ct.sigma);
    return w.bytes();
  }

  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    Ciphertext ct;
    ct.sigvk = r.get_fixed_bits(params_.bind.vk_len());
    ct.cts = get_each(r, n(), [&](auto b) { return inner_.parse_ct(b); }, "1cca components");
    ct.sigma = r.get_fixed_bits(params_.bind.sig_len());
    r.expect_done();
    return ct;
  }

  Bytes serialize_vk(const VerificationKey& vk) const {
    ByteWriter w;
    put_each(w, vk, [&](const auto& v) { return inner_.serialize_vk(v); });
    return w.bytes();
  }
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    auto vk = get_each(r, 2 * n(), [&](auto b) { return inner_.parse_vk(b); }, "1cca vk");
    r.expect_done();
    return vk;
  }
  Bytes serialize_pk(const PublicKey& pk) const {
    ByteWriter w;
    put_each(w, pk, [&](const auto& p) { return inner_.serialize_pk(p); });
    return w.bytes();
  }
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    auto pk = get_each(r, 2 * n(), [&](auto b) { return inner_.parse_pk(b); }, "1cca pk");
    r.expect_done();
    return pk;
  }

 private:
  void check_arity(std::size_t k) const {
    if (k != 2 * n()) {
      throw std::invalid_argument("OneCca: expected " + std::to_string(2 * n()) +
                                  " component keys");
    }
  }

  bool shaped(const Ciphertext& ct) const {
    return ct.sigvk.size() == params_.bind.vk_len() && ct.cts.size() == n() &&
           ct.sigma.size() == params_.bind.sig_len();
  }

  Inner inner_;
  OneCcaParams params_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_ONECCA_H_
