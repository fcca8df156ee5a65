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

// Full CCA upgrade from a one-query scheme and a tokenized MAC.
//
// The public key carries a MAC signing token. Enc draws a fresh binding key
// pair (sigk*, sigvk*), encrypts sigvk* || msg with the inner scheme, signs
// the inner ciphertext with the token (consuming it), and signs
// inner ciphertext || MAC signature with sigk*. Dec checks, in order, the
// token MAC, the inner decryption, and the binding signature.

#ifndef QPKE_TRANSFORMS_CCA_H_
#define QPKE_TRANSFORMS_CCA_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpke/hash.h"
#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"
#include "qpke/tmac.h"
#include "qpke/transforms/common.h"

namespace qpke::transforms {

struct CcaParams {
  primitives::SigParams bind = primitives::SigParams::micro();
  primitives::TmacParams mac;
};

/// Dec checks in evaluation order.
enum class CcaCheck { kTokenMac, kInnerDec, kBinding };

inline const char* to_string(CcaCheck c) {
  switch (c) {
    case CcaCheck::kTokenMac:
      return "token_mac";
    case CcaCheck::kInnerDec:
      return "inner_dec";
    case CcaCheck::kBinding:
      return "binding_sig";
  }
  return "?";
}

template <QpkeScheme Inner>
class Cca {
 public:
  struct SecretKey {
    typename Inner::SecretKey inner;
    primitives::TmacKey mac;
  };
  using VerificationKey = typename Inner::VerificationKey;
  struct PublicKey {
    typename Inner::PublicKey inner;
    primitives::TmacToken token;
  };
  struct Ciphertext {
    typename Inner::Ciphertext inner;
    BitString mac_sig;
    BitString sig;
  };
  /// One evaluated check and whether it passed.
  using Trace = std::vector<std::pair<CcaCheck, bool>>;

  Cca(Inner inner, CcaParams params = {}) : inner_(std::move(inner)), params_(params) {
    params_.bind.validate();
    params_.mac.validate();
    if (inner_.message_bits() < params_.bind.vk_len()) {
      throw std::invalid_argument("Cca: inner message space too small for sigvk");
    }
  }

  const Inner& inner() const { return inner_; }
  const CcaParams& params() const { return params_; }
  std::size_t message_bits() const { return inner_.message_bits() - params_.bind.vk_len(); }
  std::string name() const { return "cca(" + inner_.name() + ")"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    auto [sk, vk] = inner_.skgen(primitives::hash("qpke.cca.inner", seed, 128));
    auto mac = primitives::tmac_keygen(primitives::hash("qpke.cca.tmac", seed, 128), params_.mac);
    return {SecretKey{std::move(sk), std::move(mac)}, std::move(vk)};
  }

  PublicKey pkgen(const SecretKey& sk, Rng& rng) const {
    return PublicKey{inner_.pkgen(sk.inner, rng), primitives::tmac_token(sk.mac)};
  }

  /// Throws std::logic_error if the token was already consumed.
  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    if (msg.size() != message_bits()) throw std::invalid_argument("Cca::enc: message length");
    auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits), params_.bind);
    Ciphertext ct;
    ct.inner = inner_.enc(vk, std::move(pk.inner), kp.vk.concat(msg), rng);
    const BitString payload = bits_of(inner_.serialize_ct(ct.inner));
    ct.mac_sig = primitives::tmac_sign(pk.token, payload, rng);
    ct.sig = primitives::sig_sign(kp.sk, payload.concat(ct.mac_sig));
    return ct;
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    return dec_traced(sk, ct, nullptr);
  }

  /// dec that appends each evaluated check to `trace` when non-null.
  std::optional<BitString> dec_traced(const SecretKey& sk, const Ciphertext& ct,
                                      Trace* trace) const {
    const auto note = [&](CcaCheck c, bool ok) {
      if (trace) trace->emplace_back(c, ok);
      return ok;
    };
    const BitString payload = bits_of(inner_.serialize_ct(ct.inner));
    if (!note(CcaCheck::kTokenMac, primitives::tmac_verify(sk.mac, payload, ct.mac_sig))) {
      return std::nullopt;
    }
    const auto inner_msg = inner_.dec(sk.inner, ct.inner);
    const std::size_t vk_len = params_.bind.vk_len();
    if (!note(CcaCheck::kInnerDec, inner_msg && inner_msg->size() == vk_len + message_bits())) {
      return std::nullopt;
    }
    const BitString sigvk = inner_msg->slice(0, vk_len);
    if (!note(CcaCheck::kBinding, primitives::sig_verify(sigvk, payload.concat(ct.mac_sig),
                                                         ct.sig, params_.bind))) {
      return std::nullopt;
    }
    return inner_msg->slice(vk_len, message_bits());
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    ByteWriter w;
    w.put_bytes(inner_.serialize_ct(ct.inner));
    w.put_bits(ct.mac_sig);
    w.put_bits(ct.sig);
    return w.bytes();
  }

  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    Ciphertext ct;
    const Bytes inner = r.get_bytes();
    ct.inner = inner_.parse_ct(inner);
    ct.mac_sig = r.get_bits();
    ct.sig = r.get_bits();
    r.expect_done();
    return ct;
  }

  Bytes serialize_vk(const VerificationKey& vk) const { return inner_.serialize_vk(vk); }
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const {
    return inner_.parse_vk(bytes);
  }

  Bytes serialize_pk(const PublicKey& pk) const {
    ByteWriter w;
    w.put_bytes(inner_.serialize_pk(pk.inner));
    write_token(w, pk.token);
    return w.bytes();
  }
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    const Bytes inner = r.get_bytes();
    auto token = read_token(r);
    r.expect_done();
    return PublicKey{inner_.parse_pk(inner), std::move(token)};
  }

 private:
  Inner inner_;
  CcaParams params_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_CCA_H_
