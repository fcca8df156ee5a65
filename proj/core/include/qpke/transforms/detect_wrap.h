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

// Generic decryption error detectability: Enc signs msg under an ephemeral
// one-time key it generates itself, encrypts msg || tau with the inner
// scheme, and sends the ephemeral verification key in the clear. Dec outputs
// msg only if tau verifies under that key.

#ifndef QPKE_TRANSFORMS_DETECT_WRAP_H_
#define QPKE_TRANSFORMS_DETECT_WRAP_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"

namespace qpke::transforms {

template <QpkeScheme Inner>
class DetectWrap {
 public:
  using SecretKey = typename Inner::SecretKey;
  using VerificationKey = typename Inner::VerificationKey;
  using PublicKey = typename Inner::PublicKey;
  struct Ciphertext {
    BitString svk;
    typename Inner::Ciphertext inner;
  };

  explicit DetectWrap(Inner inner,
                      primitives::SigParams ephemeral = primitives::SigParams::one_time())
      : inner_(std::move(inner)), eph_(ephemeral) {
    eph_.validate();
    if (inner_.message_bits() < eph_.sig_len()) {
      throw std::invalid_argument("DetectWrap: inner message space too small for tau");
    }
  }

  const Inner& inner() const { return inner_; }
  const primitives::SigParams& ephemeral() const { return eph_; }
  std::size_t message_bits() const { return inner_.message_bits() - eph_.sig_len(); }
  std::string name() const { return "wrap(" + inner_.name() + ")"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    return inner_.skgen(seed);
  }
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const { return inner_.pkgen(sk, rng); }

  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    if (msg.size() != message_bits()) throw std::invalid_argument("DetectWrap: message length");
    auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits), eph_);
    const BitString tau = primitives::sig_sign(kp.sk, msg);
    return Ciphertext{kp.vk, inner_.enc(vk, std::move(pk), msg.concat(tau), rng)};
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    const auto m = inner_.dec(sk, ct.inner);
    if (!m || m->size() != inner_.message_bits()) return std::nullopt;
    BitString msg = m->slice(0, message_bits());
    const BitString tau = m->slice(message_bits(), eph_.sig_len());
    if (!primitives::sig_verify(ct.svk, msg, tau, eph_)) return std::nullopt;
    return msg;
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    ByteWriter w;
    w.put_bits(ct.svk);
    w.put_bytes(inner_.serialize_ct(ct.inner));
    return w.bytes();
  }
  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    BitString svk = r.get_bits();
    const Bytes inner = r.get_bytes();
    r.expect_done();
    return Ciphertext{std::move(svk), inner_.parse_ct(inner)};
  }

  Bytes serialize_vk(const VerificationKey& vk) const { return inner_.serialize_vk(vk); }
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const {
    return inner_.parse_vk(bytes);
  }
  Bytes serialize_pk(const PublicKey& pk) const { return inner_.serialize_pk(pk); }
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const { return inner_.parse_pk(bytes); }

 private:
  Inner inner_;
  primitives::SigParams eph_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_DETECT_WRAP_H_
