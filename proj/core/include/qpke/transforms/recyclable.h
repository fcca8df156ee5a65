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

// Recyclable hybrid encryption: one quantum encryption of a fresh SKE key K
// yields a classical recycled key rk = (K, qct). Every later encryption under
// rk is classical and reuses qct verbatim.
//
// Nonce rule: the n-th encryption under rk (n = 0 for the first, done by Enc)
// uses IV = PRF_K("qpke.rec.iv", n as 64 bits), so rEnc is deterministic in
// (rk, msg, n) and repeated messages still get distinct ciphertexts.

#ifndef QPKE_TRANSFORMS_RECYCLABLE_H_
#define QPKE_TRANSFORMS_RECYCLABLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qpke/hash.h"
#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/ske.h"

namespace qpke::transforms {

template <QpkeScheme Inner>
class Recyclable {
 public:
  using SecretKey = typename Inner::SecretKey;
  using VerificationKey = typename Inner::VerificationKey;
  using PublicKey = typename Inner::PublicKey;

  struct Ciphertext {
    typename Inner::Ciphertext qct;
    BitString sct;
  };
  struct RecycledKey {
    BitString key;
    typename Inner::Ciphertext qct;
    std::uint64_t counter = 0;
  };

  Recyclable(Inner inner, std::size_t message_bits)
      : inner_(std::move(inner)), message_bits_(message_bits) {
    if (inner_.message_bits() != primitives::kSkeKeyBits) {
      throw std::invalid_argument("Recyclable: inner scheme must carry a 128-bit key");
    }
  }

  const Inner& inner() const { return inner_; }
  std::size_t message_bits() const { return message_bits_; }
  std::string name() const { return "rec(" + inner_.name() + ")"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    return inner_.skgen(seed);
  }
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const { return inner_.pkgen(sk, rng); }

  /// The only quantum step: encrypts a fresh K and returns the first
  /// ciphertext with the recycled key.
  std::pair<Ciphertext, RecycledKey> enc_recycle(const VerificationKey& vk, PublicKey pk,
                                                 const BitString& msg, Rng& rng) const {
    RecycledKey rk;
    rk.key = primitives::ske_keygen(rng);
    rk.qct = inner_.enc(vk, std::move(pk), rk.key, rng);
    Ciphertext ct = renc(rk, msg);
    return {std::move(ct), std::move(rk)};
  }

  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    return enc_recycle(vk, std::move(pk), msg, rng).first;
  }

  /// Classical re-encryption; advances rk's counter.
  Ciphertext renc(RecycledKey& rk, const BitString& msg) const {
    if (msg.size() != message_bits_) throw std::invalid_argument("Recyclable: message length");
    const BitString iv = primitives::prf_eval(rk.key, "qpke.rec.iv",
                                              BitString::from_uint(rk.counter++, 64),
                                              primitives::kSkeIvBits);
    return Ciphertext{rk.qct,
                      primitives::ske_enc_with_iv(rk.key, iv, msg, primitives::SkeMode::kCca)};
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    const auto key = inner_.dec(sk, ct.qct);
    if (!key || key->size() != primitives::kSkeKeyBits) return std::nullopt;
    auto msg = primitives::ske_dec(*key, ct.sct, primitives::SkeMode::kCca);
    if (!msg || msg->size() != message_bits_) return std::nullopt;
    return msg;
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    ByteWriter w;
    w.put_bytes(inner_.serialize_ct(ct.qct));
    w.put_bits(ct.sct);
    return w.bytes();
  }
  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    const Bytes qct = r.get_bytes();
    Ciphertext ct{inner_.parse_ct(qct), r.get_bits()};
    r.expect_done();
    return ct;
  }

  Bytes serialize_vk(const VerificationKey& vk) const { return inner_.serialize_vk(vk); }
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const {
    return inner_.parse_vk(bytes);
  }
  Bytes serialize_pk(const PublicKey& pk) const { return inner_.serialize_pk(pk); }
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const { return inner_.parse_pk(bytes); }

 private:
  Inner inner_;
  std::size_t message_bits_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_RECYCLABLE_H_
