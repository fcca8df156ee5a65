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

// Many-key upgrade: every public key carries a serial number snum, a fresh
// inner key pair derived from PRF_K(snum), and a master signature binding
// snum to the inner verification key. Dec re-derives the inner secret key
// from K and snum, so the secret key holds no per-serial material.

#ifndef QPKE_TRANSFORMS_MKEY_H_
#define QPKE_TRANSFORMS_MKEY_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qpke/hash.h"
#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"

namespace qpke::transforms {

struct MKeyParams {
  primitives::SigParams master = primitives::SigParams::micro();
  std::size_t snum_bits = 32;
};

template <QpkeScheme Inner>
class MKey {
 public:
  struct SecretKey {
    BitString prf_key;
    primitives::SigningKey master;
  };
  using VerificationKey = BitString;
  struct PublicKey {
    BitString snum;
    typename Inner::VerificationKey vk;
    typename Inner::PublicKey pk;
    BitString sigma;
  };
  /// Absent inner ciphertext encodes bottom.
  struct Ciphertext {
    BitString snum;
    std::optional<typename Inner::Ciphertext> inner;
  };

  MKey(Inner inner, MKeyParams params = {}) : inner_(std::move(inner)), params_(params) {
    params_.master.validate();
    if (params_.snum_bits == 0 || params_.snum_bits > 256) {
      throw std::invalid_argument("MKey: snum_bits out of range");
    }
  }

  const Inner& inner() const { return inner_; }
  const MKeyParams& params() const { return params_; }
  std::size_t message_bits() const { return inner_.message_bits(); }
  std::string name() const { return "mkey(" + inner_.name() + ")"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    auto kp = primitives::sig_gen(primitives::hash("qpke.mkey.sig", seed, 128), params_.master);
    return {SecretKey{primitives::hash("qpke.mkey.prf", seed, 128), std::move(kp.sk)},
            std::move(kp.vk)};
  }

  /// Inner key pair for one serial number; a pure function of (K, snum).
  std::pair<typename Inner::SecretKey, typename Inner::VerificationKey> derive(
      const BitString& prf_key, const BitString& snum) const {
    return inner_.skgen(primitives::prf_eval(prf_key, "qpke.mkey.snum", snum, 128));
  }

  PublicKey pkgen(const SecretKey& sk, Rng& rng) const {
    BitString snum = rng.bits(params_.snum_bits);
    auto [isk, ivk] = derive(sk.prf_key, snum);
    auto ipk = inner_.pkgen(isk, rng);
    BitString sigma = primitives::sig_sign(sk.master, binding(snum, ivk));
    return PublicKey{std::move(snum), std::move(ivk), std::move(ipk), std::move(sigma)};
  }

  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    if (msg.size() != message_bits()) throw std::invalid_argument("MKey::enc: message length");
    if (pk.snum.size() != params_.snum_bits ||
        !primitives::sig_verify(vk, binding(pk.snum, pk.vk), pk.sigma, params_.master)) {
      return Ciphertext{std::move(pk.snum), std::nullopt};
    }
    auto inner = inner_.enc(pk.vk, std::move(pk.pk), msg, rng);
    return Ciphertext{std::move(pk.snum), std::move(inner)};
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    if (!ct.inner || ct.snum.size() != params_.snum_bits) return std::nullopt;
    return inner_.dec(derive(sk.prf_key, ct.snum).first, *ct.inner);
  }

  /// The string the master key signs: snum || encoded inner vk.
  BitString binding(const BitString& snum, const typename Inner::VerificationKey& vk) const {
    return snum.concat(bits_of(inner_.serialize_vk(vk)));
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    ByteWriter w;
    w.put_u8(ct.inner ? 0x01 : 0x00);
    w.put_fixed_bits(ct.snum);
    if (ct.inner) w.put_bytes(inner_.serialize_ct(*ct.inner));
    return w.bytes();
  }

  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    const std::uint8_t tag = r.get_u8();
    if (tag > 1) throw ParseError("mkey ciphertext: bad tag");
    Ciphertext ct{r.get_fixed_bits(params_.snum_bits), std::nullopt};
    if (tag == 1) {
      const Bytes inner = r.get_bytes();
      ct.inner = inner_.parse_ct(inner);
    }
    r.expect_done();
    return ct;
  }

  Bytes serialize_vk(const VerificationKey& vk) const {
    ByteWriter w;
    w.put_bits(vk);
    return w.bytes();
  }
  VerificationKey parse_vk(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    BitString vk = r.get_bits();
    r.expect_done();
    return vk;
  }

  Bytes serialize_pk(const PublicKey& pk) const {
    ByteWriter w;
    w.put_bits(pk.snum);
    w.put_bytes(inner_.serialize_vk(pk.vk));
    w.put_bytes(inner_.serialize_pk(pk.pk));
    w.put_bits(pk.sigma);
    return w.bytes();
  }
  PublicKey parse_pk(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    BitString snum = r.get_bits();
    const Bytes vk = r.get_bytes();
    const Bytes pk = r.get_bytes();
    BitString sigma = r.get_bits();
    r.expect_done();
    return PublicKey{std::move(snum), inner_.parse_vk(vk), inner_.parse_pk(pk),
                     std::move(sigma)};
  }

 private:
  Inner inner_;
  MKeyParams params_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_MKEY_H_
