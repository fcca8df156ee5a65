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

// Cut-and-choose upgrade to challenge-validity security with strong
// decryption error detectability.
//
// Keys are 4*lambda_r independent inner keys. Enc picks a random Test set of
// size 2*lambda_r, encrypts a fresh random u_i in every slot, and publishes
// v_i = u_i on Test and v_i = u_i xor msg elsewhere. Dec rejects unless every
// Test slot decrypts to v_i, then takes the majority of v_i xor u_i over the
// remaining slots.

#ifndef QPKE_TRANSFORMS_CVA_H_
#define QPKE_TRANSFORMS_CVA_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpke/scheme.h"
#include "qpke/serialize.h"
#include "qpke/transforms/common.h"

namespace qpke::transforms {

template <QpkeScheme Inner>
class Cva {
 public:
  using SecretKey = std::vector<typename Inner::SecretKey>;
  using VerificationKey = std::vector<typename Inner::VerificationKey>;
  using PublicKey = std::vector<typename Inner::PublicKey>;

  struct Ciphertext {
    BitString test;  ///< slot mask, popcount 2 * lambda_r
    std::vector<typename Inner::Ciphertext> cts;
    std::vector<BitString> v;
  };

  Cva(Inner inner, std::size_t lambda_r) : inner_(std::move(inner)), lambda_r_(lambda_r) {
    if (lambda_r_ == 0) throw std::invalid_argument("Cva: lambda_r must be positive");
  }

  const Inner& inner() const { return inner_; }
  std::size_t lambda_r() const { return lambda_r_; }
  std::size_t slots() const { return 4 * lambda_r_; }
  std::size_t message_bits() const { return inner_.message_bits(); }
  std::string name() const { return "cva(" + inner_.name() + ")"; }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    SecretKey sk;
    VerificationKey vk;
    for (std::size_t i = 0; i < slots(); ++i) {
      auto [s, v] = inner_.skgen(derive_seed("qpke.cva.slot", seed, i));
      sk.push_back(std::move(s));
      vk.push_back(std::move(v));
    }
    return {std::move(sk), std::move(vk)};
  }

  PublicKey pkgen(const SecretKey& sk, Rng& rng) const {
    check_arity(sk.size(), "pkgen");
    PublicKey pk;
    for (const auto& s : sk) pk.push_back(inner_.pkgen(s, rng));
    return pk;
  }

  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    check_arity(vk.size(), "enc");
    check_arity(pk.size(), "enc");
    if (msg.size() != message_bits()) throw std::invalid_argument("Cva::enc: message length");
    Ciphertext ct;
    ct.test = choose_subset(slots(), 2 * lambda_r_, rng);
    for (std::size_t i = 0; i < slots(); ++i) {
      const BitString u = rng.bits(message_bits());
      ct.cts.push_back(inner_.enc(vk[i], std::move(pk[i]), u, rng));
      ct.v.push_back(ct.test.get(i) ? u : u ^ msg);
    }
    return ct;
  }

  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    if (sk.size() != slots() || !well_formed(ct)) return std::nullopt;
    std::vector<BitString> votes;
    for (std::size_t i = 0; i < slots(); ++i) {
      const auto u = inner_.dec(sk[i], ct.cts[i]);
      if (!u || u->size() != message_bits()) return std::nullopt;
      if (ct.test.get(i)) {
        if (*u != ct.v[i]) return std::nullopt;
      } else {
        votes.push_back(*u ^ ct.v[i]);
      }
    }
    return majority(votes);
  }

  Bytes serialize_ct(const Ciphertext& ct) const {
    if (!shaped(ct)) throw std::invalid_argument("Cva::serialize_ct: malformed");
    ByteWriter w;
    w.put_fixed_bits(ct.test);
    for (std::size_t i = 0; i < slots(); ++i) {
      w.put_bytes(inner_.serialize_ct(ct.cts[i]));
      w.put_fixed_bits(ct.v[i]);
    }
    return w.bytes();
  }

  Ciphertext parse_ct(std::span<const std::uint8_t> bytes) const {
    ByteReader r(bytes);
    Ciphertext ct;
    ct.test = r.get_fixed_bits(slots());
    for (std::size_t i = 0; i < slots(); ++i) {
      const Bytes blob = r.get_bytes();
      ct.cts.push_back(inner_.parse_ct(blob));
      ct.v.push_back(r.get_fixed_bits(message_bits()));
    }
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
    auto vk = get_each(r, slots(), [&](auto b) { return inner_.parse_vk(b); }, "cva vk");
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
    auto pk = get_each(r, slots(), [&](auto b) { return inner_.parse_pk(b); }, "cva pk");
    r.expect_done();
    return pk;
  }

 private:
  void check_arity(std::size_t n, const char* where) const {
    if (n != slots()) {
      throw std::invalid_argument(std::string("Cva::") + where + ": expected " +
                                  std::to_string(slots()) + " component keys");
    }
  }

  // Field sizes only; any Test mask serializes.
  bool shaped(const Ciphertext& ct) const {
    if (ct.test.size() != slots() || ct.cts.size() != slots() || ct.v.size() != slots()) {
      return false;
    }
    for (const auto& v : ct.v) {
      if (v.size() != message_bits()) return false;
    }
    return true;
  }

  bool well_formed(const Ciphertext& ct) const {
    return shaped(ct) && ct.test.popcount() == 2 * lambda_r_;
  }

  Inner inner_;
  std::size_t lambda_r_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_CVA_H_
