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

// Pass-through wrapper that counts calls into the wrapped scheme. Copies
// share one set of counters.

#ifndef QPKE_TRANSFORMS_COUNTING_H_
#define QPKE_TRANSFORMS_COUNTING_H_

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "qpke/scheme.h"

namespace qpke::transforms {

struct CallCounts {
  std::atomic<std::size_t> skgen{0};
  std::atomic<std::size_t> pkgen{0};
  std::atomic<std::size_t> enc{0};
  std::atomic<std::size_t> dec{0};
};

template <QpkeScheme Inner>
class Counting {
 public:
  using SecretKey = typename Inner::SecretKey;
  using VerificationKey = typename Inner::VerificationKey;
  using PublicKey = typename Inner::PublicKey;
  using Ciphertext = typename Inner::Ciphertext;

  explicit Counting(Inner inner)
      : inner_(std::move(inner)), counts_(std::make_shared<CallCounts>()) {}

  const CallCounts& counts() const { return *counts_; }
  const Inner& inner() const { return inner_; }
  std::size_t message_bits() const { return inner_.message_bits(); }
  std::string name() const { return inner_.name(); }

  std::pair<SecretKey, VerificationKey> skgen(const BitString& seed) const {
    ++counts_->skgen;
    return inner_.skgen(seed);
  }
  PublicKey pkgen(const SecretKey& sk, Rng& rng) const {
    ++counts_->pkgen;
    return inner_.pkgen(sk, rng);
  }
  Ciphertext enc(const VerificationKey& vk, PublicKey pk, const BitString& msg,
                 Rng& rng) const {
    ++counts_->enc;
    return inner_.enc(vk, std::move(pk), msg, rng);
  }
  std::optional<BitString> dec(const SecretKey& sk, const Ciphertext& ct) const {
    ++counts_->dec;
    return inner_.dec(sk, ct);
  }

  Bytes serialize_ct(const Ciphertext& ct) const { return inner_.serialize_ct(ct); }
  Ciphertext parse_ct(std::span<const std::uint8_t> b) const { return inner_.parse_ct(b); }
  Bytes serialize_vk(const VerificationKey& vk) const { return inner_.serialize_vk(vk); }
  VerificationKey parse_vk(std::span<const std::uint8_t> b) const { return inner_.parse_vk(b); }
  Bytes serialize_pk(const PublicKey& pk) const { return inner_.serialize_pk(pk); }
  PublicKey parse_pk(std::span<const std::uint8_t> b) const { return inner_.parse_pk(b); }

 private:
  Inner inner_;
  std::shared_ptr<CallCounts> counts_;
};

}  // namespace qpke::transforms

#endif  // QPKE_TRANSFORMS_COUNTING_H_
