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

#include "qpke/ske.h"

#include <algorithm>
#include <stdexcept>

#include "qpke/hash.h"

namespace qpke::primitives {

namespace {

constexpr std::size_t kBlockBits = 128;

BitString keystream(const BitString& key, const BitString& iv, std::size_t n) {
  BitString out(n);
  for (std::size_t j = 0; j * kBlockBits < n; ++j) {
    const std::size_t len = std::min(kBlockBits, n - j * kBlockBits);
    out.assign(j * kBlockBits,
               prf_eval(key, "qpke.ske.ctr", iv.concat(BitString::from_uint(j, 64)), len));
  }
  return out;
}

BitString enc_key(const BitString& key) { return prf_eval(key, "qpke.ske.enc", {}, kSkeKeyBits); }
BitString mac_key(const BitString& key) { return prf_eval(key, "qpke.ske.mac", {}, kSkeKeyBits); }

BitString mac(const BitString& key, const BitString& iv_body) {
  return prf_eval(mac_key(key), "qpke.ske.tag", iv_body, kSkeTagBits);
}

}  // namespace

BitString ske_keygen(Rng& rng) { return rng.bits(kSkeKeyBits); }

std::size_t ske_ct_len(std::size_t msg_bits, SkeMode mode) {
  return kSkeIvBits + msg_bits + (mode == SkeMode::kCca ? kSkeTagBits : 0);
}

BitString ske_enc(const BitString& key, const BitString& msg, SkeMode mode, Rng& rng) {
  return ske_enc_with_iv(key, rng.bits(kSkeIvBits), msg, mode);
}

BitString ske_enc_with_iv(const BitString& key, const BitString& iv, const BitString& msg,
                          SkeMode mode) {
  if (iv.size() != kSkeIvBits) throw std::invalid_argument("ske: IV must be 128 bits");
  const BitString k = mode == SkeMode::kCca ? enc_key(key) : key;
  BitString ct = iv.concat(msg ^ keystream(k, iv, msg.size()));
  if (mode == SkeMode::kCca) ct.append(mac(key, ct));
  return ct;
}

std::optional<BitString> ske_dec(const BitString& key, const BitString& ct, SkeMode mode) {
  const std::size_t overhead = ske_ct_len(0, mode);
  if (ct.size() < overhead) return std::nullopt;
  const std::size_t body_len = ct.size() - overhead;
  const BitString iv = ct.slice(0, kSkeIvBits);
  BitString k = key;
  if (mode == SkeMode::kCca) {
    const BitString iv_body = ct.slice(0, kSkeIvBits + body_len);
    if (mac(key, iv_body) != ct.slice(kSkeIvBits + body_len, kSkeTagBits)) return std::nullopt;
    k = enc_key(key);
  }
  return ct.slice(kSkeIvBits, body_len) ^ keystream(k, iv, body_len);
}

}  // namespace qpke::primitives
