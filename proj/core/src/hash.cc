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

#include "qpke/hash.h"

#include <algorithm>
#include <bit>
#include <cstring>

namespace qpke::primitives {

namespace {

constexpr std::array<std::uint64_t, 8> kRoundConstants = {
    0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
    0x082efa98ec4e6c89ULL, 0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL,
    0xc0ac29b7c97c50ddULL, 0x3f84d5b5b5470917ULL,
};

std::uint64_t load_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_le(std::uint64_t v, std::uint8_t* p) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

void Sponge::permute(std::array<std::uint64_t, 4>& s) {
  std::uint64_t v0 = s[0], v1 = s[1], v2 = s[2], v3 = s[3];
  for (std::uint64_t rc : kRoundConstants) {
    v0 += v1; v1 = std::rotl(v1, 13); v1 ^= v0; v0 = std::rotl(v0, 32);
    v2 += v3; v3 = std::rotl(v3, 16); v3 ^= v2;
    v0 += v3; v3 = std::rotl(v3, 21); v3 ^= v0;
    v2 += v1; v1 = std::rotl(v1, 17); v1 ^= v2; v2 = std::rotl(v2, 32);
    v0 ^= rc;
  }
  s = {v0, v1, v2, v3};
}

Sponge::Sponge(std::string_view tag)
    : state_{0x6a09e667f3bcc908ULL, 0xbb67ae8584caa73bULL, 0x3c6ef372fe94f82bULL,
             0xa54ff53a5f1d36f1ULL} {
  absorb_u64(tag.size());
  absorb({reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size()});
}

void Sponge::absorb_block(const std::uint8_t* block) {
  state_[0] ^= load_le(block);
  state_[1] ^= load_le(block + 8);
  permute(state_);
}

void Sponge::absorb(std::span<const std::uint8_t> bytes) {
  const std::uint8_t* p = bytes.data();
  std::size_t n = bytes.size();
  if (buf_len_ > 0) {
    const std::size_t take = std::min(n, kRateBytes - buf_len_);
    std::memcpy(buf_.data() + buf_len_, p, take);
    buf_len_ += take;
    p += take;
    n -= take;
    if (buf_len_ < kRateBytes) return;
    absorb_block(buf_.data());
    buf_len_ = 0;
  }
  for (; n >= kRateBytes; n -= kRateBytes, p += kRateBytes) absorb_block(p);
  std::memcpy(buf_.data(), p, n);
  buf_len_ = n;
}

void Sponge::absorb_u64(std::uint64_t value) {
  std::uint8_t b[8];
  store_le(value, b);
  absorb(b);
}

void Sponge::absorb_bits(const BitString& bits) {
  absorb_u64(bits.size());
  std::size_t remaining = (bits.size() + 7) / 8;
  std::uint8_t b[8];
  for (std::uint64_t w : bits.words()) {
    store_le(w, b);
    const std::size_t take = std::min<std::size_t>(8, remaining);
    absorb({b, take});
    remaining -= take;
  }
}

BitString Sponge::squeeze(std::size_t out_bits) {
  if (!squeezing_) {
    // 10*1 padding inside the current block.
    std::memset(buf_.data() + buf_len_, 0, kRateBytes - buf_len_);
    buf_[buf_len_] ^= 0x01;
    buf_[kRateBytes - 1] ^= 0x80;
    absorb_block(buf_.data());
    buf_len_ = 0;
    squeezing_ = true;
  }
  BitString out(out_bits);
  auto words = out.mutable_words();
  for (std::size_t i = 0; i < words.size(); i += 2) {
    words[i] = state_[0];
    if (i + 1 < words.size()) words[i + 1] = state_[1];
    permute(state_);
  }
  if (out_bits % 64 != 0) words.back() &= (std::uint64_t{1} << (out_bits % 64)) - 1;
  return out;
}

BitString hash(std::string_view tag, const BitString& msg, std::size_t out_bits) {
  Sponge s(tag);
  s.absorb_bits(msg);
  return s.squeeze(out_bits);
}

BitString keyed_hash(std::string_view tag, const BitString& key, const BitString& msg,
                     std::size_t out_bits) {
  Sponge s(tag);
  s.absorb_bits(key);
  s.absorb_bits(msg);
  return s.squeeze(out_bits);
}

BitString prf_eval(const BitString& key, const BitString& input, std::size_t out_bits) {
  static const Sponge kPrf("qpke.prf");
  Sponge s = kPrf;
  s.absorb_bits(key);
  s.absorb_bits(input);
  return s.squeeze(out_bits);
}

BitString prf_eval(const BitString& key, std::string_view label, const BitString& input,
                   std::size_t out_bits) {
  static const Sponge kPrf("qpke.prf.labelled");
  Sponge s = kPrf;
  s.absorb_bits(key);
  s.absorb_u64(label.size());
  s.absorb({reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
  s.absorb_bits(input);
  return s.squeeze(out_bits);
}

}  // namespace qpke::primitives
