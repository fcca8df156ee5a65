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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dense_oracle.h"
#include "qpke/hash.h"
#include "qpke/serialize.h"
#include "qpke/signature.h"
#include "qpke/ske.h"
#include "qpke/tmac.h"

namespace qpke::primitives {

void PrintTo(const SigParams& p, std::ostream* os) { *os << p.to_string(); }

namespace {

BitString bits(std::string_view s) { return BitString::from_string(s); }

std::string repeat(std::string_view s, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += s;
  return out;
}

// Vectors produced by tests/oracles/sponge_reference.py, an independent
// implementation written from docs/hash.md.
TEST(Sponge, MatchesReferenceImplementation) {
  EXPECT_EQ(hash("qpke.test", bits(""), 128).to_hex(), "2bbb63711135ac2e6215a93826dc5713");
  EXPECT_EQ(hash("qpke.test", bits("1"), 128).to_hex(), "86d909befe8ed5d483a1268157527e86");
  EXPECT_EQ(hash("qpke.test", bits("1011001110001"), 64).to_hex(), "33937919a5e2ce48");
  EXPECT_EQ(hash("qpke.test", bits(repeat("01", 100)), 300).to_hex(),
            "6c85ff7d189a36e32c8add340802872b8126f9066fd2e0a37f78245aaab517dda75cd3d38008");
  EXPECT_EQ(prf_eval(bits(repeat("1", 128)), bits("0000000"), 128).to_hex(),
            "9c0bd1c2fac6973d69efd399923ec51c");
  EXPECT_EQ(prf_eval(bits(repeat("10", 64)), bits("111000111"), 29).to_hex(), "40eea017");
}

TEST(Sponge, IncrementalAbsorbMatchesOneShot) {
  Rng rng(1);
  const BitString msg = rng.bits(1000);
  const Bytes raw = msg.to_bytes();
  Sponge a("t");
  a.absorb(raw);
  Sponge b("t");
  for (std::size_t i = 0; i < raw.size(); i += 7) {
    b.absorb(std::span(raw).subspan(i, std::min<std::size_t>(7, raw.size() - i)));
  }
  EXPECT_EQ(a.squeeze(256), b.squeeze(256));
}

TEST(Prf, DeterministicAndLengthExact) {
  const BitString k = bits(repeat("0110", 32));
  EXPECT_EQ(prf_eval(k, bits("101"), 77), prf_eval(k, bits("101"), 77));
  EXPECT_EQ(prf_eval(k, bits("101"), 77).size(), 77u);
  EXPECT_NE(prf_eval(k, bits("101"), 128), prf_eval(k, bits("1010"), 128));
  EXPECT_NE(prf_eval(k, "a", bits("1"), 64), prf_eval(k, "b", bits("1"), 64));
}

TEST(Prf, OutputBitBiasAndCollisions) {
  Rng rng(2);
  const BitString k = rng.bits(128);
  std::vector<int> ones(128, 0);
  std::set<BitString> seen;
  constexpr int kInputs = 10000;
  for (int i = 0; i < kInputs; ++i) {
    const BitString out = prf_eval(k, BitString::from_uint(i, 32), 128);
    for (std::size_t j = 0; j < 128; ++j) ones[j] += out.get(j);
    seen.insert(out);
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(kInputs));
  for (int c : ones) EXPECT_LE(std::abs(c / double(kInputs) - 0.5), 0.02);
}

TEST(SigParams, LengthsAndValidation) {
  EXPECT_EQ(SigParams::toy().sig_len(), 35344u);
  EXPECT_EQ(SigParams::micro().sig_len(), 2628u);
  EXPECT_EQ(SigParams::demo().sig_len(), 24u + 24u * (128 + 2 * 128 * 128) + 2 * 128 * 128);
  EXPECT_THROW((SigParams{12, 4}.validate()), std::invalid_argument);
  EXPECT_THROW((SigParams{16, 33}.validate()), std::invalid_argument);
  EXPECT_EQ(SigParams::one_time().sig_len(), 512u);
}

class SignatureTest : public ::testing::TestWithParam<SigParams> {};

TEST_P(SignatureTest, GenIsDeterministicAndVkHasHashLength) {
  const auto a = sig_gen(bits("1011"), GetParam());
  const auto b = sig_gen(bits("1011"), GetParam());
  EXPECT_EQ(a.vk, b.vk);
  EXPECT_EQ(a.vk.size(), GetParam().lambda_h);
  EXPECT_NE(sig_gen(bits("1010"), GetParam()).vk, a.vk);
}

TEST_P(SignatureTest, SignIsDeterministicAndVerifies) {
  const auto kp = sig_gen(bits("01"), GetParam());
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const BitString msg = rng.bits(1 + rng.below(100));
    const BitString sig = sig_sign(kp.sk, msg);
    EXPECT_EQ(sig.size(), GetParam().sig_len());
    EXPECT_EQ(sig, sig_sign(sig_gen(bits("01"), GetParam()).sk, msg));
    EXPECT_TRUE(sig_verify(kp.vk, msg, sig, GetParam()));
    EXPECT_FALSE(sig_verify(kp.vk, msg.concat(bits("1")), sig, GetParam()));
    EXPECT_FALSE(sig_verify(kp.vk, msg, sig.slice(0, sig.size() - 1), GetParam()));
  }
}

INSTANTIATE_TEST_SUITE_P(Profiles, SignatureTest,
                         ::testing::Values(SigParams::one_time(), SigParams::micro(),
                                           SigParams::toy()),
                         [](const auto& info) {
                           return "lambda" + std::to_string(info.param.lambda_h) + "_depth" +
                                  std::to_string(info.param.depth);
                         });

TEST(Signature, DistinctSeedsGiveDistinctVks) {
  std::set<BitString> vks;
  for (int i = 0; i < 1000; ++i) vks.insert(sig_gen(BitString::from_uint(i, 32), SigParams::toy()).vk);
  // Collision probability over 1000 keys at 32 bits is about 1.2e-4.
  EXPECT_EQ(vks.size(), 1000u);
}

TEST(Signature, SingleBitFlipsAreRejected) {
  const auto params = SigParams::toy();
  const auto kp = sig_gen(bits("111"), params);
  const BitString msg = bits("0110");
  const BitString sig = sig_sign(kp.sk, msg);
  Rng rng(4);
  int rejected = 0;
  constexpr int kFlips = 1000;
  for (int i = 0; i < kFlips; ++i) {
    BitString bad = sig;
    bad.flip(rng.below(bad.size()));
    rejected += !sig_verify(kp.vk, msg, bad, params);
  }
  EXPECT_GE(rejected, 990);
}

TEST(Signature, WrongVkRejects) {
  const auto params = SigParams::micro();
  const auto a = sig_gen(bits("0"), params), b = sig_gen(bits("1"), params);
  const BitString msg = bits("1100");
  EXPECT_FALSE(sig_verify(b.vk, msg, sig_sign(a.sk, msg), params));
  EXPECT_FALSE(sig_verify(a.vk.slice(0, 8), msg, sig_sign(a.sk, msg), params));
}

TEST(Ske, RoundTripAndLengths) {
  Rng rng(5);
  for (auto mode : {SkeMode::kCpa, SkeMode::kCca}) {
    for (int i = 0; i < 50; ++i) {
      const BitString key = ske_keygen(rng);
      const BitString msg = rng.bits(rng.below(400));
      const BitString ct = ske_enc(key, msg, mode, rng);
      EXPECT_EQ(ct.size(), ske_ct_len(msg.size(), mode));
      ASSERT_TRUE(ske_dec(key, ct, mode).has_value());
      EXPECT_EQ(*ske_dec(key, ct, mode), msg);
    }
  }
  EXPECT_EQ(ske_ct_len(10, SkeMode::kCpa), 10u + 128u);
}

TEST(Ske, CcaRejectsEveryBitFlip) {
  Rng rng(6);
  const BitString key = ske_keygen(rng);
  const BitString ct = ske_enc(key, rng.bits(100), SkeMode::kCca, rng);
  for (int i = 0; i < 1000; ++i) {
    BitString bad = ct;
    bad.flip(rng.below(bad.size()));
    EXPECT_FALSE(ske_dec(key, bad, SkeMode::kCca).has_value());
  }
  EXPECT_FALSE(ske_dec(key, ct.slice(0, 100), SkeMode::kCca).has_value());
}

TEST(Ske, FixedIvIsDeterministic) {
  const BitString key(128), iv = BitString::from_uint(9, 128), msg = bits("10101");
  EXPECT_EQ(ske_enc_with_iv(key, iv, msg, SkeMode::kCpa), ske_enc_with_iv(key, iv, msg, SkeMode::kCpa));
  EXPECT_THROW(ske_enc_with_iv(key, bits("1"), msg, SkeMode::kCpa), std::invalid_argument);
}

// Dense construction of the token: start from |v>, apply H where theta = 1.
TEST(Tmac, TokenMatchesDenseConstruction) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const TmacParams params{1 + rng.below(6), 2};
    const TmacKey key = tmac_keygen(rng.bits(64), params);
    const auto joint = tmac_token(key).joint_state();
    qpke::testing::DenseState dense(params.qubits());
    dense.set(key.values, 1.0);
    for (std::size_t q = 0; q < params.qubits(); ++q) {
      if (key.theta.get(q)) dense.hadamard(q);
    }
    const auto got = qsim::dense_reference(joint);
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_NEAR(std::abs(got[i] - dense.amp[i]), 0.0, 1e-12);
    }
  }
}

TEST(Tmac, ExtremeBases) {
  TmacKey key{{3, 1}, bits("000"), bits("101")};
  EXPECT_EQ(tmac_token(key).joint_state().support_size(), 1u);
  key.theta = bits("111");
  const auto plus = tmac_token(key).joint_state();
  EXPECT_EQ(plus.support_size(), 8u);
  for (const auto& [b, a] : plus.terms()) EXPECT_NEAR(std::abs(a), 1 / std::sqrt(8.0), 1e-12);
}

TEST(Tmac, HonestSignVerifiesAndConsumes) {
  Rng rng(8);
  const TmacParams params{16, 16};
  for (int i = 0; i < 100; ++i) {
    const TmacKey key = tmac_keygen(rng.bits(128), params);
    TmacToken token = tmac_token(key);
    const BitString msg = rng.bits(50);
    const BitString sig = tmac_sign(token, msg, rng);
    EXPECT_TRUE(tmac_verify(key, msg, sig));
    EXPECT_TRUE(token.consumed());
    EXPECT_THROW(tmac_sign(token, msg, rng), std::logic_error);
    // Positions measured in their preparation basis reproduce v exactly.
    const BitString h = tmac_hash(msg, params);
    for (std::size_t q = 0; q < params.qubits(); ++q) {
      if (key.theta.get(q) == h.get(q / params.lambda_t)) {
        ASSERT_EQ(sig.get(q), key.values.get(q));
      }
    }
  }
}

TEST(Tmac, RandomSignaturesAreRejected) {
  Rng rng(9);
  const TmacParams params{16, 16};
  const TmacKey key = tmac_keygen(rng.bits(128), params);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += tmac_verify(key, rng.bits(8), rng.bits(params.qubits()));
  EXPECT_EQ(accepted, 0);
  EXPECT_FALSE(tmac_verify(key, bits("1"), BitString(3)));
}

TEST(Serialize, RoundTripAndTruncation) {
  ByteWriter w;
  w.put_u8(7);
  w.put_u32(0xdeadbeef);
  w.put_bits(bits("1011001"));
  const Bytes raw{1, 2, 3};
  w.put_bytes(raw);
  const Bytes out = std::move(w).bytes();
  ByteReader r(out);
  EXPECT_EQ(r.get_u8(), 7);
  EXPECT_EQ(r.get_u32(), 0xdeadbeefu);
  EXPECT_EQ(r.get_bits(), bits("1011001"));
  EXPECT_EQ(r.get_bytes(), raw);
  EXPECT_NO_THROW(r.expect_done());
  ByteReader short_reader(std::span<const std::uint8_t>(out).first(out.size() - 1));
  short_reader.get_u8();
  short_reader.get_u32();
  short_reader.get_bits();
  EXPECT_THROW(short_reader.get_bytes(), ParseError);
}

}  // namespace
}  // namespace qpke::primitives
