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

#include "qpke/base.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qpke/hash.h"
#include "qpke/scheme.h"
#include "qpke/serialize.h"

namespace qpke::base {
namespace {

using primitives::SigningKey;

BitString bits(std::string_view s) { return BitString::from_string(s); }

class BaseTest : public ::testing::Test {
 protected:
  BaseParams params = BaseParams::micro();
  std::pair<SigningKey, BitString> keys = base_skgen(bits("1011"), params);
  const SigningKey& sk() const { return keys.first; }
  const BitString& vk() const { return keys.second; }

  // Two-branch state with arbitrary (not necessarily signed) B contents.
  qsim::SparseState two_branch(const BitString& x0, const BitString& x1) const {
    const std::pair<BitString, qsim::Amplitude> terms[] = {{x0, 1.0}, {x1, 1.0}};
    return qsim::superpose(params.layout(), terms);
  }
};

TEST(DecodingRule, ToyBranchArithmetic) {
  // sigma0 = 0101, sigma1 = 0110: x0 = 00101, x1 = 10110.
  BitString diff = bits("0").concat(bits("0101"));
  diff ^= bits("1").concat(bits("0110"));
  EXPECT_EQ(diff, bits("10011"));
  EXPECT_TRUE(bits("10000").dot(diff));
  EXPECT_FALSE(bits("00000").dot(diff));
}

TEST_F(BaseTest, SkgenMatchesSignatureGen) {
  const auto again = base_skgen(bits("1011"), params);
  EXPECT_EQ(again.second, vk());
  EXPECT_EQ(primitives::sig_gen(bits("1011"), params.sig).vk, vk());
  EXPECT_EQ(vk().size(), params.sig.vk_len());
}

TEST_F(BaseTest, PublicKeyIsEqualSuperpositionOfSignedBranches) {
  Rng rng(1);
  const auto pk = base_pkgen(sk(), params, rng);
  ASSERT_EQ(pk.r.size(), params.u);
  ASSERT_EQ(pk.state.support_size(), 2u);
  for (bool alpha : {false, true}) {
    const BitString head = BitString::from_uint(alpha, 1);
    const BitString x = head.concat(primitives::sig_sign(sk(), head.concat(pk.r)));
    EXPECT_EQ(x, branch_string(sk(), alpha, pk.r));
    const auto amp = pk.state.amplitude(x);
    EXPECT_NEAR(amp.real(), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(amp.imag(), 0.0, 1e-12);
    EXPECT_EQ(x.get(0), alpha);
  }
}

TEST_F(BaseTest, FreshRandomizersAtSixtyFourBits) {
  BaseParams wide = params;
  wide.u = 64;
  Rng rng(2);
  std::set<BitString> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(base_pkgen(sk(), wide, rng).r);
  EXPECT_EQ(seen.size(), 1000u);
}

TEST_F(BaseTest, HonestRoundTripAndParityLaw) {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    for (bool b : {false, true}) {
      const auto pk = base_pkgen(sk(), params, rng);
      BitString diff = branch_string(sk(), false, pk.r);
      diff ^= branch_string(sk(), true, pk.r);
      const auto ct = base_enc(vk(), params, pk, b, rng);
      ASSERT_TRUE(ct.present);
      ASSERT_EQ(ct.d.dot(diff), b);
      ASSERT_EQ(base_dec(sk(), params, ct), std::optional<bool>(b));
    }
  }
}

TEST_F(BaseTest, BothBranchesInvalidAlwaysRejects) {
  Rng rng(4);
  const BitString r = rng.bits(params.u);
  const std::size_t n = params.sig.sig_len();
  const auto state = two_branch(bits("0").concat(rng.bits(n)), bits("1").concat(rng.bits(n)));
  for (int i = 0; i < 200; ++i) {
    EXPECT_FALSE(base_enc(vk(), params, {r, state}, true, rng).present);
  }
}

TEST_F(BaseTest, HalfValidSuperposition) {
  Rng rng(5);
  const BitString r = rng.bits(params.u);
  const BitString good = branch_string(sk(), false, r);
  const BitString garbage = bits("1").concat(rng.bits(params.sig.sig_len()));
  const auto state = two_branch(good, garbage);

  // The D register carries the check outcome with weight 1/2 on each value.
  const auto checked = qsim::coherent_eval(
      qsim::add_register(state, kRegD, 1),
      [&](const BitString& ab) {
        return BitString::from_uint(
            primitives::sig_verify(vk(), ab.slice(0, 1).concat(r), ab.slice(1, ab.size() - 1),
                                   params.sig),
            1);
      },
      std::vector<std::string>{kRegA, kRegB}, kRegD);
  const auto dist = qsim::exact_distribution(checked, qsim::MeasurementBasis::kComputational,
                                             std::vector<std::string>{kRegD});
  EXPECT_NEAR(dist.at(bits("1")), 0.5, 1e-12);
  EXPECT_NEAR(dist.at(bits("0")), 0.5, 1e-12);

  int accepted = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto post = enc_check(vk(), params, r, state, rng);
    if (!post) continue;
    ++accepted;
    ASSERT_EQ(post->support_size(), 1u);
    ASSERT_EQ(post->terms().begin()->first, good);
  }
  EXPECT_NEAR(accepted / 4000.0, 0.5, 0.03);

  // A single accepted branch measures to a uniform d.
  const auto post = qsim::SparseState::from_terms(params.layout(), {{good, 1.0}});
  const auto hd = qsim::exact_distribution(post, qsim::MeasurementBasis::kHadamard,
                                           std::vector<std::string>{kRegA});
  EXPECT_EQ(hd.size(), 2u);
  EXPECT_NEAR(hd.begin()->second, 0.5, 1e-12);
}

TEST_F(BaseTest, AcceptedSupportStaysInSignedBranches) {
  // Honest branches mixed with garbage ones: whatever survives the check is
  // one of the two signed strings.
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const BitString r = rng.bits(params.u);
    const BitString x0 = branch_string(sk(), false, r);
    const BitString x1 = branch_string(sk(), true, r);
    std::vector<std::pair<BitString, qsim::Amplitude>> terms{
        {x0, {rng.uniform(), rng.uniform()}}, {x1, {rng.uniform(), rng.uniform()}}};
    for (int g = 0; g < 3; ++g) {
      terms.emplace_back(BitString::from_uint(rng.bit(), 1).concat(rng.bits(params.sig.sig_len())),
                         qsim::Amplitude{rng.uniform(), rng.uniform()});
    }
    const auto state = qsim::superpose(params.layout(), terms);
    const auto post = enc_check(vk(), params, r, state, rng);
    if (!post) continue;
    for (const auto& [x, amp] : post->terms()) {
      EXPECT_TRUE(x == x0 || x == x1);
    }
  }
}

TEST_F(BaseTest, WrongWidthsAndClashingAncillaReject) {
  Rng rng(7);
  const auto pk = base_pkgen(sk(), params, rng);
  EXPECT_FALSE(enc_check(vk(), params, pk.r.slice(0, 3), pk.state, rng));
  const auto narrow = qsim::make_basis_state(qsim::RegisterLayout{{kRegA, 1}, {kRegB, 5}},
                                             bits("000000"));
  EXPECT_FALSE(enc_check(vk(), params, pk.r, narrow, rng));
  const auto clash = qsim::add_register(pk.state, kRegD, 1);
  EXPECT_FALSE(enc_check(vk(), params, pk.r, clash, rng));
}

TEST_F(BaseTest, ExternalRegistersComeBackAsResidual) {
  Rng rng(8);
  const auto pk = base_pkgen(sk(), params, rng);
  const auto tail = qsim::make_basis_state(qsim::RegisterLayout{{"C", 2}}, bits("10"));
  const auto out = base_enc_full(vk(), params, {pk.r, qsim::tensor(pk.state, tail)}, true, rng);
  ASSERT_TRUE(out.ct.present);
  ASSERT_TRUE(out.residual.has_value());
  EXPECT_EQ(out.residual->layout().width(), 2u);
  EXPECT_EQ(base_dec(sk(), params, out.ct), std::optional<bool>(true));
  EXPECT_FALSE(base_enc_full(vk(), params, pk, false, rng).residual.has_value());
}

TEST_F(BaseTest, DecRejectsBottomAndMalformed) {
  EXPECT_FALSE(base_dec(sk(), params, BaseCiphertext::bottom()));
  Rng rng(9);
  BaseCiphertext ct{true, rng.bits(params.u), BitString(params.branch_len() - 1)};
  EXPECT_FALSE(base_dec(sk(), params, ct));
  ct.d = BitString(params.branch_len());
  EXPECT_EQ(base_dec(sk(), params, ct), std::optional<bool>(false));
}

TEST_F(BaseTest, StrawmanSkipsTheCheck) {
  BaseParams straw = params;
  straw.verify = false;
  Rng rng(10);
  const std::size_t n = params.sig.sig_len();
  const auto state = two_branch(bits("0").concat(rng.bits(n)), bits("1").concat(rng.bits(n)));
  EXPECT_TRUE(base_enc(vk(), straw, {rng.bits(params.u), state}, false, rng).present);
  EXPECT_FALSE(base_enc(vk(), params, {rng.bits(params.u), state}, false, rng).present);
}

TEST_F(BaseTest, CiphertextEncoding) {
  Rng rng(11);
  const auto ct = base_enc(vk(), params, base_pkgen(sk(), params, rng), true, rng);
  const Bytes wire = serialize_base_ct(ct, params);
  EXPECT_EQ(wire.size(), 1 + (params.u + 7) / 8 + (params.branch_len() + 7) / 8);
  EXPECT_EQ(wire[0], 0x01);
  EXPECT_EQ(parse_base_ct(wire, params), ct);
  const Bytes bottom = serialize_base_ct(BaseCiphertext::bottom(), params);
  EXPECT_EQ(bottom, Bytes{0x00});
  EXPECT_EQ(parse_base_ct(bottom, params), BaseCiphertext::bottom());
  EXPECT_THROW(parse_base_ct(Bytes{0x02}, params), ParseError);
  EXPECT_THROW(parse_base_ct(Bytes(wire.begin(), wire.end() - 1), params), ParseError);
}

TEST(BaseSchemeTest, MultiBitRoundTrip) {
  const BaseScheme scheme(BaseParams::micro(), 8);
  const auto [sk, vk] = scheme.skgen(bits("110"));
  ASSERT_EQ(sk.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    const BitString seed = primitives::hash(
        "qpke.base.slot", bits("110").concat(BitString::from_uint(i, 64)), 128);
    EXPECT_EQ(primitives::sig_gen(seed, BaseParams::micro().sig).vk, vk[i]);
  }
  EXPECT_EQ(std::set<BitString>(vk.begin(), vk.end()).size(), 8u);
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const BitString msg = rng.bits(8);
    const auto ct = scheme.enc(vk, scheme.pkgen(sk, rng), msg, rng);
    EXPECT_EQ(scheme.dec(sk, ct), std::optional<BitString>(msg));
  }
}

TEST(BaseSchemeTest, SlotBottomPropagatesAndArity) {
  const BaseScheme scheme(BaseParams::micro(), 4);
  const auto [sk, vk] = scheme.skgen(bits("1"));
  Rng rng(13);
  auto pk = scheme.pkgen(sk, rng);
  auto ct = scheme.enc(vk, pk, bits("1010"), rng);
  ASSERT_TRUE(scheme.dec(sk, ct));
  ct[2] = BaseCiphertext::bottom();
  EXPECT_FALSE(scheme.dec(sk, ct));
  pk.pop_back();
  const auto short_ct = scheme.enc(vk, pk, bits("1010"), rng);
  EXPECT_EQ(short_ct.size(), 4u);
  EXPECT_FALSE(scheme.dec(sk, short_ct));
  EXPECT_THROW(scheme.enc(vk, scheme.pkgen(sk, rng), bits("10"), rng), std::invalid_argument);
}

TEST(BaseSchemeTest, EmptyMessage) {
  const BaseScheme scheme(BaseParams::micro(), 0);
  const auto [sk, vk] = scheme.skgen(bits("1"));
  Rng rng(14);
  const auto ct = scheme.enc(vk, scheme.pkgen(sk, rng), BitString(), rng);
  EXPECT_TRUE(ct.empty());
  EXPECT_EQ(scheme.dec(sk, ct), std::optional<BitString>(BitString()));
}

TEST(BaseSchemeTest, SerializationRoundTrips) {
  const BaseScheme scheme(BaseParams::micro(), 3);
  const auto [sk, vk] = scheme.skgen(bits("01"));
  Rng rng(15);
  const auto pk = scheme.pkgen(sk, rng);
  auto ct = scheme.enc(vk, pk, bits("011"), rng);
  ct[1] = BaseCiphertext::bottom();
  EXPECT_EQ(scheme.parse_ct(scheme.serialize_ct(ct)), ct);
  EXPECT_EQ(scheme.parse_vk(scheme.serialize_vk(vk)), vk);
  const auto parsed = scheme.parse_pk(scheme.serialize_pk(pk));
  ASSERT_EQ(parsed.size(), pk.size());
  for (std::size_t i = 0; i < pk.size(); ++i) {
    EXPECT_EQ(parsed[i].r, pk[i].r);
    EXPECT_EQ(parsed[i].state.terms(), pk[i].state.terms());
  }
  EXPECT_EQ(scheme.serialize_pk(parsed), scheme.serialize_pk(pk));
}

static_assert(QpkeScheme<BaseScheme>);

}  // namespace
}  // namespace qpke::base
