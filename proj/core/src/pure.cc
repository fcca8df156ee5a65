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

#include "qpke/pure.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "qpke/hash.h"
#include "qpke/scheme.h"

namespace qpke::pure {

namespace {

const std::vector<std::string>& all_regs() {
  static const std::vector<std::string> regs{kRegR, kRegA, kRegB, kRegC};
  return regs;
}

const std::vector<std::string>& measured_regs() {
  static const std::vector<std::string> regs{kRegA, kRegB, kRegC};
  return regs;
}

bool has_register(const qsim::RegisterLayout& layout, const std::string& name,
                  std::size_t width) {
  return layout.contains(name) && layout.at(name).width == width;
}

BitString bit(bool b) { return BitString::from_uint(b ? 1 : 0, 1); }

}  // namespace

void PureParams::validate() const {
  sig.validate();
  if (u == 0 || u > 8) throw std::invalid_argument("PureParams: u must be in [1, 8]");
  if (v == 0 || v > 256) throw std::invalid_argument("PureParams: v must be in [1, 256]");
  if (branches() > qsim::kDefaultSupportCap) {
    throw std::invalid_argument("PureParams: 2^(u+1) exceeds the support cap");
  }
}

qsim::RegisterLayout PureParams::layout() const {
  return qsim::RegisterLayout{{kRegR, u}, {kRegA, 1}, {kRegB, v}, {kRegC, sig.sig_len()}};
}

std::string PureParams::to_string() const {
  return "u=" + std::to_string(u) + " v=" + std::to_string(v) + " " + sig.to_string();
}

std::pair<PureSecretKey, BitString> pure_skgen(const BitString& seed, const PureParams& params) {
  params.validate();
  auto kp = primitives::sig_gen(primitives::hash("qpke.pure.sig", seed, 128), params.sig);
  return {PureSecretKey{std::move(kp.sk), primitives::hash("qpke.pure.prf", seed, 128)},
          std::move(kp.vk)};
}

BitString pure_tag(const PureSecretKey& sk, const PureParams& params, bool b,
                   const BitString& r) {
  return primitives::prf_eval(sk.prf_key, bit(b).concat(r), params.v);
}

BitString pure_branch(const PureSecretKey& sk, const PureParams& params, bool b,
                      const BitString& r) {
  const BitString y = pure_tag(sk, params, b, r);
  const BitString sigma = primitives::sig_sign(sk.k, bit(b).concat(r).concat(y));
  return bit(b).concat(y).concat(sigma);
}

qsim::SparseState pure_pkgen(const PureSecretKey& sk, const PureParams& params) {
  params.validate();
  std::vector<std::pair<BitString, qsim::Amplitude>> terms;
  terms.reserve(params.branches());
  for (std::uint64_t ri = 0; ri < (std::uint64_t{1} << params.u); ++ri) {
    const BitString r = BitString::from_uint(ri, params.u);
    for (bool b : {false, true}) terms.emplace_back(r.concat(pure_branch(sk, params, b, r)), 1.0);
  }
  return qsim::superpose(params.layout(), terms);
}

std::optional<qsim::SparseState> pure_enc_check(const BitString& vk, const PureParams& params,
                                                const qsim::SparseState& state, Rng& rng) {
  const auto& layout = state.layout();
  if (!has_register(layout, kRegR, params.u) || !has_register(layout, kRegA, 1) ||
      !has_register(layout, kRegB, params.v) ||
      !has_register(layout, kRegC, params.sig.sig_len()) || layout.contains(kRegE)) {
    return std::nullopt;
  }
  const std::size_t u = params.u;
  const std::size_t v = params.v;
  const auto verifier = [&](const BitString& rabc) {
    // rabc = r || alpha || beta || gamma
    const BitString msg = rabc.slice(u, 1).concat(rabc.slice(0, u)).concat(rabc.slice(u + 1, v));
    const BitString sig = rabc.slice(u + 1 + v, rabc.size() - u - 1 - v);
    return bit(primitives::sig_verify(vk, msg, sig, params.sig));
  };
  const auto checked =
      qsim::coherent_eval(qsim::add_register(state, kRegE, 1), verifier, all_regs(), kRegE);
  auto m = qsim::measure_computational(checked, kRegE, rng);
  if (!m.outcome.get(0)) return std::nullopt;
  return qsim::drop_register(m.state, kRegE);
}

std::pair<BitString, qsim::SparseState> pure_collapse(const qsim::SparseState& state, Rng& rng) {
  auto m = qsim::measure_computational(state, kRegR, rng);
  return {std::move(m.outcome), qsim::drop_register(m.state, kRegR)};
}

PureCiphertext pure_enc(const BitString& vk, const PureParams& params,
                        const qsim::SparseState& state, bool b, Rng& rng) {
  auto accepted = pure_enc_check(vk, params, state, rng);
  if (!accepted) return PureCiphertext::bottom();
  auto [r, collapsed] = pure_collapse(qsim::apply_z_power(*accepted, kRegA, b), rng);
  auto m = qsim::measure_hadamard_all(collapsed, measured_regs(), rng);
  return PureCiphertext{true, std::move(r), std::move(m.outcome)};
}

std::optional<bool> pure_dec(const PureSecretKey& sk, const PureParams& params,
                             const PureCiphertext& ct) {
  if (!ct.present || ct.r.size() != params.u || ct.d.size() != params.measured_len()) {
    return std::nullopt;
  }
  BitString diff = pure_branch(sk, params, false, ct.r);
  diff ^= pure_branch(sk, params, true, ct.r);
  return ct.d.dot(diff);
}

void write_pure_ct(ByteWriter& w, const PureCiphertext& ct, const PureParams& params) {
  if (!ct.present) {
    w.put_u8(0x00);
    return;
  }
  if (ct.r.size() != params.u || ct.d.size() != params.measured_len()) {
    throw std::invalid_argument("write_pure_ct: field widths do not match params");
  }
  w.put_u8(0x01);
  w.put_fixed_bits(ct.r);
  w.put_fixed_bits(ct.d);
}

PureCiphertext read_pure_ct(ByteReader& r, const PureParams& params) {
  switch (r.get_u8()) {
    case 0x00:
      return PureCiphertext::bottom();
    case 0x01: {
      PureCiphertext ct;
      ct.present = true;
      ct.r = r.get_fixed_bits(params.u);
      ct.d = r.get_fixed_bits(params.measured_len());
      return ct;
    }
    default:
      throw ParseError("pure ciphertext: bad tag");
  }
}

// ---- PureScheme ----

PureScheme::PureScheme(PureParams params, std::size_t message_bits)
    : params_(params), ell_(message_bits) {
  params_.validate();
}

std::pair<PureScheme::SecretKey, PureScheme::VerificationKey> PureScheme::skgen(
    const BitString& seed) const {
  SecretKey sk;
  VerificationKey vk;
  for (std::size_t i = 0; i < ell_; ++i) {
    auto [k, v] = pure_skgen(derive_seed("qpke.pure.slot", seed, i), params_);
    sk.push_back(std::move(k));
    vk.push_back(std::move(v));
  }
  return {std::move(sk), std::move(vk)};
}

PureScheme::PublicKey PureScheme::pkgen(const SecretKey& sk, Rng&) const {
  if (sk.size() != ell_) throw std::invalid_argument("PureScheme::pkgen: key arity");
  PublicKey pk;
  for (const auto& k : sk) pk.push_back(pure_pkgen(k, params_));
  return pk;
}

PureScheme::Ciphertext PureScheme::enc(const VerificationKey& vk, PublicKey pk,
                                       const BitString& msg, Rng& rng) const {
  if (msg.size() != ell_) throw std::invalid_argument("PureScheme::enc: message length");
  Ciphertext ct(ell_);
  if (vk.size() != ell_ || pk.size() != ell_) return ct;
  for (std::size_t i = 0; i < ell_; ++i) ct[i] = pure_enc(vk[i], params_, pk[i], msg.get(i), rng);
  return ct;
}

std::optional<BitString> PureScheme::dec(const SecretKey& sk, const Ciphertext& ct) const {
  if (sk.size() != ell_ || ct.size() != ell_) return std::nullopt;
  BitString msg(ell_);
  for (std::size_t i = 0; i < ell_; ++i) {
    const auto b = pure_dec(sk[i], params_, ct[i]);
    if (!b) return std::nullopt;
    msg.set(i, *b);
  }
  return msg;
}

Bytes PureScheme::serialize_ct(const Ciphertext& ct) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(ct.size()));
  for (const auto& c : ct) write_pure_ct(w, c, params_);
  return w.bytes();
}

PureScheme::Ciphertext PureScheme::parse_ct(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  if (r.get_u32() != ell_) throw ParseError("pure ciphertext: arity mismatch");
  Ciphertext ct;
  for (std::size_t i = 0; i < ell_; ++i) ct.push_back(read_pure_ct(r, params_));
  r.expect_done();
  return ct;
}

Bytes PureScheme::serialize_vk(const VerificationKey& vk) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(vk.size()));
  for (const auto& v : vk) w.put_bits(v);
  return w.bytes();
}

PureScheme::VerificationKey PureScheme::parse_vk(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  if (r.get_u32() != ell_) throw ParseError("pure vk: arity mismatch");
  VerificationKey vk;
  for (std::size_t i = 0; i < ell_; ++i) vk.push_back(r.get_bits());
  r.expect_done();
  return vk;
}

Bytes PureScheme::serialize_pk(const PublicKey& pk) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(pk.size()));
  for (const auto& s : pk) {
    const std::string layout = qsim::layout_to_string(s.layout());
    const std::string dump = qsim::dump_state(s);
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(layout.data()), layout.size()});
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(dump.data()), dump.size()});
  }
  return w.bytes();
}

PureScheme::PublicKey PureScheme::parse_pk(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  if (r.get_u32() != ell_) throw ParseError("pure pk: arity mismatch");
  PublicKey pk;
  for (std::size_t i = 0; i < ell_; ++i) {
    const Bytes layout = r.get_bytes();
    const Bytes dump = r.get_bytes();
    try {
      pk.push_back(qsim::parse_state_dump(
          qsim::layout_from_string({reinterpret_cast<const char*>(layout.data()), layout.size()}),
          {reinterpret_cast<const char*>(dump.data()), dump.size()}));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("pure pk state: ") + e.what());
    }
  }
  r.expect_done();
  return pk;
}

// ---- PureSharedScheme ----

PureSharedScheme::PureSharedScheme(PureParams base, std::vector<std::size_t> us,
                                   std::size_t message_bits)
    : ell_(message_bits) {
  if (us.empty()) throw std::invalid_argument("PureSharedScheme: no instances");
  for (std::size_t u : us) {
    PureParams p = base;
    p.u = u;
    parts_.emplace_back(p, message_bits);
  }
}

std::pair<PureSharedScheme::SecretKey, PureSharedScheme::VerificationKey>
PureSharedScheme::skgen(const BitString& seed) const {
  SecretKey sk;
  VerificationKey vk;
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    auto [s, v] = parts_[c].skgen(derive_seed("qpke.pure.share", seed, c));
    sk.push_back(std::move(s));
    vk.push_back(std::move(v));
  }
  return {std::move(sk), std::move(vk)};
}

PureSharedScheme::PublicKey PureSharedScheme::pkgen(const SecretKey& sk, Rng& rng) const {
  if (sk.size() != parts_.size()) throw std::invalid_argument("PureSharedScheme: key arity");
  PublicKey pk;
  for (std::size_t c = 0; c < parts_.size(); ++c) pk.push_back(parts_[c].pkgen(sk[c], rng));
  return pk;
}

PureSharedScheme::Ciphertext PureSharedScheme::enc(const VerificationKey& vk, PublicKey pk,
                                                   const BitString& msg, Rng& rng) const {
  if (vk.size() != parts_.size() || pk.size() != parts_.size()) {
    throw std::invalid_argument("PureSharedScheme: key arity");
  }
  if (msg.size() != ell_) throw std::invalid_argument("PureSharedScheme: message length");
  Ciphertext ct;
  BitString last = msg;
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    BitString share;
    if (c + 1 < parts_.size()) {
      share = rng.bits(ell_);
      last ^= share;
    } else {
      share = last;
    }
    ct.push_back(parts_[c].enc(vk[c], std::move(pk[c]), share, rng));
  }
  return ct;
}

std::optional<BitString> PureSharedScheme::dec(const SecretKey& sk, const Ciphertext& ct) const {
  if (sk.size() != parts_.size() || ct.size() != parts_.size()) return std::nullopt;
  BitString msg(ell_);
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    const auto share = parts_[c].dec(sk[c], ct[c]);
    if (!share) return std::nullopt;
    msg ^= *share;
  }
  return msg;
}

namespace {

template <typename Part, typename F>
Bytes put_parts(const std::vector<Part>& parts, F f) {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(parts.size()));
  for (std::size_t c = 0; c < parts.size(); ++c) w.put_bytes(f(c));
  return w.bytes();
}

template <typename Out, typename F>
std::vector<Out> get_parts(std::span<const std::uint8_t> bytes, std::size_t n, F f) {
  ByteReader r(bytes);
  if (r.get_u32() != n) throw ParseError("pure-shared: instance count mismatch");
  std::vector<Out> out;
  for (std::size_t c = 0; c < n; ++c) {
    const Bytes blob = r.get_bytes();
    out.push_back(f(c, blob));
  }
  r.expect_done();
  return out;
}

}  // namespace

Bytes PureSharedScheme::serialize_ct(const Ciphertext& ct) const {
  return put_parts(ct, [&](std::size_t c) { return parts_.at(c).serialize_ct(ct[c]); });
}
PureSharedScheme::Ciphertext PureSharedScheme::parse_ct(std::span<const std::uint8_t> b) const {
  return get_parts<PureScheme::Ciphertext>(
      b, parts_.size(), [&](std::size_t c, const Bytes& x) { return parts_[c].parse_ct(x); });
}
Bytes PureSharedScheme::serialize_vk(const VerificationKey& vk) const {
  return put_parts(vk, [&](std::size_t c) { return parts_.at(c).serialize_vk(vk[c]); });
}
PureSharedScheme::VerificationKey PureSharedScheme::parse_vk(
    std::span<const std::uint8_t> b) const {
  return get_parts<PureScheme::VerificationKey>(
      b, parts_.size(), [&](std::size_t c, const Bytes& x) { return parts_[c].parse_vk(x); });
}
Bytes PureSharedScheme::serialize_pk(const PublicKey& pk) const {
  return put_parts(pk, [&](std::size_t c) { return parts_.at(c).serialize_pk(pk[c]); });
}
PureSharedScheme::PublicKey PureSharedScheme::parse_pk(std::span<const std::uint8_t> b) const {
  return get_parts<PureScheme::PublicKey>(
      b, parts_.size(), [&](std::size_t c, const Bytes& x) { return parts_[c].parse_pk(x); });
}

// ---- cannot-find-both experiment ----

FindBothReport cannot_find_both_trial(const PureParams& params, std::size_t copies,
                                      FindBothStrategy strategy, std::size_t trials,
                                      std::uint64_t seed) {
  params.validate();
  FindBothReport report;
  report.copies = copies;
  report.trials = trials;
  const double m = static_cast<double>(copies);
  report.bound = std::pow(2 * m + 1, 4) *
                 (std::ldexp(1.0, -static_cast<int>(params.u)) +
                  std::ldexp(1.0, -static_cast<int>(params.v)));

  Rng master(seed);
  const auto [sk, vk] =
      pure_skgen(BitString::from_uint(master.fork("key")(), 64), params);
  const qsim::SparseState pk = pure_pkgen(sk, params);
  const std::size_t u = params.u;
  const std::size_t v = params.v;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = master.fork(t);
    // Tags seen so far, by r.
    std::map<BitString, std::pair<std::optional<BitString>, std::optional<BitString>>> seen;
    const std::size_t computational =
        strategy == FindBothStrategy::kMeasureAll ? copies : (copies + 1) / 2;
    for (std::size_t c = 0; c < copies; ++c) {
      if (c < computational) {
        const auto out = qsim::measure_computational(pk, all_regs(), rng).outcome;
        const BitString r = out.slice(0, u);
        auto& slot = seen[r];
        (out.get(u) ? slot.second : slot.first) = out.slice(u + 1, v);
      } else {
        auto [r, rest] = pure_collapse(pk, rng);
        qsim::measure_hadamard_all(rest, measured_regs(), rng);
      }
    }
    if (copies == 0) continue;
    // Prefer an r with both tags; otherwise fill the gap with a guess.
    BitString r;
    BitString y0;
    BitString y1;
    bool chosen = false;
    for (const auto& [cand, tags] : seen) {
      if (tags.first && tags.second) {
        r = cand;
        y0 = *tags.first;
        y1 = *tags.second;
        chosen = true;
        break;
      }
    }
    if (!chosen) {
      if (seen.empty()) {
        r = rng.bits(u);
        y0 = rng.bits(v);
        y1 = rng.bits(v);
      } else {
        const auto& [cand, tags] = *seen.begin();
        r = cand;
        y0 = tags.first ? *tags.first : rng.bits(v);
        y1 = tags.second ? *tags.second : rng.bits(v);
      }
    }
    if (y0 == pure_tag(sk, params, false, r) && y1 == pure_tag(sk, params, true, r)) {
      ++report.successes;
    }
  }
  report.rate = trials == 0 ? 0.0 : static_cast<double>(report.successes) / trials;
  return report;
}

}  // namespace qpke::pure
