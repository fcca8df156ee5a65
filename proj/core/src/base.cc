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
#include <stdexcept>

#include "qpke/scheme.h"

namespace qpke::base {

namespace {

using primitives::SigningKey;

const std::vector<std::string>& ab_regs() {
  static const std::vector<std::string> regs{kRegA, kRegB};
  return regs;
}

BitString bit(bool b) {
  BitString out(1);
  out.set(0, b);
  return out;
}

bool has_register(const qsim::RegisterLayout& layout, const std::string& name,
                  std::size_t width) {
  return layout.contains(name) && layout.at(name).width == width;
}

}  // namespace

BaseParams BaseParams::toy() { return {primitives::SigParams::toy(), 16, true}; }
BaseParams BaseParams::demo() { return {primitives::SigParams::demo(), 64, true}; }
BaseParams BaseParams::micro() { return {primitives::SigParams::micro(), 16, true}; }

void BaseParams::validate() const {
  sig.validate();
  if (u == 0 || u > 1024) {
    throw std::invalid_argument("BaseParams: u must be in [1, 1024]");
  }
}

qsim::RegisterLayout BaseParams::layout() const {
  return qsim::RegisterLayout{{kRegA, 1}, {kRegB, sig.sig_len()}};
}

std::string BaseParams::to_string() const {
  return sig.to_string() + " u=" + std::to_string(u) + (verify ? "" : " verify=off");
}

std::pair<SigningKey, BitString> base_skgen(const BitString& seed, const BaseParams& params) {
  params.validate();
  auto kp = primitives::sig_gen(seed, params.sig);
  return {std::move(kp.sk), std::move(kp.vk)};
}

BitString branch_string(const SigningKey& sk, bool alpha, const BitString& r) {
  const BitString head = bit(alpha);
  return head.concat(primitives::sig_sign(sk, head.concat(r)));
}

QuantumPublicKey base_pkgen(const SigningKey& sk, const BaseParams& params, Rng& rng) {
  return base_pkgen_with_r(sk, params, rng.bits(params.u));
}

QuantumPublicKey base_pkgen_with_r(const SigningKey& sk, const BaseParams& params,
                                   const BitString& r) {
  if (r.size() != params.u) {
    throw std::invalid_argument("base_pkgen: r has the wrong length");
  }
  const std::pair<BitString, qsim::Amplitude> terms[] = {
      {branch_string(sk, false, r), 1.0},
      {branch_string(sk, true, r), 1.0},
  };
  return {r, qsim::superpose(params.layout(), terms)};
}

std::optional<qsim::SparseState> enc_check(const BitString& vk, const BaseParams& params,
                                           const BitString& r, const qsim::SparseState& state,
                                           Rng& rng) {
  const auto& layout = state.layout();
  if (r.size() != params.u || !has_register(layout, kRegA, 1) ||
      !has_register(layout, kRegB, params.sig.sig_len()) || layout.contains(kRegD)) {
    return std::nullopt;
  }
  if (!params.verify) return state;

  const auto verifier = [&](const BitString& ab) {
    const BitString msg = ab.slice(0, 1).concat(r);
    const BitString sig = ab.slice(1, ab.size() - 1);
    return bit(primitives::sig_verify(vk, msg, sig, params.sig));
  };
  const auto with_d = qsim::add_register(state, kRegD, 1);
  const auto checked = qsim::coherent_eval(with_d, verifier, ab_regs(), kRegD);
  auto m = qsim::measure_computational(checked, kRegD, rng);
  if (!m.outcome.get(0)) return std::nullopt;
  return qsim::drop_register(m.state, kRegD);
}

qsim::SparseState enc_phase(const qsim::SparseState& state, bool b) {
  return qsim::apply_z_power(state, kRegA, b);
}

qsim::Measurement enc_measure(const qsim::SparseState& state, Rng& rng) {
  return qsim::measure_hadamard_all(state, ab_regs(), rng);
}

EncOutcome base_enc_full(const BitString& vk, const BaseParams& params, QuantumPublicKey pk,
                         bool b, Rng& rng) {
  auto accepted = enc_check(vk, params, pk.r, pk.state, rng);
  if (!accepted) return {};
  auto m = enc_measure(enc_phase(*accepted, b), rng);
  EncOutcome out;
  out.ct = BaseCiphertext{true, std::move(pk.r), std::move(m.outcome)};
  if (!m.state.layout().registers().empty()) out.residual = std::move(m.state);
  return out;
}

BaseCiphertext base_enc(const BitString& vk, const BaseParams& params, QuantumPublicKey pk,
                        bool b, Rng& rng) {
  return base_enc_full(vk, params, std::move(pk), b, rng).ct;
}

std::optional<bool> base_dec(const SigningKey& sk, const BaseParams& params,
                             const BaseCiphertext& ct) {
  if (!ct.present || ct.r.size() != params.u || ct.d.size() != params.branch_len()) {
    return std::nullopt;
  }
  BitString diff = branch_string(sk, false, ct.r);
  diff ^= branch_string(sk, true, ct.r);
  return ct.d.dot(diff);
}

void write_base_ct(ByteWriter& w, const BaseCiphertext& ct, const BaseParams& params) {
  if (!ct.present) {
    w.put_u8(0x00);
    return;
  }
  if (ct.r.size() != params.u || ct.d.size() != params.branch_len()) {
    throw std::invalid_argument("write_base_ct: field widths do not match params");
  }
  w.put_u8(0x01);
  w.put_fixed_bits(ct.r);
  w.put_fixed_bits(ct.d);
}

BaseCiphertext read_base_ct(ByteReader& r, const BaseParams& params) {
  switch (r.get_u8()) {
    case 0x00:
      return BaseCiphertext::bottom();
    case 0x01: {
      BaseCiphertext ct;
      ct.present = true;
      ct.r = r.get_fixed_bits(params.u);
      ct.d = r.get_fixed_bits(params.branch_len());
      return ct;
    }
    default:
      throw ParseError("base ciphertext: bad tag");
  }
}

Bytes serialize_base_ct(const BaseCiphertext& ct, const BaseParams& params) {
  ByteWriter w;
  write_base_ct(w, ct, params);
  return w.bytes();
}

BaseCiphertext parse_base_ct(std::span<const std::uint8_t> bytes, const BaseParams& params) {
  ByteReader r(bytes);
  BaseCiphertext ct = read_base_ct(r, params);
  r.expect_done();
  return ct;
}

void write_quantum_pk(ByteWriter& w, const QuantumPublicKey& pk) {
  const std::string layout = qsim::layout_to_string(pk.state.layout());
  const std::string dump = qsim::dump_state(pk.state);
  w.put_bits(pk.r);
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(layout.data()), layout.size()});
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(dump.data()), dump.size()});
}

QuantumPublicKey read_quantum_pk(ByteReader& r) {
  BitString tag = r.get_bits();
  const Bytes layout = r.get_bytes();
  const Bytes dump = r.get_bytes();
  try {
    const auto parsed = qsim::layout_from_string(
        {reinterpret_cast<const char*>(layout.data()), layout.size()});
    return {std::move(tag), qsim::parse_state_dump(parsed, {reinterpret_cast<const char*>(
                                                               dump.data()),
                                                           dump.size()})};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("public key state: ") + e.what());
  }
}

BaseScheme::BaseScheme(BaseParams params, std::size_t message_bits)
    : params_(std::move(params)), ell_(message_bits) {
  params_.validate();
}

std::pair<BaseScheme::SecretKey, BaseScheme::VerificationKey> BaseScheme::skgen(
    const BitString& seed) const {
  SecretKey sk;
  VerificationKey vk;
  sk.reserve(ell_);
  vk.reserve(ell_);
  for (std::size_t i = 0; i < ell_; ++i) {
    auto [k, v] = base_skgen(derive_seed("qpke.base.slot", seed, i), params_);
    sk.push_back(std::move(k));
    vk.push_back(std::move(v));
  }
  return {std::move(sk), std::move(vk)};
}

BaseScheme::PublicKey BaseScheme::pkgen(const SecretKey& sk, Rng& rng) const {
  if (sk.size() != ell_) throw std::invalid_argument("BaseScheme::pkgen: key arity");
  PublicKey pk;
  pk.reserve(ell_);
  for (const auto& k : sk) pk.push_back(base_pkgen(k, params_, rng));
  return pk;
}

BaseScheme::Ciphertext BaseScheme::enc(const VerificationKey& vk, PublicKey pk,
                                       const BitString& msg, Rng& rng) const {
  if (msg.size() != ell_) throw std::invalid_argument("BaseScheme::enc: message length");
  Ciphertext ct(ell_);
  if (vk.size() != ell_ || pk.size() != ell_) return ct;
  for (std::size_t i = 0; i < ell_; ++i) {
    ct[i] = base_enc(vk[i], params_, std::move(pk[i]), msg.get(i), rng);
  }
  return ct;
}

std::optional<BitString> BaseScheme::dec(const SecretKey& sk, const Ciphertext& ct) const {
  if (sk.size() != ell_ || ct.size() != ell_) return std::nullopt;
  BitString msg(ell_);
  for (std::size_t i = 0; i < ell_; ++i) {
    const auto b = base_dec(sk[i], params_, ct[i]);
    if (!b) return std::nullopt;
    msg.set(i, *b);
  }
  return msg;
}

Bytes BaseScheme::serialize_ct(const Ciphertext& ct) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(ct.size()));
  for (const auto& c : ct) write_base_ct(w, c, params_);
  return w.bytes();
}

BaseScheme::Ciphertext BaseScheme::parse_ct(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  const std::uint32_t n = r.get_u32();
  if (n != ell_) throw ParseError("base ciphertext: arity mismatch");
  Ciphertext ct;
  for (std::uint32_t i = 0; i < n; ++i) ct.push_back(read_base_ct(r, params_));
  r.expect_done();
  return ct;
}

Bytes BaseScheme::serialize_vk(const VerificationKey& vk) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(vk.size()));
  for (const auto& v : vk) w.put_bits(v);
  return w.bytes();
}

BaseScheme::VerificationKey BaseScheme::parse_vk(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  const std::uint32_t n = r.get_u32();
  if (n != ell_) throw ParseError("base vk: arity mismatch");
  VerificationKey vk;
  for (std::uint32_t i = 0; i < n; ++i) vk.push_back(r.get_bits());
  r.expect_done();
  return vk;
}

Bytes BaseScheme::serialize_pk(const PublicKey& pk) const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(pk.size()));
  for (const auto& p : pk) write_quantum_pk(w, p);
  return w.bytes();
}

BaseScheme::PublicKey BaseScheme::parse_pk(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  const std::uint32_t n = r.get_u32();
  if (n != ell_) throw ParseError("base pk: arity mismatch");
  PublicKey pk;
  for (std::uint32_t i = 0; i < n; ++i) pk.push_back(read_quantum_pk(r));
  r.expect_done();
  return pk;
}

}  // namespace qpke::base
