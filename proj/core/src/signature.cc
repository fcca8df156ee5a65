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

#include "qpke/signature.h"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "qpke/hash.h"

namespace qpke::primitives {

struct SigningKey::NodeKeys {
  BitString preimages;  // element (i, c) at ((2i + c) * lambda_h)
  BitString elements;   // hashes of the preimages, same indexing
  BitString commitment;
};

struct SigningKey::Cache {
  static constexpr std::size_t kMaxEntries = 4096;
  std::mutex mu;
  std::map<std::pair<std::size_t, BitString>, std::shared_ptr<const NodeKeys>> nodes;
};

namespace {

BitString element_hash(const BitString& x, std::size_t lambda_h) {
  static const Sponge kElem("qpke.ots.elem");
  Sponge s = kElem;
  s.absorb_bits(x);
  return s.squeeze(lambda_h);
}

BitString commitment_hash(const BitString& elements, std::size_t lambda_h) {
  static const Sponge kPk("qpke.ots.pk");
  Sponge s = kPk;
  s.absorb_bits(elements);
  return s.squeeze(lambda_h);
}

BitString children_digest(const BitString& c0, const BitString& c1, std::size_t lambda_h) {
  static const Sponge kChildren("qpke.sig.children");
  Sponge s = kChildren;
  s.absorb_bits(c0);
  s.absorb_bits(c1);
  return s.squeeze(lambda_h);
}

BitString message_digest(const BitString& msg, std::size_t lambda_h) {
  return hash("qpke.sig.msg", msg, lambda_h);
}

BitString ots_sign(const SigningKey::NodeKeys& node, const BitString& m, std::size_t lh) {
  BitString sig(2 * lh * lh);
  for (std::size_t i = 0; i < lh; ++i) {
    const std::size_t c = m.get(i) ? 1 : 0;
    sig.assign(2 * i * lh, node.preimages.slice((2 * i + c) * lh, lh));
    sig.assign((2 * i + 1) * lh, node.elements.slice((2 * i + 1 - c) * lh, lh));
  }
  return sig;
}

// Rebuilds the one-time public key commitment implied by an OTS signature on m.
BitString ots_commitment(const BitString& sig, std::size_t offset, const BitString& m,
                         std::size_t lh) {
  BitString elements(2 * lh * lh);
  for (std::size_t i = 0; i < lh; ++i) {
    const std::size_t c = m.get(i) ? 1 : 0;
    const BitString revealed = element_hash(sig.slice(offset + 2 * i * lh, lh), lh);
    elements.assign((2 * i + c) * lh, revealed);
    elements.assign((2 * i + 1 - c) * lh, sig.slice(offset + (2 * i + 1) * lh, lh));
  }
  return commitment_hash(elements, lh);
}

}  // namespace

SigParams SigParams::toy() { return {32, 16}; }
SigParams SigParams::demo() { return {128, 24}; }
SigParams SigParams::micro() { return {16, 4}; }
SigParams SigParams::one_time() { return {16, 0}; }

void SigParams::validate() const {
  if (lambda_h == 0 || lambda_h % 8 != 0) {
    throw std::invalid_argument("SigParams: lambda_h must be a positive multiple of 8");
  }
  if (depth > 32) {
    throw std::invalid_argument("SigParams: depth must be at most 32");
  }
}

std::string SigParams::to_string() const {
  return "lambda_h=" + std::to_string(lambda_h) + ",depth=" + std::to_string(depth);
}

SigningKey::SigningKey(BitString k, SigParams params)
    : k_(std::move(k)), params_(params), cache_(std::make_shared<Cache>()) {
  params_.validate();
}

std::shared_ptr<const SigningKey::NodeKeys> SigningKey::node(std::size_t level,
                                                             const BitString& path) const {
  auto key = std::make_pair(level, path);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->nodes.find(key);
    if (it != cache_->nodes.end()) return it->second;
  }
  const std::size_t lh = params_.lambda_h;
  auto out = std::make_shared<NodeKeys>();
  const BitString seed =
      prf_eval(k_, "qpke.sig.node", BitString::from_uint(level, 8).concat(path), 128);
  out->preimages = prf_eval(seed, "qpke.sig.ots", BitString(), 2 * lh * lh);
  out->elements = BitString(2 * lh * lh);
  for (std::size_t e = 0; e < 2 * lh; ++e) {
    out->elements.assign(e * lh, element_hash(out->preimages.slice(e * lh, lh), lh));
  }
  out->commitment = commitment_hash(out->elements, lh);

  std::lock_guard lock(cache_->mu);
  if (cache_->nodes.size() >= Cache::kMaxEntries) cache_->nodes.clear();
  cache_->nodes.emplace(std::move(key), out);
  return out;
}

SigKeyPair sig_gen(const BitString& seed, const SigParams& params) {
  params.validate();
  SigningKey sk(hash("qpke.sig.keygen", seed, kSigKeyBits), params);
  BitString vk = sig_vk(sk);
  return {std::move(sk), std::move(vk)};
}

BitString sig_vk(const SigningKey& sk) { return sk.node(0, BitString())->commitment; }

BitString sig_leaf_index(const BitString& msg, const SigParams& params) {
  return hash("qpke.sig.leaf", msg, params.depth);
}

BitString sig_sign(const SigningKey& sk, const BitString& msg) {
  const SigParams& p = sk.params();
  const std::size_t lh = p.lambda_h;
  const BitString leaf = sig_leaf_index(msg, p);
  BitString sig(p.sig_len());
  sig.assign(0, leaf);
  std::size_t pos = p.depth;
  for (std::size_t level = 0; level < p.depth; ++level) {
    const BitString path = leaf.slice(0, level);
    BitString c0_path = path, c1_path = path;
    c0_path.push_back(false);
    c1_path.push_back(true);
    const auto c0 = sk.node(level + 1, c0_path);
    const auto c1 = sk.node(level + 1, c1_path);
    const bool bit = leaf.get(level);
    sig.assign(pos, (bit ? c0 : c1)->commitment);
    pos += lh;
    const BitString m = children_digest(c0->commitment, c1->commitment, lh);
    sig.assign(pos, ots_sign(*sk.node(level, path), m, lh));
    pos += p.ots_len();
  }
  sig.assign(pos, ots_sign(*sk.node(p.depth, leaf), message_digest(msg, lh), lh));
  return sig;
}

bool sig_verify(const BitString& vk, const BitString& msg, const BitString& sig,
                const SigParams& params) {
  const std::size_t lh = params.lambda_h;
  if (sig.size() != params.sig_len() || vk.size() != lh) return false;
  const BitString leaf = sig.slice(0, params.depth);
  if (leaf != sig_leaf_index(msg, params)) return false;

  const std::size_t level_len = lh + params.ots_len();
  BitString c = ots_commitment(sig, params.depth + params.depth * level_len,
                               message_digest(msg, lh), lh);
  for (std::size_t level = params.depth; level-- > 0;) {
    const std::size_t off = params.depth + level * level_len;
    const BitString sibling = sig.slice(off, lh);
    const BitString m = leaf.get(level) ? children_digest(sibling, c, lh)
                                        : children_digest(c, sibling, lh);
    c = ots_commitment(sig, off + lh, m, lh);
  }
  return c == vk;
}

}  // namespace qpke::primitives
