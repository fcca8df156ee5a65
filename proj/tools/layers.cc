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


#include "layers.h"

#include <memory>
#include <vector>

#include "qpke/games/scheme_game.h"
#include "qpke/qsim.h"

namespace qpke::cli {

namespace {

using States = std::vector<qsim::SparseState>;

void collect(const qsim::SparseState& s, States& out);
void collect(const base::QuantumPublicKey& k, States& out);
template <class T>
void collect(const std::vector<T>& v, States& out);
template <class T>
  requires requires(const T& t) { t.token; t.inner; }
void collect(const T& pk, States& out);
template <class T>
  requires requires(const T& t) { t.snum; t.pk; t.sigma; }
void collect(const T& pk, States& out);

void collect(const qsim::SparseState& s, States& out) { out.push_back(s); }
void collect(const base::QuantumPublicKey& k, States& out) { out.push_back(k.state); }

template <class T>
void collect(const std::vector<T>& v, States& out) {
  for (const auto& x : v) collect(x, out);
}

template <class T>
  requires requires(const T& t) { t.token; t.inner; }
void collect(const T& pk, States& out) {
  collect(pk.inner, out);
  if (!pk.token.consumed()) collect(pk.token.qubits(), out);
}

template <class T>
  requires requires(const T& t) { t.snum; t.pk; t.sigma; }
void collect(const T& pk, States& out) {
  collect(pk.pk, out);
}

template <class S>
LayerOps ops_for(S scheme) {
  auto s = std::make_shared<const S>(std::move(scheme));
  LayerOps ops;
  ops.name = s->name();
  ops.message_bits = s->message_bits();
  ops.vk_of = [s](const BitString& seed) { return s->serialize_vk(s->skgen(seed).second); };
  ops.pkgen = [s](const BitString& seed, Rng& rng) {
    return s->serialize_pk(s->pkgen(s->skgen(seed).first, rng));
  };
  ops.enc = [s](std::span<const std::uint8_t> vk, std::span<const std::uint8_t> pk,
                const BitString& msg, Rng& rng) {
    auto ct = s->enc(s->parse_vk(vk), s->parse_pk(pk), msg, rng);
    const bool bottom = games::has_bottom(*s, ct);
    return std::make_pair(s->serialize_ct(ct), bottom);
  };
  ops.dec = [s](const BitString& seed, std::span<const std::uint8_t> ct) {
    return s->dec(s->skgen(seed).first, s->parse_ct(ct));
  };
  ops.dump_pk = [s](std::span<const std::uint8_t> pk) {
    States states;
    collect(s->parse_pk(pk), states);
    std::string text;
    for (std::size_t i = 0; i < states.size(); ++i) {
      text += "# state " + std::to_string(i) + " " + qsim::layout_to_string(states[i].layout()) +
              "\n";
      text += qsim::dump_state(states[i]);
    }
    return text;
  };
  return ops;
}

}  // namespace

LayerOps make_layer(const SchemeConfig& cfg) {
  return visit_layer(cfg, [](auto scheme) { return ops_for(std::move(scheme)); });
}

}  // namespace qpke::cli
