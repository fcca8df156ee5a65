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

#include "qpke/transforms/common.h"

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "qpke/qsim.h"

namespace qpke::transforms {

BitString choose_subset(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("choose_subset: k > n");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  BitString mask(n);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
    mask.set(idx[i], true);
  }
  return mask;
}

BitString majority(std::span<const BitString> votes) {
  if (votes.empty()) throw std::invalid_argument("majority: no votes");
  std::map<BitString, std::size_t> counts;
  for (const auto& v : votes) ++counts[v];
  // Map order is lexicographic, and only a strictly larger count replaces
  // the current winner.
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

void write_token(ByteWriter& w, const primitives::TmacToken& token) {
  w.put_u32(static_cast<std::uint32_t>(token.params().lambda_t));
  w.put_u32(static_cast<std::uint32_t>(token.params().blocks));
  w.put_u8(token.consumed() ? 1 : 0);
  if (token.consumed()) return;
  for (const auto& q : token.qubits()) {
    const std::string dump = qsim::dump_state(q);
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(dump.data()), dump.size()});
  }
}

primitives::TmacToken read_token(ByteReader& r) {
  primitives::TmacParams params;
  params.lambda_t = r.get_u32();
  params.blocks = r.get_u32();
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("token: ") + e.what());
  }
  const std::uint8_t consumed = r.get_u8();
  if (consumed > 1) throw ParseError("token: bad consumed flag");
  const qsim::RegisterLayout layout{{"q", 1}};
  std::vector<qsim::SparseState> qubits;
  if (consumed == 1) {
    // Placeholder contents; take() discards them.
    qubits.assign(params.qubits(), qsim::make_basis_state(layout, BitString(1)));
  } else {
    for (std::size_t i = 0; i < params.qubits(); ++i) {
      const Bytes dump = r.get_bytes();
      try {
        qubits.push_back(qsim::parse_state_dump(
            layout, {reinterpret_cast<const char*>(dump.data()), dump.size()}));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("token qubit: ") + e.what());
      }
    }
  }
  primitives::TmacToken token(params, std::move(qubits));
  if (consumed == 1) token.take();
  return token;
}

}  // namespace qpke::transforms
