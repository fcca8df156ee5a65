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


#include "qpke/games/scheme_game.h"

#include "qpke/games/recyclable_game.h"

namespace qpke::games {

bool has_bottom(const base::BaseScheme&, const base::BaseScheme::Ciphertext& ct) {
  for (const auto& c : ct) {
    if (!c.present) return true;
  }
  return false;
}

bool has_bottom(const pure::PureScheme&, const pure::PureScheme::Ciphertext& ct) {
  for (const auto& c : ct) {
    if (!c.present) return true;
  }
  return false;
}

bool BaseMauler::guess(const Ciphertext& ct, std::optional<bool>,
                       DecOracle<base::BaseScheme>* oracle, Rng& rng) {
  if (!oracle || ct.empty() || !ct[0].present || ct[0].d.size() == 0) return rng.bit();
  Ciphertext mauled = ct;
  mauled[0].d.set(0, !mauled[0].d.get(0));
  auto m = oracle->query(mauled);
  if (m && m->size() > 0) m->set(0, !m->get(0));
  if (auto w = which(m)) return *w;
  return rng.bit();
}

std::vector<std::string> golden_scheme_steps(GameId game, std::size_t odec1, std::size_t odec2) {
  std::vector<std::string> s{"skgen", "pkgen", "send_keys"};
  s.insert(s.end(), odec1, "odec1");
  s.insert(s.end(), {"choose", "sample_b", "enc"});
  if (game != GameId::kCpa) s.push_back("cv");
  s.push_back("send_ct");
  s.insert(s.end(), odec2, "odec2");
  s.insert(s.end(), {"guess", "score"});
  return s;
}

std::vector<std::string> golden_recyclable_steps(GameId game) {
  if (game == GameId::kRecyclableQpk) {
    return {"skgen", "pkgen", "send_keys", "choose", "sample_b", "enc", "send_ct", "guess", "score"};
  }
  return {"skgen",       "pkgen",    "send_keys",      "choose",  "enc",   "send_ct",
          "choose_messages", "sample_b", "renc_challenge", "send_ct", "guess", "score"};
}

Json DetectabilityReport::to_json() const {
  Json j;
  j["scheme"] = scheme;
  j["adversary"] = adversary;
  j["trials"] = trials;
  j["correct"] = correct;
  j["bottom"] = bottoms;
  j["violations"] = violations;
  j["aborted"] = aborted;
  j["violation_rate"] = violation_rate().to_json();
  return j;
}

}  // namespace qpke::games
