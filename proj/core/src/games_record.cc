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


#include "qpke/games/record.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "qpke/hash.h"
#include "qpke/scheme.h"

namespace qpke::games {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {};
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Json Rate::to_json() const {
  const Interval ci = interval();
  Json j;
  j["successes"] = successes;
  j["trials"] = trials;
  j["rate"] = value();
  j["ci95"] = {ci.lo, ci.hi};
  return j;
}

namespace {

struct GameName {
  GameId id;
  const char* short_name;
  const char* long_name;
};

constexpr GameName kNames[] = {
    {GameId::kCpa, "cpa", "ind-pkt-cpa"},
    {GameId::kCva, "cva", "ind-pkt-cva"},
    {GameId::kCca, "cca", "ind-pkt-cca"},
    {GameId::kOneCca, "1cca", "ind-pkt-1cca"},
    {GameId::kHybrid0, "hybrid0", "hybrid-0"},
    {GameId::kHybrid1, "hybrid1", "hybrid-1"},
    {GameId::kHybrid2, "hybrid2", "hybrid-2"},
    {GameId::kRecyclableQpk, "recyclable-qpk", "ind-pkt-cpa-rec-qpk"},
    {GameId::kRecyclableRk, "recyclable-rk", "ind-pkt-cpa-rec-rk"},
};

}  // namespace

const char* to_string(GameId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.short_name;
  }
  return "?";
}

std::optional<GameId> parse_game_id(std::string_view text) {
  for (const auto& n : kNames) {
    if (text == n.short_name || text == n.long_name) return n.id;
  }
  return std::nullopt;
}

const std::vector<GameId>& all_game_ids() {
  static const std::vector<GameId> kAll = [] {
    std::vector<GameId> v;
    for (const auto& n : kNames) v.push_back(n.id);
    return v;
  }();
  return kAll;
}

Json TrialRecord::to_json(std::string_view game) const {
  Json j;
  j["type"] = "trial";
  j["game"] = game;
  j["trial"] = trial;
  j["seed"] = seed;
  j["steps"] = steps;
  j["r"] = r_values;
  j["tamper"] = tamper;
  j["d"] = d_outcome ? Json(*d_outcome) : Json();
  j["bottom_ct"] = bottom_ct;
  j["b"] = b ? Json(int(*b)) : Json();
  j["b_guess"] = b_guess ? Json(int(*b_guess)) : Json();
  j["mu"] = mu ? Json::array({mu->first, mu->second}) : Json();
  j["cv"] = cv ? Json(int(*cv)) : Json();
  j["queries"] = queries;
  j["win"] = win;
  j["aborted"] = aborted;
  if (aborted) j["abort_reason"] = abort_reason;
  return j;
}

Rate GameResult::wins() const {
  Rate r{0, trials.size()};
  for (const auto& t : trials) r.successes += t.win ? 1 : 0;
  return r;
}

std::size_t GameResult::bottom_ciphertexts() const {
  return std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.bottom_ct; });
}

std::size_t GameResult::aborted() const {
  return std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.aborted; });
}

std::size_t GameResult::queries() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.queries.size();
  return n;
}

Json GameResult::summary() const {
  Json j;
  j["type"] = "summary";
  j["game"] = to_string(spec.game);
  j["scheme"] = scheme;
  j["adversary"] = adversary;
  j["copies"] = spec.copies;
  j["seed"] = spec.seed;
  j["wins"] = wins().to_json();
  j["bottom_ciphertexts"] = bottom_ciphertexts();
  j["aborted"] = aborted();
  j["queries"] = queries();
  return j;
}

std::string GameResult::to_jsonl() const {
  std::ostringstream out;
  const char* game = to_string(spec.game);
  for (const auto& t : trials) out << t.to_json(game).dump() << '\n';
  out << summary().dump() << '\n';
  return out.str();
}

void run_trials(std::size_t trials, std::size_t jobs,
                const std::function<void(std::size_t, std::size_t)>& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) body(t, 0);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += jobs) body(t, w);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

std::string fingerprint(const BitString& bits) {
  return to_hex(primitives::hash("qpke.games.fp", bits, 64).to_bytes());
}

std::string fingerprint(std::span<const std::uint8_t> bytes) { return fingerprint(bits_of(bytes)); }

}  // namespace qpke::games
