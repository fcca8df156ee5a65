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


// Game identifiers, per-trial transcripts and rate statistics shared by every
// experiment driver.

#ifndef QPKE_GAMES_RECORD_H_
#define QPKE_GAMES_RECORD_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpke/bitstring.h"

namespace qpke::games {

using Json = nlohmann::ordered_json;

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval; [0, 1] for zero trials.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kWilsonZ95);

struct Rate {
  std::size_t successes = 0;
  std::size_t trials = 0;

  double value() const { return trials == 0 ? 0.0 : double(successes) / double(trials); }
  Interval interval() const { return wilson_interval(successes, trials); }
  Json to_json() const;
};

enum class GameId {
  kCpa,
  kCva,
  kCca,
  kOneCca,
  kHybrid0,
  kHybrid1,
  kHybrid2,
  kRecyclableQpk,
  kRecyclableRk,
};

const char* to_string(GameId id);
/// Accepts the short ids and the long forms ("ind-pkt-cpa", ...).
std::optional<GameId> parse_game_id(std::string_view text);
const std::vector<GameId>& all_game_ids();

struct GameSpec {
  GameId game = GameId::kCpa;
  std::size_t copies = 4;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// Thrown by oracles when an adversary breaks the game's rules. The driver
/// aborts the trial, scores it as a loss and flags it in the transcript.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> steps;
  std::vector<std::string> r_values;
  std::string tamper;
  /// "accept" or "reject" for games that run a coherent signature check.
  std::optional<std::string> d_outcome;
  bool bottom_ct = false;
  std::optional<bool> b;
  std::optional<bool> b_guess;
  std::optional<std::pair<std::string, std::string>> mu;
  std::optional<bool> cv;
  Json queries = Json::array();
  bool win = false;
  bool aborted = false;
  std::string abort_reason;

  void step(std::string name) { steps.push_back(std::move(name)); }
  Json to_json(std::string_view game) const;
};

struct GameResult {
  GameSpec spec;
  std::string scheme;
  std::string adversary;
  std::vector<TrialRecord> trials;

  Rate wins() const;
  std::size_t bottom_ciphertexts() const;
  std::size_t aborted() const;
  std::size_t queries() const;
  Json summary() const;
  /// One line per trial in trial order, then the summary line.
  std::string to_jsonl() const;
};

/// Calls body(trial, worker) for each trial. Worker w of `jobs` takes trials
/// w, w + jobs, ... so results land by index and do not depend on timing. The
/// first exception thrown by any worker is rethrown after all workers join.
void run_trials(std::size_t trials, std::size_t jobs,
                const std::function<void(std::size_t, std::size_t)>& body);

/// Short hex fingerprint used in transcripts in place of long bit strings.
std::string fingerprint(const BitString& bits);
std::string fingerprint(std::span<const std::uint8_t> bytes);

}  // namespace qpke::games

#endif  // QPKE_GAMES_RECORD_H_
