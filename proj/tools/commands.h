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


// Command implementations. Each returns the process exit code: 0 on
// success, 2 when decryption yields bottom; usage problems throw UsageError.

#ifndef QPKE_TOOLS_COMMANDS_H_
#define QPKE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "config.h"

namespace qpke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBottom = 2;

/// The given seed, or one drawn from system entropy and reported on `err`.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err);

struct SchemeOptions {
  std::optional<std::string> profile;  ///< defaults to QPKE_PROFILE, then toy
  std::string layer = "base";
  SchemeFlags flags;

  SchemeConfig resolve() const;
};

struct KeygenOptions {
  SchemeOptions scheme;
  std::string out = "key";  ///< writes <out>.qsk and <out>.qvk
  std::optional<std::uint64_t> seed;
};

struct PkgenOptions {
  std::string sk;
  std::string out;
  std::optional<std::string> layer;  ///< must match the key when given
  std::optional<std::string> dump_state;
  std::optional<std::uint64_t> seed;
};

struct EncOptions {
  std::string vk;
  std::string pk;
  std::string msg;  ///< bit string of the layer's message length
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct DecOptions {
  std::string sk;
  std::string ct;
};

struct GameOptions {
  std::string game;
  std::string scheme = "base";  ///< a layer name or "strawman"
  std::string adversary = "honest";
  std::size_t trials = 1000;
  std::size_t m = 4;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;  ///< full JSONL report stream
  SchemeOptions params;
};

struct DemoOptions {
  std::string kind;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  double delta = 1.0;
  std::size_t k = 2;
  std::string pipeline = "extractor";
  std::size_t width = 6;
  std::size_t samples = 100000;
  std::size_t copies = 4;
  std::string strategy = "all";
  std::size_t u = 4;
  std::size_t v = 32;
};

int cmd_keygen(const KeygenOptions& o, std::ostream& out, std::ostream& err);
int cmd_pkgen(const PkgenOptions& o, std::ostream& out, std::ostream& err);
int cmd_enc(const EncOptions& o, std::ostream& out, std::ostream& err);
int cmd_dec(const DecOptions& o, std::ostream& out, std::ostream& err);
int cmd_game(const GameOptions& o, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoOptions& o, std::ostream& out, std::ostream& err);

/// Built-in adversaries, one line each.
void list_adversaries(std::ostream& out);

}  // namespace qpke::cli

#endif  // QPKE_TOOLS_COMMANDS_H_
