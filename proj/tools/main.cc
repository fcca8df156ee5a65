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


#include <cstdlib>
#include <exception>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.h"
#include "qpke/serialize.h"

namespace {

using namespace qpke::cli;

void add_scheme_flags(CLI::App* cmd, SchemeOptions& s, bool with_layer) {
  cmd->add_option("--profile", s.profile, "Parameter preset: micro, toy or demo")
      ->envname("QPKE_PROFILE");
  if (with_layer) cmd->add_option("--layer", s.layer, "Scheme layer")->capture_default_str();
  cmd->add_option("--lambda-h", s.flags.lambda_h, "Hash output bits of the signatures");
  cmd->add_option("--depth", s.flags.depth, "Certification tree depth");
  cmd->add_option("-u,--u", s.flags.u, "Randomizer bits");
  cmd->add_option("-v,--v", s.flags.v, "PRF tag bits (pure layer)");
  cmd->add_option("--ell", s.flags.ell, "Message bits")->capture_default_str();
  cmd->add_option("--lambda-r", s.flags.lambda_r, "Cut-and-choose parameter")
      ->capture_default_str();
  cmd->add_option("--index-bits", s.flags.index_bits, "Binding key bits used for indexing")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum public-key encryption with tamper-resilient public keys"};
  app.require_subcommand(1);

  KeygenOptions keygen;
  auto* c_keygen = app.add_subcommand("keygen", "Generate a secret and verification key");
  add_scheme_flags(c_keygen, keygen.scheme, true);
  c_keygen->add_option("--out", keygen.out, "Output prefix")->capture_default_str();
  c_keygen->add_option("--seed", keygen.seed, "Seed");

  PkgenOptions pkgen;
  auto* c_pkgen = app.add_subcommand("pkgen", "Generate one quantum public key copy");
  c_pkgen->add_option("--sk", pkgen.sk, "Secret key file")->required();
  c_pkgen->add_option("--out", pkgen.out, "Public key file")->required();
  c_pkgen->add_option("--layer", pkgen.layer, "Expected layer");
  c_pkgen->add_option("--dump-state", pkgen.dump_state, "Write the key states as text ('-' for stdout)");
  c_pkgen->add_option("--seed", pkgen.seed, "Seed");

  EncOptions enc;
  auto* c_enc = app.add_subcommand("enc", "Encrypt a message under a public key copy");
  c_enc->add_option("--vk", enc.vk, "Verification key file")->required();
  c_enc->add_option("--pk", enc.pk, "Public key file")->required();
  c_enc->add_option("--msg", enc.msg, "Message bits")->required();
  c_enc->add_option("--out", enc.out, "Ciphertext file")->required();
  c_enc->add_option("--seed", enc.seed, "Seed");

  DecOptions dec;
  auto* c_dec = app.add_subcommand("dec", "Decrypt a ciphertext; exit 2 on bottom");
  c_dec->add_option("--sk", dec.sk, "Secret key file")->required();
  c_dec->add_option("--ct", dec.ct, "Ciphertext file")->required();

  GameOptions game;
  auto* c_game = app.add_subcommand("game", "Run a security game");
  c_game->add_option("--game", game.game, "Game id");
  c_game->add_option("--scheme", game.scheme, "Layer name or strawman")->capture_default_str();
  c_game->add_option("--adversary", game.adversary, "Adversary name, or 'list'")
      ->capture_default_str();
  c_game->add_option("--trials", game.trials, "Trials")->capture_default_str();
  c_game->add_option("--m", game.m, "Public key copies given to the adversary")
      ->capture_default_str();
  c_game->add_option("--jobs", game.jobs, "Worker threads")->capture_default_str();
  c_game->add_option("--seed", game.seed, "Seed");
  c_game->add_option("--output", game.output, "Write the full JSONL report stream here");
  add_scheme_flags(c_game, game.params, false);

  DemoOptions demo;
  auto* c_demo = app.add_subcommand("demo", "Run a demonstration");
  c_demo->add_option("kind", demo.kind,
                     "extractor, bz, hadamard-stats, cannot-find-both or double-sign")
      ->required();
  c_demo->add_option("--trials", demo.trials, "Trials")->capture_default_str();
  c_demo->add_option("--seed", demo.seed, "Seed");
  c_demo->add_option("--delta", demo.delta, "Distinguishing advantage")->capture_default_str();
  c_demo->add_option("--k", demo.k, "Outcomes of the inserted measurement (2 or 4)")
      ->capture_default_str();
  c_demo->add_option("--pipeline", demo.pipeline, "bz pipeline: extractor, hadamard, classical")
      ->capture_default_str();
  c_demo->add_option("--width", demo.width, "Register width")->capture_default_str();
  c_demo->add_option("--samples", demo.samples, "Samples")->capture_default_str();
  c_demo->add_option("--copies", demo.copies, "Key copies")->capture_default_str();
  c_demo->add_option("--strategy", demo.strategy, "Strategy name or 'all'")->capture_default_str();
  c_demo->add_option("-u,--u", demo.u, "Randomizer bits (pure)")->capture_default_str();
  c_demo->add_option("-v,--v", demo.v, "Tag bits (pure)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_keygen) return cmd_keygen(keygen, std::cout, std::cerr);
    if (*c_pkgen) return cmd_pkgen(pkgen, std::cout, std::cerr);
    if (*c_enc) return cmd_enc(enc, std::cout, std::cerr);
    if (*c_dec) return cmd_dec(dec, std::cout, std::cerr);
    if (*c_game) {
      if (game.game.empty() && game.adversary != "list") {
        throw UsageError("--game is required");
      }
      return cmd_game(game, std::cout, std::cerr);
    }
    if (*c_demo) return cmd_demo(demo, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qpke::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
