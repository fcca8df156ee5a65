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


#include "commands.h"

#include <fstream>
#include <memory>
#include <random>
#include <type_traits>
#include <vector>

#include "files.h"
#include "layers.h"
#include "qpke/games.h"
#include "qpke/pure.h"

namespace qpke::cli {

namespace {

using games::GameId;
using games::Json;

void print(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

BitString key_seed(std::uint64_t seed) { return Rng(seed).fork("keygen").bits(128); }

void require_same(const SchemeConfig& a, const SchemeConfig& b, const std::string& what) {
  if (!(a == b)) throw UsageError(what + " were made for different schemes");
}

bool is_base_game(GameId g) {
  return g == GameId::kCpa || g == GameId::kCva || g == GameId::kHybrid0 ||
         g == GameId::kHybrid1 || g == GameId::kHybrid2;
}

bool is_recyclable_game(GameId g) {
  return g == GameId::kRecyclableQpk || g == GameId::kRecyclableRk;
}

template <class S>
std::unique_ptr<games::SchemeAdversary<S>> scheme_adversary(const std::string& name) {
  if (name == "honest") return std::make_unique<games::GenericHonest<S>>();
  if (name == "keyswap") return std::make_unique<games::GenericKeySwap<S>>();
  if (name == "sk-oracle") return std::make_unique<games::GenericSkOracle<S>>();
  if (name == "greedy") return std::make_unique<games::GreedyQuerier<S>>();
  if constexpr (std::is_same_v<S, base::BaseScheme>) {
    if (name == "maul") return std::make_unique<games::BaseMauler>();
  }
  if constexpr (std::is_same_v<S, CcaStack>) {
    if (name == "replay") return std::make_unique<games::CcaReplay<OneCcaStack>>();
  }
  throw UsageError("adversary '" + name + "' does not apply to this scheme and game");
}

std::unique_ptr<games::RecyclableAdversary<CvaStack>> recyclable_adversary(
    const std::string& name) {
  if (name == "honest") return std::make_unique<games::RecyclableHonest<CvaStack>>();
  if (name == "match") return std::make_unique<games::RecyclableMatcher<CvaStack>>();
  throw UsageError("adversary '" + name + "' does not apply to the recyclable games");
}

games::GameResult play(const GameOptions& o, const games::GameSpec& spec) {
  if (o.scheme == "strawman" || (o.scheme == "base" && is_base_game(spec.game))) {
    if (!is_base_game(spec.game)) {
      throw UsageError("the strawman scheme only plays cpa, cva and the hybrids");
    }
    SchemeOptions so = o.params;
    so.layer = "base";
    base::BaseParams params = so.resolve().base_params();
    params.verify = o.scheme != "strawman";
    std::unique_ptr<games::BaseAdversary> adv;
    try {
      adv = games::make_base_adversary(o.adversary);
    } catch (const std::invalid_argument&) {
      throw UsageError("adversary '" + o.adversary + "' does not apply to the base games");
    }
    return spec.game == GameId::kHybrid2 ? games::run_hybrid2(spec, params, *adv)
                                         : games::run_game(spec, params, *adv);
  }
  SchemeOptions so = o.params;
  so.layer = o.scheme;
  const SchemeConfig cfg = so.resolve();
  if (is_recyclable_game(spec.game)) {
    if (cfg.layer != Layer::kRec) throw UsageError("recyclable games need --scheme rec");
    const auto adv = recyclable_adversary(o.adversary);
    return visit_layer(cfg, [&](auto scheme) -> games::GameResult {
      if constexpr (std::is_same_v<decltype(scheme), RecStack>) {
        return games::run_game(spec, scheme, *adv);
      } else {
        throw UsageError("recyclable games need --scheme rec");
      }
    });
  }
  if (spec.game == GameId::kHybrid0 || spec.game == GameId::kHybrid1 ||
      spec.game == GameId::kHybrid2) {
    throw UsageError("the hybrid games run on --scheme base or strawman");
  }
  return visit_layer(cfg, [&](auto scheme) {
    using S = decltype(scheme);
    const auto adv = scheme_adversary<S>(o.adversary);
    return games::run_game(spec, scheme, *adv);
  });
}

}  // namespace

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  err << "seed: " << s << "\n";
  return s;
}

SchemeConfig SchemeOptions::resolve() const {
  const Profile p = profile ? parse_profile(*profile) : default_profile();
  return SchemeConfig::resolve(p, parse_layer(layer), flags);
}

int cmd_keygen(const KeygenOptions& o, std::ostream& out, std::ostream& err) {
  const SchemeConfig cfg = o.scheme.resolve();
  const std::uint64_t seed = resolve_seed(o.seed, err);
  const LayerOps ops = make_layer(cfg);
  const BitString sk_seed = key_seed(seed);
  const Bytes vk = ops.vk_of(sk_seed);
  const std::string sk_path = o.out + extension(FileKind::kSecretKey);
  const std::string vk_path = o.out + extension(FileKind::kVerificationKey);
  save(sk_path, {FileKind::kSecretKey, cfg, sk_seed.to_bytes()});
  save(vk_path, {FileKind::kVerificationKey, cfg, vk});
  Json j;
  j["command"] = "keygen";
  j["scheme"] = ops.name;
  j["config"] = cfg.to_json();
  j["sk"] = sk_path;
  j["vk"] = vk_path;
  j["vk_fingerprint"] = games::fingerprint(vk);
  print(out, j);
  return kExitOk;
}

int cmd_pkgen(const PkgenOptions& o, std::ostream& out, std::ostream& err) {
  if (o.layer) parse_layer(*o.layer);
  const KeyFile sk = load(o.sk, FileKind::kSecretKey);
  if (o.layer && parse_layer(*o.layer) != sk.config.layer) {
    throw UsageError("--layer " + *o.layer + " does not match the key's layer " +
                     to_string(sk.config.layer));
  }
  const std::uint64_t seed = resolve_seed(o.seed, err);
  const LayerOps ops = make_layer(sk.config);
  Rng rng = Rng(seed).fork("pkgen");
  const Bytes pk = ops.pkgen(BitString::from_bytes(sk.payload, 128), rng);
  save(o.out, {FileKind::kPublicKey, sk.config, pk});
  if (o.dump_state) {
    const std::string text = ops.dump_pk(pk);
    if (*o.dump_state == "-") {
      out << text;
    } else {
      std::ofstream f(*o.dump_state);
      if (!f) throw UsageError("cannot write " + *o.dump_state);
      f << text;
    }
  }
  Json j;
  j["command"] = "pkgen";
  j["scheme"] = ops.name;
  j["pk"] = o.out;
  j["bytes"] = pk.size();
  j["pk_fingerprint"] = games::fingerprint(pk);
  print(out, j);
  return kExitOk;
}

int cmd_enc(const EncOptions& o, std::ostream& out, std::ostream& err) {
  const KeyFile vk = load(o.vk, FileKind::kVerificationKey);
  const KeyFile pk = load(o.pk, FileKind::kPublicKey);
  require_same(vk.config, pk.config, "verification key and public key");
  const LayerOps ops = make_layer(vk.config);
  BitString msg;
  try {
    msg = BitString::from_string(o.msg);
  } catch (const std::invalid_argument&) {
    throw UsageError("--msg must be a string of 0s and 1s");
  }
  if (msg.size() != ops.message_bits) {
    throw UsageError("--msg must have " + std::to_string(ops.message_bits) + " bits");
  }
  const std::uint64_t seed = resolve_seed(o.seed, err);
  Rng rng = Rng(seed).fork("enc");
  auto [ct, bottom] = [&] {
    try {
      return ops.enc(vk.payload, pk.payload, msg, rng);
    } catch (const ParseError& e) {
      throw UsageError(std::string("corrupt key payload: ") + e.what());
    }
  }();
  save(o.out, {FileKind::kCiphertext, vk.config, ct});
  Json j;
  j["command"] = "enc";
  j["scheme"] = ops.name;
  j["ct"] = o.out;
  j["bottom"] = bottom;
  j["ct_hex"] = to_hex(ct);
  print(out, j);
  return kExitOk;
}

int cmd_dec(const DecOptions& o, std::ostream& out, std::ostream&) {
  const KeyFile sk = load(o.sk, FileKind::kSecretKey);
  const KeyFile ct = load(o.ct, FileKind::kCiphertext);
  require_same(sk.config, ct.config, "secret key and ciphertext");
  const LayerOps ops = make_layer(sk.config);
  std::optional<BitString> msg;
  try {
    msg = ops.dec(BitString::from_bytes(sk.payload, 128), ct.payload);
  } catch (const ParseError& e) {
    throw UsageError(std::string("corrupt ciphertext payload: ") + e.what());
  }
  if (!msg) {
    out << "bottom\n";
    return kExitBottom;
  }
  out << msg->to_string() << "\n";
  return kExitOk;
}

void list_adversaries(std::ostream& out) {
  for (const auto& info : games::base_adversaries()) {
    out << info.name << "\tbase games (cpa, cva, hybrid0-2) on base or strawman\t"
        << info.summary << "\n";
  }
  out << "honest\tscheme games, every layer\tforwards copy 1, guesses at random\n"
      << "keyswap\tscheme games, every layer\tsubstitutes a key of its own\n"
      << "sk-oracle\tscheme games, every layer\tholds the secret key\n"
      << "greedy\tscheme games, every layer\tqueries ODec2 twice on the challenge\n"
      << "maul\tcca and 1cca on base\tflips one bit of the challenge and asks ODec2\n"
      << "replay\tcca and 1cca on cca\tre-authenticates the challenge with a second token\n"
      << "honest\trecyclable-qpk and recyclable-rk on rec\tguesses at random\n"
      << "match\trecyclable-qpk and recyclable-rk on rec\tcompares rEnc outputs\n";
}

int cmd_game(const GameOptions& o, std::ostream& out, std::ostream& err) {
  if (o.adversary == "list") {
    list_adversaries(out);
    return kExitOk;
  }
  const auto game = games::parse_game_id(o.game);
  if (!game) throw UsageError("unknown game '" + o.game + "'");
  if (o.trials == 0) throw UsageError("--trials must be positive");
  if (o.m == 0) throw UsageError("--m must be positive");
  if (o.jobs == 0) throw UsageError("--jobs must be positive");
  games::GameSpec spec;
  spec.game = *game;
  spec.copies = o.m;
  spec.trials = o.trials;
  spec.jobs = o.jobs;
  spec.seed = resolve_seed(o.seed, err);
  const games::GameResult result = play(o, spec);
  if (o.output) {
    std::ofstream f(*o.output);
    if (!f) throw UsageError("cannot write " + *o.output);
    f << result.to_jsonl();
  }
  print(out, result.summary());
  return kExitOk;
}

int cmd_demo(const DemoOptions& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(o.seed, err);
  if (o.kind == "extractor") {
    const auto rep =
        games::extractor_demo(games::distinguisher_with_advantage(o.delta), o.trials, seed);
    Json j = rep.to_json();
    j["analytic"] = rep.floor;
    print(out, j);
  } else if (o.kind == "bz") {
    games::BzCircuit circuit;
    if (o.pipeline == "extractor") {
      if (o.k != 2 && o.k != 4) throw UsageError("--k must be 2 or 4 for the extractor pipeline");
      circuit = games::extractor_pipeline(games::distinguisher_with_advantage(o.delta),
                                          o.k == 2 ? std::vector<std::string>{base::kRegA}
                                                   : std::vector<std::string>{base::kRegA, "C"});
    } else if (o.pipeline == "hadamard") {
      circuit = games::hadamard_pipeline(o.width);
    } else if (o.pipeline == "classical") {
      circuit = games::classical_pipeline(o.width);
    } else {
      throw UsageError("unknown pipeline '" + o.pipeline + "'");
    }
    print(out, games::bz_factor_check(circuit, o.trials, seed).to_json());
  } else if (o.kind == "hadamard-stats") {
    print(out, games::hadamard_stats(o.width, o.samples, seed).to_json());
  } else if (o.kind == "cannot-find-both") {
    std::vector<std::pair<std::string, pure::FindBothStrategy>> which;
    if (o.strategy == "measure-all" || o.strategy == "all") {
      which.emplace_back("measure-all", pure::FindBothStrategy::kMeasureAll);
    }
    if (o.strategy == "basis-split" || o.strategy == "all") {
      which.emplace_back("basis-split", pure::FindBothStrategy::kBasisSplit);
    }
    if (which.empty()) {
      throw UsageError("unknown strategy '" + o.strategy + "' (measure-all, basis-split)");
    }
    pure::PureParams params;
    params.u = o.u;
    params.v = o.v;
    params.validate();
    for (const auto& [name, strategy] : which) {
      const auto rep = pure::cannot_find_both_trial(params, o.copies, strategy, o.trials, seed);
      Json j;
      j["strategy"] = name;
      j["u"] = params.u;
      j["v"] = params.v;
      j["copies"] = rep.copies;
      j["success"] = games::Rate{rep.successes, rep.trials}.to_json();
      j["bound"] = rep.bound;
      print(out, j);
    }
  } else if (o.kind == "double-sign") {
    std::vector<games::DoubleSignStrategy> which;
    if (o.strategy == "all") {
      which = games::all_double_sign_strategies();
    } else if (auto s = games::parse_double_sign_strategy(o.strategy)) {
      which.push_back(*s);
    } else {
      throw UsageError("unknown strategy '" + o.strategy + "'");
    }
    for (auto s : which) {
      print(out, games::tmac_double_sign(s, primitives::TmacParams{}, o.trials, seed).to_json());
    }
  } else {
    throw UsageError("unknown demo '" + o.kind +
                     "' (extractor, bz, hadamard-stats, cannot-find-both, double-sign)");
  }
  return kExitOk;
}

}  // namespace qpke::cli
