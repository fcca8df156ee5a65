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


#include "config.h"

#include <cstdlib>

namespace qpke::cli {

namespace {

const std::vector<std::pair<Layer, std::string>>& layer_table() {
  static const std::vector<std::pair<Layer, std::string>> t{
      {Layer::kBase, "base"}, {Layer::kWrap, "wrap"}, {Layer::kCva, "cva"},
      {Layer::kOneCca, "1cca"}, {Layer::kCca, "cca"},  {Layer::kMKey, "mkey"},
      {Layer::kRec, "rec"},   {Layer::kPure, "pure"}};
  return t;
}

primitives::SigParams profile_sig(Profile p) {
  switch (p) {
    case Profile::kMicro:
      return primitives::SigParams::micro();
    case Profile::kToy:
      return primitives::SigParams::toy();
    case Profile::kDemo:
      return primitives::SigParams::demo();
  }
  return {};
}

std::size_t profile_u(Profile p) { return p == Profile::kDemo ? 64 : 16; }

void check(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

}  // namespace

const char* to_string(Profile p) {
  switch (p) {
    case Profile::kMicro:
      return "micro";
    case Profile::kToy:
      return "toy";
    case Profile::kDemo:
      return "demo";
  }
  return "?";
}

const char* to_string(Layer l) {
  for (const auto& [layer, name] : layer_table()) {
    if (layer == l) return name.c_str();
  }
  return "?";
}

Profile parse_profile(std::string_view text) {
  for (Profile p : {Profile::kMicro, Profile::kToy, Profile::kDemo}) {
    if (text == to_string(p)) return p;
  }
  throw UsageError("unknown profile '" + std::string(text) + "' (micro, toy, demo)");
}

Layer parse_layer(std::string_view text) {
  for (const auto& [layer, name] : layer_table()) {
    if (text == name) return layer;
  }
  throw UsageError("unknown layer '" + std::string(text) + "'");
}

const std::vector<std::string>& layer_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [layer, name] : layer_table()) out.push_back(name);
    return out;
  }();
  return names;
}

Profile default_profile() {
  const char* env = std::getenv("QPKE_PROFILE");
  if (env == nullptr || *env == '\0') return Profile::kToy;
  return parse_profile(env);
}

SchemeConfig SchemeConfig::resolve(Profile profile, Layer layer, const SchemeFlags& flags) {
  SchemeConfig c;
  c.profile = profile;
  c.layer = layer;
  c.sig = profile_sig(profile);
  if (flags.lambda_h) c.sig.lambda_h = *flags.lambda_h;
  if (flags.depth) c.sig.depth = *flags.depth;
  c.u = flags.u.value_or(layer == Layer::kPure ? 4 : profile_u(profile));
  c.v = flags.v.value_or(32);
  c.ell = flags.ell;
  c.lambda_r = flags.lambda_r;
  c.index_bits = flags.index_bits;
  c.validate();
  return c;
}

void SchemeConfig::validate() const {
  check(sig.lambda_h >= 8 && sig.lambda_h <= 256 && sig.lambda_h % 8 == 0,
        "lambda_h must be a multiple of 8 in [8, 256]");
  check(sig.depth <= 32, "depth must be at most 32");
  check(ell >= 1 && ell <= 4096, "ell must be in [1, 4096]");
  if (layer == Layer::kPure) {
    check(u >= 1 && u <= 8, "pure layer: u must be in [1, 8]");
    check(v >= 1 && v <= 256, "pure layer: v must be in [1, 256]");
  } else {
    check(u >= 1 && u <= 256, "u must be in [1, 256]");
  }
  if (layer == Layer::kCva || layer == Layer::kOneCca || layer == Layer::kCca ||
      layer == Layer::kMKey || layer == Layer::kRec) {
    check(lambda_r >= 1 && lambda_r <= 64, "lambda_r must be in [1, 64]");
  }
  check(index_bits <= primitives::SigParams::micro().vk_len(),
        "index_bits must not exceed the binding key length");
}

base::BaseParams SchemeConfig::base_params() const { return {sig, u, true}; }

pure::PureParams SchemeConfig::pure_params() const {
  pure::PureParams p;
  p.u = u;
  p.v = v;
  p.sig = sig;
  return p;
}

nlohmann::ordered_json SchemeConfig::to_json() const {
  nlohmann::ordered_json j;
  j["profile"] = to_string(profile);
  j["layer"] = to_string(layer);
  j["lambda_h"] = sig.lambda_h;
  j["depth"] = sig.depth;
  j["u"] = u;
  j["v"] = v;
  j["ell"] = ell;
  j["lambda_r"] = lambda_r;
  j["index_bits"] = index_bits;
  return j;
}

SchemeConfig SchemeConfig::from_json(const nlohmann::ordered_json& j) {
  try {
    SchemeConfig c;
    c.profile = parse_profile(j.at("profile").get<std::string>());
    c.layer = parse_layer(j.at("layer").get<std::string>());
    c.sig.lambda_h = j.at("lambda_h").get<std::size_t>();
    c.sig.depth = j.at("depth").get<std::size_t>();
    c.u = j.at("u").get<std::size_t>();
    c.v = j.at("v").get<std::size_t>();
    c.ell = j.at("ell").get<std::size_t>();
    c.lambda_r = j.at("lambda_r").get<std::size_t>();
    c.index_bits = j.at("index_bits").get<std::size_t>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed scheme header: ") + e.what());
  }
}

}  // namespace qpke::cli
