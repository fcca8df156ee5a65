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


// Scheme configuration shared by every command and embedded in key files.

#ifndef QPKE_TOOLS_CONFIG_H_
#define QPKE_TOOLS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpke/base.h"
#include "qpke/pure.h"
#include "qpke/signature.h"

namespace qpke::cli {

/// Bad flags, bad files or an invalid combination; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Profile { kMicro, kToy, kDemo };
enum class Layer { kBase, kWrap, kCva, kOneCca, kCca, kMKey, kRec, kPure };

const char* to_string(Profile p);
const char* to_string(Layer l);
/// Throw UsageError on unknown names.
Profile parse_profile(std::string_view text);
Layer parse_layer(std::string_view text);
const std::vector<std::string>& layer_names();

/// QPKE_PROFILE if set, toy otherwise. Throws UsageError on an unknown value.
Profile default_profile();

/// Explicit flag values; unset fields fall back to the profile.
struct SchemeFlags {
  std::optional<std::size_t> lambda_h;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> u;
  std::optional<std::size_t> v;
  std::size_t ell = 8;
  std::size_t lambda_r = 2;
  std::size_t index_bits = 0;
};

/// Fully resolved scheme parameters.
struct SchemeConfig {
  Profile profile = Profile::kToy;
  Layer layer = Layer::kBase;
  primitives::SigParams sig;
  std::size_t u = 16;
  std::size_t v = 32;
  std::size_t ell = 8;
  std::size_t lambda_r = 2;
  std::size_t index_bits = 0;

  static SchemeConfig resolve(Profile profile, Layer layer, const SchemeFlags& flags);

  /// Throws UsageError when a parameter is outside the layer's bounds.
  void validate() const;

  base::BaseParams base_params() const;
  pure::PureParams pure_params() const;

  nlohmann::ordered_json to_json() const;
  /// Throws UsageError on missing or malformed fields.
  static SchemeConfig from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

}  // namespace qpke::cli

#endif  // QPKE_TOOLS_CONFIG_H_
