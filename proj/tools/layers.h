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


// Concrete scheme stacks behind each layer name, and a byte-level view of
// them for the file commands.

#ifndef QPKE_TOOLS_LAYERS_H_
#define QPKE_TOOLS_LAYERS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "config.h"
#include "qpke/base.h"
#include "qpke/pure.h"
#include "qpke/transforms/cca.h"
#include "qpke/transforms/cva.h"
#include "qpke/transforms/detect_wrap.h"
#include "qpke/transforms/mkey.h"
#include "qpke/transforms/onecca.h"
#include "qpke/transforms/recyclable.h"

namespace qpke::cli {

using WrapStack = transforms::DetectWrap<base::BaseScheme>;
using CvaStack = transforms::Cva<base::BaseScheme>;
using OneCcaStack = transforms::OneCca<CvaStack>;
using CcaStack = transforms::Cca<OneCcaStack>;
using MKeyStack = transforms::MKey<CcaStack>;
using RecStack = transforms::Recyclable<CvaStack>;

/// Binding signatures of the 1cca, cca and mkey layers.
inline primitives::SigParams binding_params() { return primitives::SigParams::micro(); }

/// Calls f with the concrete scheme object for cfg.layer.
template <class F>
decltype(auto) visit_layer(const SchemeConfig& cfg, F&& f) {
  const base::BaseParams bp = cfg.base_params();
  const transforms::OneCcaParams one{binding_params(), cfg.index_bits};
  switch (cfg.layer) {
    case Layer::kBase:
      return f(base::BaseScheme(bp, cfg.ell));
    case Layer::kWrap:
      return f(WrapStack(
          base::BaseScheme(bp, cfg.ell + primitives::SigParams::one_time().sig_len())));
    case Layer::kCva:
      return f(CvaStack(base::BaseScheme(bp, cfg.ell), cfg.lambda_r));
    case Layer::kOneCca:
      return f(OneCcaStack(CvaStack(base::BaseScheme(bp, cfg.ell), cfg.lambda_r), one));
    case Layer::kCca:
      return f(CcaStack(
          OneCcaStack(CvaStack(base::BaseScheme(bp, cfg.ell + binding_params().vk_len()),
                               cfg.lambda_r),
                      one),
          transforms::CcaParams{binding_params(), {}}));
    case Layer::kMKey:
      return f(MKeyStack(CcaStack(
          OneCcaStack(CvaStack(base::BaseScheme(bp, cfg.ell + binding_params().vk_len()),
                               cfg.lambda_r),
                      one),
          transforms::CcaParams{binding_params(), {}})));
    case Layer::kRec:
      return f(RecStack(CvaStack(base::BaseScheme(bp, primitives::kSkeKeyBits), cfg.lambda_r),
                        cfg.ell));
    case Layer::kPure:
      break;
  }
  return f(pure::PureScheme(cfg.pure_params(), cfg.ell));
}

/// Byte-level operations of one layer. Secret keys are represented by the
/// seed they are derived from.
struct LayerOps {
  std::string name;
  std::size_t message_bits = 0;
  std::function<Bytes(const BitString& seed)> vk_of;
  std::function<Bytes(const BitString& seed, Rng& rng)> pkgen;
  /// Ciphertext bytes and whether the ciphertext carries a bottom.
  std::function<std::pair<Bytes, bool>(std::span<const std::uint8_t> vk,
                                       std::span<const std::uint8_t> pk, const BitString& msg,
                                       Rng& rng)>
      enc;
  std::function<std::optional<BitString>(const BitString& seed, std::span<const std::uint8_t> ct)>
      dec;
  /// Text dump of every quantum state in a public key.
  std::function<std::string(std::span<const std::uint8_t> pk)> dump_pk;
};

LayerOps make_layer(const SchemeConfig& cfg);

}  // namespace qpke::cli

#endif  // QPKE_TOOLS_LAYERS_H_
