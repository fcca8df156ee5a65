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

#include "qpke/scheme.h"

#include "qpke/hash.h"

namespace qpke {

BitString derive_seed(std::string_view tag, const BitString& seed, std::uint64_t index) {
  return primitives::hash(tag, seed.concat(BitString::from_uint(index, 64)), 128);
}

}  // namespace qpke
