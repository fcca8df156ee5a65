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

#ifndef QPKE_RNG_H_
#define QPKE_RNG_H_

#include <cstdint>
#include <limits>
#include <string_view>

#include "qpke/bitstring.h"

namespace qpke {

/// Counter-based splittable generator.
///
/// Output i of a stream is a fixed mixing function of (stream key, i), so any
/// draw can be replayed from the key and its index. `draws()` is the index of
/// the next draw. Child streams come from `fork`, which never advances the
/// parent. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc908ULL, 0)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_, counter_++); }

  /// Independent child stream; depends only on this stream's key and `index`.
  Rng fork(std::uint64_t index) const;
  /// Child stream labelled by a string (domain separation for sub-protocols).
  Rng fork(std::string_view label) const;

  bool bit() { return (*this)() >> 63; }
  /// Uniform in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double uniform();
  BitString bits(std::size_t n);

  std::uint64_t key() const { return key_; }
  std::uint64_t draws() const { return counter_; }

 private:
  Rng(std::uint64_t key, std::uint64_t counter, int) : key_(key), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t key, std::uint64_t counter);

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qpke

#endif  // QPKE_RNG_H_
