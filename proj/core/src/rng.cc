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

#include "qpke/rng.h"

#include <stdexcept>

namespace qpke {

namespace {

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t key, std::uint64_t counter) {
  // Two finalizer passes keyed on both halves; consecutive counters land far
  // apart after the first multiply.
  std::uint64_t z = finalize(key + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  return finalize(z ^ (key >> 17 | key << 47));
}

Rng Rng::fork(std::uint64_t index) const {
  const std::uint64_t child = mix(key_ ^ 0xa54ff53a5f1d36f1ULL, index ^ 0x510e527fade682d1ULL);
  return Rng(child, 0, 0);
}

Rng Rng::fork(std::string_view label) const {
  // FNV-1a over the label, then the integer fork.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return fork(mix(h, 0x9b05688c2b3e6c1fULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below: zero bound");
  }
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x < limit) return x % bound;
  }
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

BitString Rng::bits(std::size_t n) {
  BitString out(n);
  auto words = out.mutable_words();
  for (auto& w : words) {
    w = (*this)();
  }
  if (n % 64 != 0) {
    words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  }
  return out;
}

}  // namespace qpke
