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

// Dense reference simulator used as an independent oracle in tests. It works
// on the full 2^n amplitude vector with the first bit most significant and
// shares no code with the sparse simulator beyond BitString.

#ifndef QPKE_TESTS_DENSE_ORACLE_H_
#define QPKE_TESTS_DENSE_ORACLE_H_

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "qpke/bitstring.h"

namespace qpke::testing {

using Cplx = std::complex<double>;

struct DenseState {
  std::size_t n = 0;
  std::vector<Cplx> amp;

  explicit DenseState(std::size_t qubits) : n(qubits), amp(std::size_t{1} << qubits) {}

  std::size_t mask(std::size_t qubit) const { return std::size_t{1} << (n - 1 - qubit); }

  void set(const BitString& basis, Cplx a) { amp[index(basis)] += a; }

  std::size_t index(const BitString& basis) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = (idx << 1) | (basis.get(i) ? 1u : 0u);
    return idx;
  }

  void normalize() {
    double t = 0;
    for (auto& a : amp) t += std::norm(a);
    for (auto& a : amp) a /= std::sqrt(t);
  }

  void hadamard(std::size_t q) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (i & m) continue;
      const Cplx a = amp[i];
      const Cplx b = amp[i | m];
      amp[i] = s * (a + b);
      amp[i | m] = s * (a - b);
    }
  }

  void z(std::size_t q) {
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (i & mask(q)) amp[i] = -amp[i];
    }
  }

  // Marginal distribution of the listed qubits in the computational basis,
  // keyed by the outcome string in listed order.
  std::map<BitString, double> marginal(const std::vector<std::size_t>& qubits) const {
    std::map<BitString, double> out;
    for (std::size_t i = 0; i < amp.size(); ++i) {
      const double p = std::norm(amp[i]);
      if (p < 1e-15) continue;
      BitString key(qubits.size());
      for (std::size_t k = 0; k < qubits.size(); ++k) key.set(k, (i & mask(qubits[k])) != 0);
      out[key] += p;
    }
    return out;
  }
};

}  // namespace qpke::testing

#endif  // QPKE_TESTS_DENSE_ORACLE_H_
