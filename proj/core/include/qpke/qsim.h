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

// Sparse state-vector simulation for states supported on a handful of
// computational basis strings.
//
// A SparseState is a map from full-width basis strings to complex amplitudes,
// with the bit positions partitioned into named registers. All operations are
// free functions that return new states; a SparseState is never mutated after
// construction. Registers are addressed by name, so a state shared between
// two parties is one object whose registers are owned by name.

#ifndef QPKE_QSIM_H_
#define QPKE_QSIM_H_

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qpke/bitstring.h"
#include "qpke/rng.h"

namespace qpke::qsim {

using Amplitude = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr std::size_t kDefaultSupportCap = 4096;
/// Largest support measure_hadamard_all accepts (2^(k-1) parity patterns).
inline constexpr std::size_t kHadamardSupportCap = 20;
inline constexpr std::size_t kDenseMaxQubits = 14;

/// Thrown when a state would exceed a support cap or a dense size limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Register {
  std::string name;
  std::size_t width = 0;
  std::size_t offset = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::initializer_list<std::pair<std::string, std::size_t>> regs);

  /// Appends a register. Throws std::invalid_argument on a duplicate name.
  RegisterLayout& add(std::string name, std::size_t width);

  bool contains(std::string_view name) const;
  /// Throws std::out_of_range for an unknown name.
  const Register& at(std::string_view name) const;
  const std::vector<Register>& registers() const { return regs_; }
  std::size_t width() const { return width_; }

  BitString slice(const BitString& full, std::string_view name) const;
  /// Concatenation of the named register slices, in the order given.
  BitString gather(const BitString& full, std::span<const std::string> names) const;
  /// Layout with the named registers removed (offsets recomputed).
  RegisterLayout without(std::span<const std::string> names) const;
  /// Bit positions covered by the named registers, in the order given.
  std::vector<std::size_t> positions(std::span<const std::string> names) const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<Register> regs_;
  std::size_t width_ = 0;
};

class SparseState {
 public:
  using Terms = std::map<BitString, Amplitude>;

  const RegisterLayout& layout() const { return layout_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  std::size_t cap() const { return cap_; }
  Amplitude amplitude(const BitString& basis) const;
  double norm_squared() const;

  /// Builds a state from raw terms: merges nothing (keys are unique already),
  /// prunes tiny amplitudes, enforces `cap`, and renormalizes. Throws
  /// std::invalid_argument if any key has the wrong width or all amplitudes
  /// vanish.
  static SparseState from_terms(RegisterLayout layout, Terms terms,
                                std::size_t cap = kDefaultSupportCap);

 private:
  SparseState(RegisterLayout layout, Terms terms, std::size_t cap)
      : layout_(std::move(layout)), terms_(std::move(terms)), cap_(cap) {}

  RegisterLayout layout_;
  Terms terms_;
  std::size_t cap_ = kDefaultSupportCap;
};

/// Restriction of a state to a basis with an explicit unitary on that span.
struct SubspaceUnitary {
  std::vector<BitString> basis;
  Eigen::MatrixXcd matrix;

  /// Throws std::invalid_argument if the matrix is not square over the basis,
  /// the basis has duplicates, or the matrix is not unitary within 1e-9.
  void validate() const;
};

using OutcomeDistribution = std::map<BitString, double>;

enum class MeasurementBasis { kComputational, kHadamard };

struct Measurement {
  BitString outcome;
  SparseState state;
};

/// Classical function evaluated coherently; maps the gathered input registers
/// to the output register's width.
using ClassicalFunction = std::function<BitString(const BitString&)>;

SparseState make_basis_state(const RegisterLayout& layout, const BitString& value);

/// Normalized superposition; duplicate basis strings add their amplitudes.
SparseState superpose(const RegisterLayout& layout,
                      std::span<const std::pair<BitString, Amplitude>> terms,
                      std::size_t cap = kDefaultSupportCap);

/// |x>|y>_out -> |x>|y xor f(x)>_out. Unitary for any f; on a zero ancilla it
/// writes f(x).
SparseState coherent_eval(const SparseState& state, const ClassicalFunction& f,
                          std::span<const std::string> in_regs, std::string_view out_reg);

/// Phase (-1)^b on terms whose single-bit register `reg` is 1.
SparseState apply_z_power(const SparseState& state, std::string_view reg, bool b);

/// Applies a 2^w x 2^w unitary to the w-bit register `reg`. Matrix indices
/// read the register with its first bit most significant.
SparseState apply_register_unitary(const SparseState& state, std::string_view reg,
                                   const Eigen::MatrixXcd& unitary);

/// Throws std::invalid_argument if the support leaves the unitary's basis.
SparseState apply_subspace_unitary(const SparseState& state, const SubspaceUnitary& u);

/// Appends a zero-initialized register.
SparseState add_register(const SparseState& state, std::string name, std::size_t width);
/// Removes a register that holds the same value on every support term.
SparseState drop_register(const SparseState& state, std::string_view name);
/// Product state; register names must be disjoint.
SparseState tensor(const SparseState& a, const SparseState& b);
/// <a|b>. Layouts must match.
Amplitude inner_product(const SparseState& a, const SparseState& b);

/// Samples the named registers in the computational basis; the returned state
/// is the renormalized restriction (registers kept).
Measurement measure_computational(const SparseState& state,
                                  std::span<const std::string> regs, Rng& rng);
Measurement measure_computational(const SparseState& state, std::string_view reg, Rng& rng);

/// Samples all qubits of the named registers in the Hadamard basis. The
/// outcome concatenates the registers in the order given. The returned state
/// covers the remaining registers only. Throws CapacityError when the support
/// exceeds kHadamardSupportCap.
Measurement measure_hadamard_all(const SparseState& state,
                                 std::span<const std::string> regs, Rng& rng);

/// Exact outcome probabilities (entries above kPruneThreshold). Hadamard
/// enumeration needs the measured width to be at most 24 bits.
OutcomeDistribution exact_distribution(const SparseState& state, MeasurementBasis basis,
                                       std::span<const std::string> regs);

/// Full 2^n amplitude vector, first bit most significant. Test oracle only.
std::vector<Amplitude> dense_reference(const SparseState& state);

/// Debug text: one line per term, "<re> <im> <bits>" with hex-float amplitudes.
std::string dump_state(const SparseState& state);
SparseState parse_state_dump(const RegisterLayout& layout, std::string_view text);

/// Layout header "A:1,B:32" and its inverse.
std::string layout_to_string(const RegisterLayout& layout);
RegisterLayout layout_from_string(std::string_view text);

}  // namespace qpke::qsim

#endif  // QPKE_QSIM_H_
