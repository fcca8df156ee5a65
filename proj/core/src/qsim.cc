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

#include "qpke/qsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace qpke::qsim {

namespace {

// Reads a register's bits as an integer with the first bit most significant.
std::size_t register_index(const BitString& full, const Register& reg) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < reg.width; ++i) {
    idx = (idx << 1) | (full.get(reg.offset + i) ? 1u : 0u);
  }
  return idx;
}

void write_register_index(BitString& full, const Register& reg, std::size_t idx) {
  for (std::size_t i = 0; i < reg.width; ++i) {
    full.set(reg.offset + i, (idx >> (reg.width - 1 - i)) & 1u);
  }
}

// The complement of `regs` within the layout, in layout order.
std::vector<std::string> other_registers(const RegisterLayout& layout,
                                         std::span<const std::string> regs) {
  std::vector<std::string> out;
  for (const auto& r : layout.registers()) {
    if (std::find(regs.begin(), regs.end(), r.name) == regs.end()) {
      out.push_back(r.name);
    }
  }
  return out;
}

void check_known(const RegisterLayout& layout, std::span<const std::string> regs) {
  for (std::size_t i = 0; i < regs.size(); ++i) {
    layout.at(regs[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (regs[i] == regs[j]) {
        throw std::invalid_argument("qsim: register listed twice: " + regs[i]);
      }
    }
  }
}

// Reduced row echelon basis over GF(2), built incrementally.
struct Gf2Basis {
  std::vector<BitString> rows;
  std::vector<std::size_t> pivots;

  static std::size_t first_set(const BitString& v) {
    const auto w = v.words();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    }
    return v.size();
  }

  void insert(BitString v) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (v.get(pivots[i])) v ^= rows[i];
    }
    if (v.is_zero()) return;
    const std::size_t p = first_set(v);
    for (auto& row : rows) {
      if (row.get(p)) row ^= v;
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
  }

  // Coordinates of a vector in the span: coefficient i is its pivot bit i.
  std::uint64_t coords(const BitString& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (v.get(pivots[i])) c |= std::uint64_t{1} << i;
    }
    return c;
  }
};

// Shared preparation for Hadamard measurements: splits every term into its
// measured part x_j and its remainder y_j, and reduces the differences
// x_j xor x_0 to an echelon basis.
struct HadamardSetup {
  std::vector<BitString> xs;
  std::vector<BitString> ys;
  std::vector<Amplitude> amps;
  std::vector<std::uint64_t> coords;
  std::vector<std::size_t> y_class;  // index into distinct remainders
  std::size_t num_classes = 0;
  Gf2Basis basis;
  RegisterLayout rest_layout;
};

HadamardSetup prepare_hadamard(const SparseState& state, std::span<const std::string> regs) {
  check_known(state.layout(), regs);
  const std::size_t k = state.support_size();
  if (k > kHadamardSupportCap) {
    throw CapacityError("measure_hadamard_all: support " + std::to_string(k) +
                        " exceeds " + std::to_string(kHadamardSupportCap));
  }
  HadamardSetup s;
  const auto rest = other_registers(state.layout(), regs);
  s.rest_layout = state.layout().without(regs);
  std::map<BitString, std::size_t> classes;
  for (const auto& [basis, amp] : state.terms()) {
    s.xs.push_back(state.layout().gather(basis, regs));
    s.ys.push_back(state.layout().gather(basis, rest));
    s.amps.push_back(amp);
    auto [it, inserted] = classes.emplace(s.ys.back(), classes.size());
    s.y_class.push_back(it->second);
  }
  s.num_classes = classes.size();
  for (std::size_t j = 1; j < k; ++j) {
    s.basis.insert(s.xs[j] ^ s.xs[0]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    s.coords.push_back(j == 0 ? 0 : s.basis.coords(s.xs[j] ^ s.xs[0]));
  }
  return s;
}

// Probability of each parity pattern p in {0,1}^m, where p_i = d . row_i.
std::vector<double> pattern_probabilities(const HadamardSetup& s) {
  const std::size_t m = s.basis.rows.size();
  const std::size_t patterns = std::size_t{1} << m;
  std::vector<double> probs(patterns, 0.0);
  std::vector<Amplitude> acc(s.num_classes);
  const double scale = std::ldexp(1.0, -static_cast<int>(m));
  for (std::size_t p = 0; p < patterns; ++p) {
    std::fill(acc.begin(), acc.end(), Amplitude{0.0, 0.0});
    for (std::size_t j = 0; j < s.amps.size(); ++j) {
      const bool odd = std::popcount(s.coords[j] & p) & 1;
      acc[s.y_class[j]] += odd ? -s.amps[j] : s.amps[j];
    }
    double total = 0.0;
    for (const auto& a : acc) total += std::norm(a);
    probs[p] = total * scale;
  }
  return probs;
}

// Forces d . row_i = p_i for every basis row by flipping pivot bits.
void fix_pattern(const Gf2Basis& basis, std::size_t pattern, BitString& d) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    const bool want = (pattern >> i) & 1u;
    if (d.dot(basis.rows[i]) != want) d.flip(basis.pivots[i]);
  }
}

}  // namespace

RegisterLayout::RegisterLayout(
    std::initializer_list<std::pair<std::string, std::size_t>> regs) {
  for (const auto& [name, width] : regs) add(name, width);
}

RegisterLayout& RegisterLayout::add(std::string name, std::size_t width) {
  if (contains(name)) {
    throw std::invalid_argument("RegisterLayout: duplicate register " + name);
  }
  regs_.push_back(Register{std::move(name), width, width_});
  width_ += width;
  return *this;
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(regs_.begin(), regs_.end(),
                     [&](const Register& r) { return r.name == name; });
}

const Register& RegisterLayout::at(std::string_view name) const {
  for (const auto& r : regs_) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("RegisterLayout: unknown register " + std::string(name));
}

BitString RegisterLayout::slice(const BitString& full, std::string_view name) const {
  const auto& r = at(name);
  return full.slice(r.offset, r.width);
}

BitString RegisterLayout::gather(const BitString& full,
                                 std::span<const std::string> names) const {
  BitString out;
  for (const auto& n : names) out.append(slice(full, n));
  return out;
}

RegisterLayout RegisterLayout::without(std::span<const std::string> names) const {
  RegisterLayout out;
  for (const auto& r : regs_) {
    if (std::find(names.begin(), names.end(), r.name) == names.end()) {
      out.add(r.name, r.width);
    }
  }
  return out;
}

std::vector<std::size_t> RegisterLayout::positions(std::span<const std::string> names) const {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    const auto& r = at(n);
    for (std::size_t i = 0; i < r.width; ++i) out.push_back(r.offset + i);
  }
  return out;
}

Amplitude SparseState::amplitude(const BitString& basis) const {
  auto it = terms_.find(basis);
  return it == terms_.end() ? Amplitude{} : it->second;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const auto& [_, a] : terms_) total += std::norm(a);
  return total;
}

SparseState SparseState::from_terms(RegisterLayout layout, Terms terms, std::size_t cap) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.size() != layout.width()) {
      throw std::invalid_argument("SparseState: basis string width " +
                                  std::to_string(it->first.size()) + " != layout width " +
                                  std::to_string(layout.width()));
    }
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  if (terms.empty()) {
    throw std::invalid_argument("SparseState: zero vector");
  }
  if (terms.size() > cap) {
    throw CapacityError("SparseState: support " + std::to_string(terms.size()) +
                        " exceeds cap " + std::to_string(cap));
  }
  double norm2 = 0.0;
  for (const auto& [_, a] : terms) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kPruneThreshold) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [_, a] : terms) a *= inv;
  }
  return SparseState(std::move(layout), std::move(terms), cap);
}

void SubspaceUnitary::validate() const {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (matrix.rows() != n || matrix.cols() != n) {
    throw std::invalid_argument("SubspaceUnitary: matrix is not " + std::to_string(n) +
                                "x" + std::to_string(n));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (basis[i] == basis[j]) {
        throw std::invalid_argument("SubspaceUnitary: duplicate basis vector");
      }
    }
  }
  const Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
  if (n > 0 && (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("SubspaceUnitary: matrix is not unitary");
  }
}

SparseState make_basis_state(const RegisterLayout& layout, const BitString& value) {
  SparseState::Terms terms;
  terms.emplace(value, Amplitude{1.0, 0.0});
  return SparseState::from_terms(layout, std::move(terms));
}

SparseState superpose(const RegisterLayout& layout,
                      std::span<const std::pair<BitString, Amplitude>> terms,
                      std::size_t cap) {
  SparseState::Terms merged;
  for (const auto& [basis, amp] : terms) merged[basis] += amp;
  return SparseState::from_terms(layout, std::move(merged), cap);
}

SparseState coherent_eval(const SparseState& state, const ClassicalFunction& f,
                          std::span<const std::string> in_regs, std::string_view out_reg) {
  const auto& layout = state.layout();
  check_known(layout, in_regs);
  const auto& out = layout.at(out_reg);
  if (std::find(in_regs.begin(), in_regs.end(), out.name) != in_regs.end()) {
    throw std::invalid_argument("coherent_eval: output register is also an input");
  }
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) {
    const BitString value = f(layout.gather(basis, in_regs));
    if (value.size() != out.width) {
      throw std::invalid_argument("coherent_eval: function output width " +
                                  std::to_string(value.size()) + " != register width " +
                                  std::to_string(out.width));
    }
    BitString moved = basis;
    moved.xor_at(out.offset, value);
    next.emplace(std::move(moved), amp);
  }
  // The map is a permutation of basis strings, so no terms collide.
  return SparseState::from_terms(layout, std::move(next), state.cap());
}

SparseState apply_z_power(const SparseState& state, std::string_view reg, bool b) {
  const auto& r = state.layout().at(reg);
  if (r.width != 1) {
    throw std::invalid_argument("apply_z_power: register " + r.name + " is not one qubit");
  }
  if (!b) return state;
  SparseState::Terms next = state.terms();
  for (auto& [basis, amp] : next) {
    if (basis.get(r.offset)) amp = -amp;
  }
  return SparseState::from_terms(state.layout(), std::move(next), state.cap());
}

SparseState apply_register_unitary(const SparseState& state, std::string_view reg,
                                   const Eigen::MatrixXcd& unitary) {
  const auto& r = state.layout().at(reg);
  if (r.width > 12) {
    throw CapacityError("apply_register_unitary: register wider than 12 qubits");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << r.width);
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw std::invalid_argument("apply_register_unitary: matrix dimension mismatch");
  }
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) {
    const auto col = static_cast<Eigen::Index>(register_index(basis, r));
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Amplitude u = unitary(row, col);
      if (std::abs(u) < kPruneThreshold) continue;
      BitString out = basis;
      write_register_index(out, r, static_cast<std::size_t>(row));
      next[out] += u * amp;
    }
  }
  return SparseState::from_terms(state.layout(), std::move(next), state.cap());
}

SparseState apply_subspace_unitary(const SparseState& state, const SubspaceUnitary& u) {
  u.validate();
  std::map<BitString, Eigen::Index> index;
  for (std::size_t i = 0; i < u.basis.size(); ++i) {
    if (u.basis[i].size() != state.layout().width()) {
      throw std::invalid_argument("apply_subspace_unitary: basis width mismatch");
    }
    index.emplace(u.basis[i], static_cast<Eigen::Index>(i));
  }
  Eigen::VectorXcd inside = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(u.basis.size()));
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) {
    auto it = index.find(basis);
    if (it == index.end()) {
      throw std::invalid_argument("apply_subspace_unitary: support not contained in basis");
    }
    inside(it->second) = amp;
  }
  const Eigen::VectorXcd mapped = u.matrix * inside;
  for (std::size_t i = 0; i < u.basis.size(); ++i) {
    const Amplitude a = mapped(static_cast<Eigen::Index>(i));
    if (std::abs(a) >= kPruneThreshold) next.emplace(u.basis[i], a);
  }
  return SparseState::from_terms(state.layout(), std::move(next), state.cap());
}

SparseState add_register(const SparseState& state, std::string name, std::size_t width) {
  RegisterLayout layout = state.layout();
  layout.add(std::move(name), width);
  const BitString zeros(width);
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) next.emplace(basis.concat(zeros), amp);
  return SparseState::from_terms(std::move(layout), std::move(next), state.cap());
}

SparseState drop_register(const SparseState& state, std::string_view name) {
  const auto& r = state.layout().at(name);
  const std::vector<std::string> dropped{r.name};
  const auto kept = other_registers(state.layout(), dropped);
  std::optional<BitString> value;
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) {
    BitString v = basis.slice(r.offset, r.width);
    if (value && *value != v) {
      throw std::invalid_argument("drop_register: register " + r.name +
                                  " is not in a fixed basis state");
    }
    value = std::move(v);
    next.emplace(state.layout().gather(basis, kept), amp);
  }
  return SparseState::from_terms(state.layout().without(dropped), std::move(next),
                                 state.cap());
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  RegisterLayout layout = a.layout();
  for (const auto& r : b.layout().registers()) layout.add(r.name, r.width);
  const std::size_t cap = std::max(a.cap(), b.cap());
  if (a.support_size() * b.support_size() > cap) {
    throw CapacityError("tensor: product support exceeds cap");
  }
  SparseState::Terms next;
  for (const auto& [xa, aa] : a.terms()) {
    for (const auto& [xb, ab] : b.terms()) next.emplace(xa.concat(xb), aa * ab);
  }
  return SparseState::from_terms(std::move(layout), std::move(next), cap);
}

Amplitude inner_product(const SparseState& a, const SparseState& b) {
  if (!(a.layout() == b.layout())) {
    throw std::invalid_argument("inner_product: layouts differ");
  }
  Amplitude total{};
  for (const auto& [basis, amp] : a.terms()) total += std::conj(amp) * b.amplitude(basis);
  return total;
}

Measurement measure_computational(const SparseState& state,
                                  std::span<const std::string> regs, Rng& rng) {
  check_known(state.layout(), regs);
  std::map<BitString, double> weights;
  for (const auto& [basis, amp] : state.terms()) {
    weights[state.layout().gather(basis, regs)] += std::norm(amp);
  }
  double total = 0.0;
  for (const auto& [_, w] : weights) total += w;
  double u = rng.uniform() * total;
  auto chosen = weights.begin();
  for (auto it = weights.begin(); it != weights.end(); ++it) {
    chosen = it;
    if (u < it->second) break;
    u -= it->second;
  }
  SparseState::Terms next;
  for (const auto& [basis, amp] : state.terms()) {
    if (state.layout().gather(basis, regs) == chosen->first) next.emplace(basis, amp);
  }
  return Measurement{chosen->first,
                     SparseState::from_terms(state.layout(), std::move(next), state.cap())};
}

Measurement measure_computational(const SparseState& state, std::string_view reg, Rng& rng) {
  const std::vector<std::string> regs{std::string(reg)};
  return measure_computational(state, regs, rng);
}

Measurement measure_hadamard_all(const SparseState& state,
                                 std::span<const std::string> regs, Rng& rng) {
  const HadamardSetup s = prepare_hadamard(state, regs);
  const auto probs = pattern_probabilities(s);
  double u = rng.uniform();
  std::size_t pattern = 0;
  for (std::size_t p = 0; p < probs.size(); ++p) {
    if (probs[p] <= 0.0) continue;
    pattern = p;
    if (u < probs[p]) break;
    u -= probs[p];
  }
  BitString d = rng.bits(s.xs[0].size());
  fix_pattern(s.basis, pattern, d);

  SparseState::Terms next;
  for (std::size_t j = 0; j < s.amps.size(); ++j) {
    next[s.ys[j]] += d.dot(s.xs[j]) ? -s.amps[j] : s.amps[j];
  }
  return Measurement{std::move(d),
                     SparseState::from_terms(s.rest_layout, std::move(next), state.cap())};
}

OutcomeDistribution exact_distribution(const SparseState& state, MeasurementBasis basis,
                                       std::span<const std::string> regs) {
  OutcomeDistribution out;
  if (basis == MeasurementBasis::kComputational) {
    check_known(state.layout(), regs);
    for (const auto& [b, amp] : state.terms()) {
      out[state.layout().gather(b, regs)] += std::norm(amp);
    }
  } else {
    const HadamardSetup s = prepare_hadamard(state, regs);
    const std::size_t n = s.xs[0].size();
    if (n > 24) {
      throw CapacityError("exact_distribution: Hadamard enumeration over " +
                          std::to_string(n) + " bits");
    }
    const auto probs = pattern_probabilities(s);
    std::vector<std::size_t> free_bits;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(s.basis.pivots.begin(), s.basis.pivots.end(), i) ==
          s.basis.pivots.end()) {
        free_bits.push_back(i);
      }
    }
    // Every d with a given pattern is equally likely.
    const std::size_t per_pattern = std::size_t{1} << free_bits.size();
    for (std::size_t p = 0; p < probs.size(); ++p) {
      if (probs[p] <= kPruneThreshold) continue;
      const double each = probs[p] / static_cast<double>(per_pattern);
      for (std::size_t f = 0; f < per_pattern; ++f) {
        BitString d(n);
        for (std::size_t i = 0; i < free_bits.size(); ++i) {
          if ((f >> i) & 1u) d.set(free_bits[i], true);
        }
        fix_pattern(s.basis, p, d);
        out[d] += each;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second <= kPruneThreshold ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Amplitude> dense_reference(const SparseState& state) {
  const std::size_t n = state.layout().width();
  if (n > kDenseMaxQubits) {
    throw CapacityError("dense_reference: " + std::to_string(n) + " qubits");
  }
  std::vector<Amplitude> v(std::size_t{1} << n);
  for (const auto& [basis, amp] : state.terms()) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = (idx << 1) | (basis.get(i) ? 1u : 0u);
    v[idx] = amp;
  }
  return v;
}

std::string dump_state(const SparseState& state) {
  std::string out;
  char buf[64];
  for (const auto& [basis, amp] : state.terms()) {
    std::snprintf(buf, sizeof buf, "%a ", amp.real());
    out += buf;
    std::snprintf(buf, sizeof buf, "%a ", amp.imag());
    out += buf;
    out += basis.to_string();
    out += '\n';
  }
  return out;
}

SparseState parse_state_dump(const RegisterLayout& layout, std::string_view text) {
  SparseState::Terms terms;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string re, im, bits;
    if (!(fields >> re >> im >> bits)) {
      throw std::invalid_argument("parse_state_dump: malformed line");
    }
    const Amplitude amp{std::strtod(re.c_str(), nullptr), std::strtod(im.c_str(), nullptr)};
    if (!terms.emplace(BitString::from_string(bits), amp).second) {
      throw std::invalid_argument("parse_state_dump: duplicate basis string");
    }
  }
  return SparseState::from_terms(layout, std::move(terms));
}

std::string layout_to_string(const RegisterLayout& layout) {
  std::string out;
  for (const auto& r : layout.registers()) {
    if (!out.empty()) out += ",";
    out += r.name + ":" + std::to_string(r.width);
  }
  return out;
}

RegisterLayout layout_from_string(std::string_view text) {
  RegisterLayout layout;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw std::invalid_argument("layout_from_string: bad item");
    }
    const std::string width(item.substr(colon + 1));
    std::size_t used = 0;
    const unsigned long w = std::stoul(width, &used);
    if (used != width.size()) throw std::invalid_argument("layout_from_string: bad width");
    layout.add(std::string(item.substr(0, colon)), w);
    start = end + 1;
  }
  return layout;
}

}  // namespace qpke::qsim
