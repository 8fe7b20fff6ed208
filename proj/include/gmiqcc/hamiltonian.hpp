// Copyright 2026 The gmiqcc Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gmiqcc/bits.hpp"
#include "gmiqcc/errors.hpp"
#include "gmiqcc/pauli.hpp"

namespace gmiqcc {

inline constexpr double kDefaultPruneEps = 1e-8;

struct Term {
  PauliProduct pauli;
  double coeff = 0.0;
};

// Sparse real-coefficient qubit Hamiltonian
//
//   H = constant * 1 + sum_i coeff_i * P_i
//
// The identity term is held in `constant` and never appears among `terms()`,
// so term_count() is the number of non-identity Pauli products. Terms are kept
// sorted by (x_bits, z_bits) and no stored coefficient is smaller in magnitude
// than prune_eps (exact zeros are dropped even when prune_eps is 0).
class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;

  explicit PauliHamiltonian(std::size_t n_qubits, double prune_eps = kDefaultPruneEps)
      : n_qubits_(n_qubits), prune_eps_(prune_eps) {
    validate_header();
  }

  // Duplicate labels are summed in input order, identity entries are folded
  // into the constant and the result is pruned.
  PauliHamiltonian(std::size_t n_qubits, std::vector<Term> terms, double constant = 0.0,
                   double prune_eps = kDefaultPruneEps)
      : n_qubits_(n_qubits), prune_eps_(prune_eps), constant_(constant) {
    validate_header();
    if (!std::isfinite(constant)) throw DataError("non-finite constant term");
    for (const auto& t : terms) {
      if (t.pauli.n_qubits() != n_qubits_) {
        throw DimensionMismatch("term " + t.pauli.str() + " does not act on " +
                                std::to_string(n_qubits_) + " qubits");
      }
      if (!std::isfinite(t.coeff)) throw DataError("non-finite coefficient on " + t.pauli.str());
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) { return a.pauli < b.pauli; });
    terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
      double sum = 0.0;
      std::size_t j = i;
      for (; j < terms.size() && terms[j].pauli == terms[i].pauli; ++j) sum += terms[j].coeff;
      if (terms[i].pauli.is_identity()) {
        constant_ += sum;
      } else if (keep(sum)) {
        terms_.push_back(Term{terms[i].pauli, sum});
      }
      i = j;
    }
  }

  std::size_t n_qubits() const { return n_qubits_; }
  double prune_eps() const { return prune_eps_; }
  double constant() const { return constant_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  const Term* find(const PauliProduct& p) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                               [](const Term& t, const PauliProduct& key) { return t.pauli < key; });
    if (it == terms_.end() || !(it->pauli == p)) return nullptr;
    return &*it;
  }
  bool contains(const PauliProduct& p) const { return find(p) != nullptr; }

  // Coefficient of p, zero when absent; the identity maps to the constant.
  double coefficient(const PauliProduct& p) const {
    if (p.is_identity()) return constant_;
    const Term* t = find(p);
    return t ? t->coeff : 0.0;
  }

  bool keep(double c) const { return c != 0.0 && std::abs(c) >= prune_eps_; }

 private:
  void validate_header() const {
    if (n_qubits_ == 0 || n_qubits_ > kMaxQubits) {
      throw InvalidArgument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (!(prune_eps_ >= 0.0)) throw InvalidArgument("prune_eps must be non-negative");
  }

  std::size_t n_qubits_ = 0;
  double prune_eps_ = kDefaultPruneEps;
  double constant_ = 0.0;
  std::vector<Term> terms_;
};

// Computational basis state; bit q is the occupation of qubit q.
class ReferenceState {
 public:
  ReferenceState() = default;
  explicit ReferenceState(BitString bits) : bits_(bits) {}
  static ReferenceState from_string(std::string_view bits) {
    return ReferenceState(BitString::from_string(bits));
  }
  // All-zero state.
  static ReferenceState vacuum(std::size_t n_qubits) { return ReferenceState(BitString(n_qubits)); }

  const BitString& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  std::string str() const { return bits_.str(); }

  // Eigenvalue of Z^z on this state.
  double z_eigenvalue(const BitString& z) const { return and_parity(z, bits_) ? -1.0 : 1.0; }

 private:
  BitString bits_;
};

namespace detail {

inline void require_reference(const PauliHamiltonian& h, const ReferenceState& ref) {
  if (ref.size() != h.n_qubits()) {
    throw DimensionMismatch("reference has " + std::to_string(ref.size()) +
                            " qubits, Hamiltonian has " + std::to_string(h.n_qubits()));
  }
}

}  // namespace detail

// <ref|H|ref>, constant included. Only diagonal (x-free) terms contribute.
inline double expectation(const PauliHamiltonian& h, const ReferenceState& ref) {
  detail::require_reference(h, ref);
  double energy = h.constant();
  for (const auto& t : h.terms()) {
    if (t.pauli.x_bits().any()) break;  // diagonal terms sort first
    energy += t.coeff * ref.z_eigenvalue(t.pauli.z_bits());
  }
  return energy;
}

// Exact unitary dressing
//
//   e^{i tau G/2} H e^{-i tau G/2}
//     = H - (i/2) sin(tau) [H, G] + (1/2)(1 - cos(tau)) (G H G - H).
//
// Terms commuting with G are untouched. An anticommuting term c P becomes
// c cos(tau) P + c sin(tau) (-i P G); since P G = i^k L with k odd the second
// coefficient is real. The result is pruned with h's prune_eps.
inline PauliHamiltonian dress(const PauliHamiltonian& h, const PauliProduct& gen, double tau) {
  if (gen.n_qubits() != h.n_qubits()) {
    throw DimensionMismatch("generator " + gen.str() + " does not match Hamiltonian size");
  }
  if (gen.is_identity()) throw InvalidArgument("dressing generator must not be the identity");
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  std::vector<Term> out;
  out.reserve(h.term_count() * 2);
  for (const auto& t : h.terms()) {
    if (commutes(t.pauli, gen)) {
      out.push_back(t);
      continue;
    }
    const PhasedPauli pg = multiply(t.pauli, gen);
    // -i * i^k = -i^{k+1}; k is 1 or 3.
    const double sign = (pg.phase_exponent == 1) ? 1.0 : -1.0;
    out.push_back(Term{t.pauli, t.coeff * c});
    out.push_back(Term{pg.label, sign * t.coeff * s});
  }
  return PauliHamiltonian(h.n_qubits(), std::move(out), h.constant(), h.prune_eps());
}

// One z-string entry of a generalized Ising group: the Hamiltonian term equals
// coeff * (imaginary ? i : 1) * Z^z X^x, with Z to the left of X.
struct IsingEntry {
  BitString z_bits;
  double coeff = 0.0;
  bool imaginary = false;
};

struct IsingGroup {
  BitString x_bits;
  std::vector<IsingEntry> entries;
};

// H = sum_i (sum_j c_j^(i) Z_j^(i)) X_i, one group per distinct x-string,
// groups in ascending x-string order. The diagonal group (x = 0) is included
// when H has diagonal terms; the constant is not.
class IsingGrouping {
 public:
  IsingGrouping() = default;
  IsingGrouping(std::size_t n_qubits, std::vector<IsingGroup> groups)
      : n_qubits_(n_qubits), groups_(std::move(groups)) {
    index_.reserve(groups_.size());
    for (std::size_t i = 0; i < groups_.size(); ++i) index_.emplace(groups_[i].x_bits, i);
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const IsingGroup> groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }

  const IsingGroup* find(const BitString& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? nullptr : &groups_[it->second];
  }
  std::optional<std::size_t> index_of(const BitString& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // True when every entry has a real coefficient, i.e. H is a real matrix.
  bool is_real() const {
    for (const auto& g : groups_) {
      for (const auto& e : g.entries) {
        if (e.imaginary) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<IsingGroup> groups_;
  std::unordered_map<BitString, std::size_t, BitStringHash> index_;
};

namespace detail {

// Hermitian label L = (-i)^k Z^z X^x with k = |x & z|. Returns the real sign
// s and imaginary flag with (-i)^k = s * (imaginary ? i : 1).
inline std::pair<double, bool> zx_factor(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, false};
    case 1: return {-1.0, true};
    case 2: return {-1.0, false};
    default: return {1.0, true};
  }
}

}  // namespace detail

inline IsingGrouping ising_grouping(const PauliHamiltonian& h) {
  std::vector<IsingGroup> groups;
  for (const auto& t : h.terms()) {
    const BitString& x = t.pauli.x_bits();
    if (groups.empty() || !(groups.back().x_bits == x)) groups.push_back(IsingGroup{x, {}});
    const auto [sign, imag] = detail::zx_factor(t.pauli.y_count());
    groups.back().entries.push_back(IsingEntry{t.pauli.z_bits(), sign * t.coeff, imag});
  }
  return IsingGrouping(h.n_qubits(), std::move(groups));
}

// Inverse of ising_grouping. Throws DataError if an entry would need a
// complex Pauli-basis coefficient.
inline PauliHamiltonian from_grouping(const IsingGrouping& g, double constant = 0.0,
                                      double prune_eps = kDefaultPruneEps) {
  std::vector<Term> terms;
  for (const auto& group : g.groups()) {
    for (const auto& e : group.entries) {
      PauliProduct p(group.x_bits, e.z_bits);
      const auto [sign, imag] = detail::zx_factor(p.y_count());
      if (imag != e.imaginary) {
        throw DataError("Ising entry for " + p.str() + " does not map to a real coefficient");
      }
      terms.push_back(Term{p, sign * e.coeff});
    }
  }
  return PauliHamiltonian(g.n_qubits(), std::move(terms), constant, prune_eps);
}

}  // namespace gmiqcc
