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
#include <span>
#include <unordered_map>
#include <vector>

#include "gmiqcc/bits.hpp"
#include "gmiqcc/errors.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"

namespace gmiqcc {

inline constexpr double kDefaultGradientFloor = 1e-10;

// All odd-y-parity Pauli products with this x-string share `gradient`.
struct GradientPartition {
  BitString x_string;
  double gradient = 0.0;
};

// Nonzero-gradient partitions, descending gradient, ties by ascending x-string.
class PartitionTable {
 public:
  PartitionTable() = default;
  explicit PartitionTable(std::vector<GradientPartition> partitions)
      : partitions_(std::move(partitions)) {
    std::sort(partitions_.begin(), partitions_.end(),
              [](const GradientPartition& a, const GradientPartition& b) {
                if (a.gradient != b.gradient) return a.gradient > b.gradient;
                return a.x_string < b.x_string;
              });
    index_.reserve(partitions_.size());
    for (std::size_t i = 0; i < partitions_.size(); ++i) index_.emplace(partitions_[i].x_string, i);
  }

  std::span<const GradientPartition> partitions() const { return partitions_; }
  std::size_t size() const { return partitions_.size(); }
  bool empty() const { return partitions_.empty(); }
  const GradientPartition& operator[](std::size_t i) const { return partitions_[i]; }

  std::span<const GradientPartition> top(std::size_t p) const {
    return std::span<const GradientPartition>(partitions_).first(std::min(p, partitions_.size()));
  }

  // Sum of all partition gradients, the convergence measure of the outer loop.
  double grad_norm() const {
    double sum = 0.0;
    for (const auto& p : partitions_) sum += p.gradient;
    return sum;
  }

  const GradientPartition* find(const BitString& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? nullptr : &partitions_[it->second];
  }

 private:
  std::vector<GradientPartition> partitions_;
  std::unordered_map<BitString, std::size_t, BitStringHash> index_;
};

// For each x-string group of the Ising form the gradient magnitude of every
// odd-y member is |sum_j c_j lambda_j|, lambda_j = <ref|Z_j|ref>. Groups at or
// below `gradient_floor` are dropped. Requires a real Hamiltonian.
inline PartitionTable screen(const IsingGrouping& grouping, const ReferenceState& ref,
                             double gradient_floor = kDefaultGradientFloor) {
  if (ref.size() != grouping.n_qubits()) {
    throw DimensionMismatch("reference size does not match Hamiltonian");
  }
  std::vector<GradientPartition> out;
  for (const auto& group : grouping.groups()) {
    double sum = 0.0;
    for (const auto& e : group.entries) {
      if (e.imaginary) {
        throw DataError("gradient screening needs a real Hamiltonian; term with x-string " +
                        group.x_bits.str() + " has an odd number of y factors");
      }
      sum += e.coeff * ref.z_eigenvalue(e.z_bits);
    }
    if (group.x_bits.none()) continue;
    const double g = std::abs(sum);
    if (g > gradient_floor) out.push_back(GradientPartition{group.x_bits, g});
  }
  return PartitionTable(std::move(out));
}

inline PartitionTable screen(const PauliHamiltonian& h, const ReferenceState& ref,
                             double gradient_floor = kDefaultGradientFloor) {
  detail::require_reference(h, ref);
  return screen(ising_grouping(h), ref, gradient_floor);
}

// |dE/dtau| at tau = 0 for generator p, read off the partition table.
inline double gradient_of(const PartitionTable& table, const PauliProduct& p) {
  if (p.is_identity()) throw InvalidArgument("gradient of the identity is undefined");
  if (!y_parity(p)) return 0.0;
  const GradientPartition* part = table.find(p.x_bits());
  return part ? part->gradient : 0.0;
}

inline double gradient_of(const PauliHamiltonian& h, const ReferenceState& ref,
                          const PauliProduct& p) {
  if (p.n_qubits() != h.n_qubits()) throw DimensionMismatch("Pauli size does not match Hamiltonian");
  if (p.is_identity()) throw InvalidArgument("gradient of the identity is undefined");
  return gradient_of(screen(h, ref), p);
}

// y on the lowest set qubit of the x-string, x on every other set qubit.
inline PauliProduct canonical_element(const BitString& x_string) {
  if (x_string.none()) throw InvalidArgument("canonical element needs a nonzero x-string");
  BitString z(x_string.size());
  z.set(x_string.lowest_set());
  return PauliProduct(x_string, z);
}

}  // namespace gmiqcc
