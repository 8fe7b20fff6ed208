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

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string_view>
#include <vector>

#include "gmiqcc/errors.hpp"
#include "gmiqcc/gradient_screen.hpp"
#include "gmiqcc/growth_search.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"
#include "gmiqcc/selection.hpp"

namespace gmiqcc {

// Energy along the single-generator curve
//
//   E(tau) = <ref| e^{i tau G/2} H e^{-i tau G/2} |ref>
//          = base + curvature + slope sin(tau) - curvature cos(tau)
//
// with base = <H>, slope = dE/dtau at 0 (signed) and curvature = (<GHG> - <H>)/2.
struct TauOptimum {
  double tau = 0.0;
  double energy = 0.0;
  double base = 0.0;
  double slope = 0.0;
  double curvature = 0.0;

  double energy_at(double t) const { return base + curvature + slope * std::sin(t) - curvature * std::cos(t); }
};

// Closed-form global minimum of E(tau); tau is returned in (-pi, pi].
inline TauOptimum minimize_tau(const PauliHamiltonian& h, const ReferenceState& ref,
                               const PauliProduct& gen) {
  detail::require_reference(h, ref);
  if (gen.n_qubits() != h.n_qubits()) throw DimensionMismatch("generator size does not match Hamiltonian");
  if (gen.is_identity()) throw InvalidArgument("generator must not be the identity");

  TauOptimum out;
  out.base = expectation(h, ref);
  double anti_diagonal = 0.0;  // sum of c <P> over diagonal terms anticommuting with gen
  for (const auto& t : h.terms()) {
    const bool diagonal = t.pauli.x_bits().none();
    if (!diagonal && !(t.pauli.x_bits() == gen.x_bits())) continue;
    if (commutes(t.pauli, gen)) continue;
    if (diagonal) {
      anti_diagonal += t.coeff * ref.z_eigenvalue(t.pauli.z_bits());
    } else {
      // -i [P, G]/2 = -i P G = -i^{k+1} L with L diagonal
      const PhasedPauli pg = multiply(t.pauli, gen);
      const double sign = (pg.phase_exponent == 1) ? 1.0 : -1.0;
      out.slope += sign * t.coeff * ref.z_eigenvalue(pg.label.z_bits());
    }
  }
  out.curvature = -anti_diagonal;
  const double amplitude = std::hypot(out.slope, out.curvature);
  if (amplitude == 0.0) {
    throw InternalInconsistency("energy is flat along generator " + gen.str());
  }
  // slope sin t - curvature cos t = amplitude sin(t - phi), phi = atan2(curvature, slope)
  double tau = std::atan2(out.curvature, out.slope) - std::numbers::pi / 2;
  if (tau <= -std::numbers::pi) tau += 2 * std::numbers::pi;
  out.tau = tau;
  out.energy = out.base + out.curvature - amplitude;
  return out;
}

struct RunConfig {
  ScoringConfig scoring;
  SearchConfig search;
  std::size_t max_iterations = 20;
  // Stop once the sum of all partition gradients is at or below this value.
  double grad_norm_eps = 0.0;
  // Stop once |E_K - E_{K-1}| < energy_tol; 0 disables the test.
  double energy_tol = 0.0;
  double prune_eps = kDefaultPruneEps;
  double gradient_floor = kDefaultGradientFloor;
};

enum class RunStatus { converged_grad_norm, max_iterations, converged_energy };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged_grad_norm: return "converged_grad_norm";
    case RunStatus::converged_energy: return "converged_energy";
    case RunStatus::max_iterations: break;
  }
  return "max_iterations";
}

struct IterationRecord {
  std::size_t iteration = 0;
  PauliProduct generator;
  double gradient = 0.0;
  // Growth of the selected generator, an upper bound on the term increase.
  std::size_t growth_bound = 0;
  std::size_t multiplicity = 0;
  std::size_t anticommuting_count = 0;
  double score = 0.0;
  double tau_opt = 0.0;
  double energy = 0.0;
  // Terms of the dressed Hamiltonian.
  std::size_t term_count = 0;
  double grad_norm = 0.0;
  std::uint64_t n_query = 0;
  bool fallback_used = false;
  double wall_time = 0.0;
};

struct RunResult {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::max_iterations;
  double initial_energy = 0.0;
  std::size_t initial_term_count = 0;
  PauliHamiltonian final_hamiltonian;
};

// Called after every iteration with the record and the dressed Hamiltonian.
using IterationObserver = std::function<void(const IterationRecord&, const PauliHamiltonian&)>;

// Select, minimize and dress until the gradient norm, the energy change or the
// iteration budget says stop.
inline RunResult run(const PauliHamiltonian& h0, const ReferenceState& ref, const RunConfig& cfg,
                     const IterationObserver& observer = {}) {
  detail::require_reference(h0, ref);
  if (cfg.max_iterations == 0) throw InvalidArgument("max_iterations must be at least 1");
  if (!(cfg.grad_norm_eps >= 0.0) || !(cfg.energy_tol >= 0.0)) {
    throw InvalidArgument("convergence thresholds must be non-negative");
  }

  RunResult result;
  result.final_hamiltonian = PauliHamiltonian(
      h0.n_qubits(), std::vector<Term>(h0.terms().begin(), h0.terms().end()), h0.constant(), cfg.prune_eps);
  PauliHamiltonian& h = result.final_hamiltonian;
  result.initial_energy = expectation(h, ref);
  result.initial_term_count = h.term_count();

  double previous_energy = result.initial_energy;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const IsingGrouping grouping = ising_grouping(h);
    const PartitionTable table = screen(grouping, ref, cfg.gradient_floor);
    const double grad_norm = table.grad_norm();
    if (table.empty() || grad_norm <= cfg.grad_norm_eps) {
      result.status = RunStatus::converged_grad_norm;
      return result;
    }
    const Selection sel = select_generator(h, grouping, table, cfg.scoring, cfg.search);
    const TauOptimum opt = minimize_tau(h, ref, sel.generator);
    h = dress(h, sel.generator, opt.tau);

    IterationRecord rec;
    rec.iteration = k;
    rec.generator = sel.generator;
    rec.gradient = sel.score.partition.gradient;
    rec.growth_bound = sel.growth.growth;
    rec.multiplicity = sel.growth.multiplicity;
    rec.anticommuting_count = sel.growth.anticommuting_count;
    rec.score = sel.score.score;
    rec.tau_opt = opt.tau;
    rec.energy = opt.energy;
    rec.term_count = h.term_count();
    rec.grad_norm = grad_norm;
    rec.n_query = sel.n_query;
    rec.fallback_used = sel.fallback_used;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.records.push_back(rec);
    if (observer) observer(rec, h);

    if (std::abs(opt.energy - previous_energy) < cfg.energy_tol) {
      result.status = RunStatus::converged_energy;
      return result;
    }
    previous_energy = opt.energy;
  }
  result.status = RunStatus::max_iterations;
  return result;
}

}  // namespace gmiqcc
