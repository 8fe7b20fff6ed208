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

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gmiqcc/errors.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/iqcc.hpp"
#include "gmiqcc/pauli.hpp"

// Trajectory documents written by `gmiqcc iqcc`. Wall-clock timings are only
// emitted on request so that identical runs produce identical bytes.

namespace gmiqcc {

inline std::string_view to_string(Policy p) { return p == Policy::canonical ? "canonical" : "gm"; }
inline std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::deterministic ? "det" : "prob";
}

inline nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["policy"] = to_string(cfg.scoring.policy);
  j["bias"] = cfg.scoring.bias_a;
  j["top_p"] = cfg.scoring.top_p;
  j["search"] = to_string(cfg.scoring.search);
  j["r"] = cfg.search.r;
  j["r_fallback"] = cfg.search.r_fallback;
  j["fallback"] = cfg.search.fallback;
  j["samples"] = cfg.search.n_samples;
  j["seed"] = cfg.search.rng_seed;
  j["max_iterations"] = cfg.max_iterations;
  j["grad_norm_eps"] = cfg.grad_norm_eps;
  j["energy_tol"] = cfg.energy_tol;
  j["prune_eps"] = cfg.prune_eps;
  j["gradient_floor"] = cfg.gradient_floor;
  return j;
}

inline nlohmann::ordered_json record_json(const IterationRecord& r, bool timings) {
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["generator"] = r.generator.str();
  j["gradient"] = r.gradient;
  j["growth_bound"] = r.growth_bound;
  j["multiplicity"] = r.multiplicity;
  j["anticommuting_count"] = r.anticommuting_count;
  j["score"] = r.score;
  j["tau_opt"] = r.tau_opt;
  j["energy"] = r.energy;
  j["term_count"] = r.term_count;
  j["grad_norm"] = r.grad_norm;
  j["n_query"] = r.n_query;
  j["fallback_used"] = r.fallback_used;
  if (timings) j["wall_time"] = r.wall_time;
  return j;
}

inline nlohmann::ordered_json trajectory_json(const RunConfig& cfg, const ReferenceState& ref,
                                              const RunResult& result, bool timings = false) {
  nlohmann::ordered_json j;
  j["format"] = "gmiqcc-trajectory";
  j["version"] = 1;
  j["config"] = config_json(cfg);
  j["n_qubits"] = ref.size();
  j["reference"] = ref.str();
  j["initial_energy"] = result.initial_energy;
  j["initial_term_count"] = result.initial_term_count;
  auto& records = j["iterations"] = nlohmann::ordered_json::array();
  for (const auto& r : result.records) records.push_back(record_json(r, timings));
  j["status"] = to_string(result.status);
  j["final_energy"] = result.records.empty() ? result.initial_energy : result.records.back().energy;
  j["final_term_count"] = result.final_hamiltonian.term_count();
  return j;
}

// (generator, tau) pairs of a trajectory document, in application order.
inline std::vector<std::pair<PauliProduct, double>> trajectory_steps(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("iterations") || !doc["iterations"].is_array()) {
    throw DataError("trajectory document needs an \"iterations\" array");
  }
  std::vector<std::pair<PauliProduct, double>> steps;
  for (const auto& it : doc["iterations"]) {
    if (!it.contains("generator") || !it["generator"].is_string() || !it.contains("tau_opt") ||
        !it["tau_opt"].is_number()) {
      throw DataError("trajectory record needs \"generator\" and \"tau_opt\"");
    }
    steps.emplace_back(PauliProduct::from_string(it["generator"].get<std::string>()),
                       it["tau_opt"].get<double>());
  }
  return steps;
}

}  // namespace gmiqcc
