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
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <vector>

#include "gmiqcc/errors.hpp"
#include "gmiqcc/gradient_screen.hpp"
#include "gmiqcc/growth_search.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"

namespace gmiqcc {

enum class Policy { canonical, gm };

struct ScoringConfig {
  // Weight a of the gradient term; 1 selects purely by gradient.
  double bias_a = 1.0;
  // Number of highest-gradient partitions that are scored.
  std::size_t top_p = 10;
  Policy policy = Policy::gm;
  SearchMethod search = SearchMethod::deterministic;
  // Worker threads for the per-partition growth searches.
  unsigned threads = 1;
};

struct PartitionScore {
  GradientPartition partition;
  std::size_t min_growth = 0;
  double normalized_gradient = 0.0;
  double normalized_growth = 0.0;
  double score = 0.0;
  PauliProduct min_growth_element;
};

// Normalizes gradients and growths by their window means and scores each
// partition with s = a g~ - (1 - a) gamma~. A window whose growths are all zero
// gets gamma~ = 0 throughout. Output is sorted by descending score, then
// descending gradient, then ascending x-string.
inline std::vector<PartitionScore> score_table(std::span<const GradientPartition> partitions,
                                               std::span<const std::size_t> growths, double bias_a,
                                               std::span<const PauliProduct> elements = {}) {
  if (partitions.size() != growths.size()) {
    throw InvalidArgument("score_table: partitions and growths differ in length");
  }
  if (!elements.empty() && elements.size() != partitions.size()) {
    throw InvalidArgument("score_table: elements and partitions differ in length");
  }
  if (partitions.empty()) throw InvalidArgument("score_table: empty window");
  if (!(bias_a >= 0.0 && bias_a <= 1.0)) throw InvalidArgument("bias must lie in [0, 1]");

  const double p = static_cast<double>(partitions.size());
  double g_sum = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t k = 0; k < partitions.size(); ++k) {
    g_sum += partitions[k].gradient;
    gamma_sum += static_cast<double>(growths[k]);
  }
  std::vector<PartitionScore> out;
  out.reserve(partitions.size());
  for (std::size_t k = 0; k < partitions.size(); ++k) {
    PartitionScore s;
    s.partition = partitions[k];
    s.min_growth = growths[k];
    s.normalized_gradient = g_sum > 0.0 ? partitions[k].gradient * p / g_sum : 0.0;
    s.normalized_growth = gamma_sum > 0.0 ? static_cast<double>(growths[k]) * p / gamma_sum : 0.0;
    s.score = bias_a * s.normalized_gradient - (1.0 - bias_a) * s.normalized_growth;
    if (!elements.empty()) s.min_growth_element = elements[k];
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const PartitionScore& a, const PartitionScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.partition.gradient != b.partition.gradient) return a.partition.gradient > b.partition.gradient;
    return a.partition.x_string < b.partition.x_string;
  });
  return out;
}

struct Selection {
  PauliProduct generator;
  PartitionScore score;
  GrowthReport growth;
  std::uint64_t n_query = 0;
  bool fallback_used = false;
  // Scored window, best first.
  std::vector<PartitionScore> window;
};

namespace detail {

inline std::vector<SearchResult> search_window(const PauliHamiltonian& h, const IsingGrouping& grouping,
                                               std::span<const GradientPartition> window,
                                               const SearchConfig& search, SearchMethod method,
                                               unsigned threads) {
  std::vector<SearchResult> results(window.size());
  auto run_one = [&](std::size_t k) {
    SearchConfig cfg = search;
    cfg.rng_seed = search.rng_seed + k;
    results[k] = min_growth_in_partition(h, grouping, window[k].x_string, cfg, method);
  };
  const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), window.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < window.size(); ++k) run_one(k);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < window.size(); k += workers) run_one(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace detail

// Picks this iteration's generator from a precomputed partition table.
//
// canonical: canonical element of the top-gradient partition; its growth is
//            computed for reporting only.
// gm:        lowest-growth element of the best-scoring partition among the
//            top_p highest-gradient ones.
inline Selection select_generator(const PauliHamiltonian& h, const IsingGrouping& grouping,
                                  const PartitionTable& table, const ScoringConfig& scoring,
                                  const SearchConfig& search) {
  if (table.empty()) throw InvalidArgument("no nonzero-gradient partition to select from");
  if (scoring.top_p == 0) throw InvalidArgument("top_p must be at least 1");
  if (!(scoring.bias_a >= 0.0 && scoring.bias_a <= 1.0)) throw InvalidArgument("bias must lie in [0, 1]");

  Selection sel;
  if (scoring.policy == Policy::canonical) {
    const GradientPartition& top = table[0];
    sel.generator = canonical_element(top.x_string);
    sel.growth = growth_exact(h, sel.generator);
    const std::size_t growth = sel.growth.growth;
    sel.window = score_table(std::span(&top, 1), std::span(&growth, 1), scoring.bias_a,
                             std::span(&sel.generator, 1));
    sel.score = sel.window.front();
    return sel;
  }

  const auto window = table.top(scoring.top_p);
  const auto results = detail::search_window(h, grouping, window, search, scoring.search, scoring.threads);
  std::vector<std::size_t> growths;
  std::vector<PauliProduct> elements;
  for (const auto& r : results) {
    growths.push_back(r.best.growth);
    elements.push_back(r.best.candidate);
    sel.n_query += r.n_query;
  }
  sel.window = score_table(window, growths, scoring.bias_a, elements);
  sel.score = sel.window.front();
  sel.generator = sel.score.min_growth_element;
  for (std::size_t k = 0; k < window.size(); ++k) {
    if (window[k].x_string == sel.score.partition.x_string) {
      sel.growth = results[k].best;
      sel.fallback_used = results[k].fallback_used;
    }
  }
  return sel;
}

inline Selection select_generator(const PauliHamiltonian& h, const ReferenceState& ref,
                                  const ScoringConfig& scoring, const SearchConfig& search) {
  detail::require_reference(h, ref);
  const IsingGrouping grouping = ising_grouping(h);
  return select_generator(h, grouping, screen(grouping, ref), scoring, search);
}

}  // namespace gmiqcc
