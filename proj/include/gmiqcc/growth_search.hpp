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
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gmiqcc/bits.hpp"
#include "gmiqcc/errors.hpp"
#include "gmiqcc/gradient_screen.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"

namespace gmiqcc {

// Growth bookkeeping for one candidate generator P:
//   anticommuting_count = |H_A|, the terms of H anticommuting with P,
//   multiplicity        = m_C(P), pairs of H terms whose commutator is ~P,
//   growth              = labels of [H, P] absent from H = |H_A| - 2 m_C(P).
struct GrowthReport {
  PauliProduct candidate;
  std::size_t multiplicity = 0;
  std::size_t anticommuting_count = 0;
  std::size_t growth = 0;

  friend bool operator==(const GrowthReport&, const GrowthReport&) = default;
};

struct SearchConfig {
  // Candidates (by multiplicity) whose |H_A| is evaluated; 0 = ceil(log2 M).
  std::size_t r = 0;
  // Retry width used when the first pass looks suspect; 0 = ceil(M / 10).
  std::size_t r_fallback = 0;
  bool fallback = true;
  // Probabilistic search only; 0 = M.
  std::size_t n_samples = 0;
  std::uint64_t rng_seed = 0;
};

enum class SearchMethod { deterministic, probabilistic };

struct SearchResult {
  GrowthReport best;
  // Commutator evaluations between pairs of Hamiltonian terms.
  std::uint64_t n_query = 0;
  // Distinct labels collected in the candidate multiset.
  std::size_t distinct_candidates = 0;
  std::size_t r_used = 0;
  // Set when the driver replaced or re-ran the search (see min_growth_in_partition).
  bool fallback_used = false;
};

inline std::size_t default_r(std::size_t m) {
  if (m <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(m))));
}

inline std::size_t default_r_fallback(std::size_t m) { return std::max<std::size_t>(1, (m + 9) / 10); }

inline std::size_t default_samples(std::size_t m) { return std::max<std::size_t>(1, m); }

// Direct O(M log M) growth of a single candidate.
inline GrowthReport growth_exact(const PauliHamiltonian& h, const PauliProduct& p) {
  if (p.n_qubits() != h.n_qubits()) throw DimensionMismatch("candidate size does not match Hamiltonian");
  if (p.is_identity()) throw InvalidArgument("growth of the identity is undefined");
  std::size_t anticommuting = 0;
  std::size_t fresh = 0;
  for (const auto& t : h.terms()) {
    if (commutes(t.pauli, p)) continue;
    ++anticommuting;
    const PauliProduct label(t.pauli.x_bits() ^ p.x_bits(), t.pauli.z_bits() ^ p.z_bits());
    if (!h.contains(label)) ++fresh;
  }
  // Labels already present pair up: P_i P ~ P_j iff P_j P ~ P_i.
  return GrowthReport{p, (anticommuting - fresh) / 2, anticommuting, fresh};
}

inline std::size_t anticommuting_count(const PauliHamiltonian& h, const PauliProduct& p) {
  std::size_t n = 0;
  for (const auto& t : h.terms()) n += commutes(t.pauli, p) ? 0 : 1;
  return n;
}

namespace detail {

// Unordered pairs (i < j) of Hamiltonian x-string groups with x_i + x_j = target.
inline std::vector<std::pair<std::size_t, std::size_t>> valid_pairs(const IsingGrouping& grouping,
                                                                     const BitString& target) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const auto groups = grouping.groups();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto j = grouping.index_of(groups[i].x_bits ^ target);
    if (j && i < *j) pairs.emplace_back(i, *j);
  }
  return pairs;
}

inline void check_target(const PauliHamiltonian& h, const IsingGrouping& grouping,
                         const BitString& x_string) {
  if (x_string.size() != h.n_qubits() || grouping.n_qubits() != h.n_qubits()) {
    throw DimensionMismatch("x-string size does not match Hamiltonian");
  }
  if (x_string.none()) throw InvalidArgument("growth search needs a nonzero x-string");
}

using Multiplicities = std::unordered_map<BitString, std::size_t, BitStringHash>;

// (z-string, count) sorted by count descending, then z ascending.
inline std::vector<std::pair<BitString, std::size_t>> ranked(const Multiplicities& counts) {
  std::vector<std::pair<BitString, std::size_t>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

// Smaller growth wins, then higher multiplicity, then the smaller label.
inline bool better(const GrowthReport& a, std::size_t a_count, const GrowthReport& b,
                   std::size_t b_count) {
  if (a.growth != b.growth) return a.growth < b.growth;
  if (a_count != b_count) return a_count > b_count;
  return a.candidate < b.candidate;
}

// Unbiased draw from [0, n) on top of a raw 64-bit engine; independent of the
// standard library's distribution implementation so runs reproduce everywhere.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= threshold) return v % n;
  }
}

}  // namespace detail

// Deterministic search for the lowest-growth member of the partition labelled
// by x_string: build the multiset C of commutator labels over x-string pairs
// that factor x_string, then score the r most frequent labels with
// growth = |H_A| - 2 m_C.
inline SearchResult find_min_growth_deterministic(const PauliHamiltonian& h,
                                                  const IsingGrouping& grouping,
                                                  const BitString& x_string,
                                                  const SearchConfig& cfg) {
  detail::check_target(h, grouping, x_string);
  const auto groups = grouping.groups();
  SearchResult result;
  detail::Multiplicities counts;
  for (const auto& [i, j] : detail::valid_pairs(grouping, x_string)) {
    const BitString& xi = groups[i].x_bits;
    const BitString& xj = groups[j].x_bits;
    for (const auto& a : groups[i].entries) {
      for (const auto& b : groups[j].entries) {
        ++result.n_query;
        // [Z_a X_i, Z_b X_j] != 0 iff the symplectic form is odd.
        if (and_parity(xi, b.z_bits) != and_parity(xj, a.z_bits)) ++counts[a.z_bits ^ b.z_bits];
      }
    }
  }
  if (counts.empty()) {
    throw EmptyCandidateSet("no nonzero commutator factors x-string " + x_string.str());
  }
  const auto ranking = detail::ranked(counts);
  result.distinct_candidates = ranking.size();
  result.r_used = cfg.r == 0 ? default_r(h.term_count()) : cfg.r;
  const std::size_t n_eval = std::min(result.r_used, ranking.size());
  std::size_t best_count = 0;
  for (std::size_t c = 0; c < n_eval; ++c) {
    const auto& [z, m] = ranking[c];
    PauliProduct p(x_string, z);
    const std::size_t anti = anticommuting_count(h, p);
    if (anti < 2 * m) throw InternalInconsistency("multiplicity exceeds |H_A| / 2 for " + p.str());
    GrowthReport rep{p, m, anti, anti - 2 * m};
    if (c == 0 || detail::better(rep, m, result.best, best_count)) {
      result.best = rep;
      best_count = m;
    }
  }
  return result;
}

inline SearchResult find_min_growth_deterministic(const PauliHamiltonian& h, const BitString& x_string,
                                                  const SearchConfig& cfg) {
  return find_min_growth_deterministic(h, ising_grouping(h), x_string, cfg);
}

// Sampling variant: draw n_samples (pair, z-term, z-term) triples uniformly,
// keep the nonzero commutator labels, and score the r most sampled labels with
// the direct growth count.
inline SearchResult find_min_growth_probabilistic(const PauliHamiltonian& h,
                                                  const IsingGrouping& grouping,
                                                  const BitString& x_string,
                                                  const SearchConfig& cfg) {
  detail::check_target(h, grouping, x_string);
  const auto pairs = detail::valid_pairs(grouping, x_string);
  if (pairs.empty()) {
    throw EmptyCandidateSet("no pair of Hamiltonian x-strings factors " + x_string.str());
  }
  const auto groups = grouping.groups();
  const std::size_t n_samples = cfg.n_samples == 0 ? default_samples(h.term_count()) : cfg.n_samples;
  std::mt19937_64 rng(cfg.rng_seed);
  SearchResult result;
  detail::Multiplicities counts;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto& [i, j] = pairs[detail::bounded(rng, pairs.size())];
    const auto& gi = groups[i];
    const auto& gj = groups[j];
    const auto& a = gi.entries[detail::bounded(rng, gi.entries.size())];
    const auto& b = gj.entries[detail::bounded(rng, gj.entries.size())];
    ++result.n_query;
    if (and_parity(gi.x_bits, b.z_bits) != and_parity(gj.x_bits, a.z_bits)) ++counts[a.z_bits ^ b.z_bits];
  }
  if (counts.empty()) {
    throw EmptyCandidateSet("every sampled commutator for x-string " + x_string.str() + " vanished");
  }
  const auto ranking = detail::ranked(counts);
  result.distinct_candidates = ranking.size();
  result.r_used = cfg.r == 0 ? default_r(h.term_count()) : cfg.r;
  const std::size_t n_eval = std::min(result.r_used, ranking.size());
  std::size_t best_count = 0;
  for (std::size_t c = 0; c < n_eval; ++c) {
    const auto& [z, sampled] = ranking[c];
    GrowthReport rep = growth_exact(h, PauliProduct(x_string, z));
    if (c == 0 || detail::better(rep, sampled, result.best, best_count)) {
      result.best = rep;
      best_count = sampled;
    }
  }
  return result;
}

inline SearchResult find_min_growth_probabilistic(const PauliHamiltonian& h, const BitString& x_string,
                                                  const SearchConfig& cfg) {
  return find_min_growth_probabilistic(h, ising_grouping(h), x_string, cfg);
}

inline SearchResult find_min_growth(const PauliHamiltonian& h, const IsingGrouping& grouping,
                                    const BitString& x_string, const SearchConfig& cfg,
                                    SearchMethod method) {
  return method == SearchMethod::deterministic
             ? find_min_growth_deterministic(h, grouping, x_string, cfg)
             : find_min_growth_probabilistic(h, grouping, x_string, cfg);
}

// Search wrapper used by the iteration driver.
//
// An empty candidate set falls back to the canonical element. With
// cfg.fallback set, a result whose growth exceeds the canonical element's is
// treated as a possibly missed minimum and the search is repeated with
// r_fallback. The canonical element only triggers the retry; the returned
// candidate always comes from the candidate multiset.
inline SearchResult min_growth_in_partition(const PauliHamiltonian& h, const IsingGrouping& grouping,
                                            const BitString& x_string, const SearchConfig& cfg,
                                            SearchMethod method) {
  SearchResult result;
  try {
    result = find_min_growth(h, grouping, x_string, cfg, method);
  } catch (const EmptyCandidateSet&) {
    result = SearchResult{};
    result.best = growth_exact(h, canonical_element(x_string));
    result.fallback_used = true;
    return result;
  }
  if (!cfg.fallback) return result;
  const GrowthReport canonical = growth_exact(h, canonical_element(x_string));
  if (result.best.growth <= canonical.growth) return result;

  SearchConfig wide = cfg;
  wide.r = cfg.r_fallback == 0 ? default_r_fallback(h.term_count()) : cfg.r_fallback;
  if (wide.r <= result.r_used) return result;
  const std::uint64_t spent = result.n_query;
  result = find_min_growth(h, grouping, x_string, wide, method);
  result.n_query += spent;
  result.fallback_used = true;
  return result;
}

inline constexpr std::size_t kMaxProfileMembers = std::size_t{1} << 24;

// (multiplicity, growth) for every one of the 2^(N-1) members of a partition,
// in ascending z-string order.
inline std::vector<GrowthReport> partition_growth_profile(const PauliHamiltonian& h,
                                                          const BitString& x_string) {
  if (x_string.size() != h.n_qubits()) throw DimensionMismatch("x-string size does not match Hamiltonian");
  if (x_string.none()) throw InvalidArgument("profile needs a nonzero x-string");
  const std::size_t n = h.n_qubits();
  if (n - 1 >= 64 || (std::size_t{1} << (n - 1)) > kMaxProfileMembers) {
    throw GuardExceeded("partition of " + std::to_string(n) + " qubits has more than 2^24 members");
  }
  std::vector<GrowthReport> out;
  out.reserve(std::size_t{1} << (n - 1));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    BitString z(n);
    for (std::size_t q = 0; q < n; ++q) {
      if ((bits >> q) & 1U) z.set(q);
    }
    if (!and_parity(z, x_string)) continue;
    out.push_back(growth_exact(h, PauliProduct(x_string, z)));
  }
  return out;
}

}  // namespace gmiqcc
