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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmiqcc/gmiqcc.hpp"
#include "support/dense_oracle.hpp"

namespace testing_support {

inline std::string random_pauli_text(std::size_t n, std::mt19937_64& rng) {
  static constexpr char kSymbols[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s(n, 'I');
  for (auto& c : s) c = kSymbols[pick(rng)];
  return s;
}

inline std::string random_bits(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::string s(n, '0');
  for (auto& c : s) c = coin(rng) ? '1' : '0';
  return s;
}

// Real symmetric Hamiltonians need an even number of Y factors per term.
struct RandomHamiltonian {
  std::size_t n_qubits;
  std::vector<oracle::TextTerm> terms;
  double constant;

  gmiqcc::PauliHamiltonian build(double prune_eps = gmiqcc::kDefaultPruneEps) const {
    std::vector<gmiqcc::Term> ts;
    for (const auto& t : terms) ts.push_back({gmiqcc::PauliProduct::from_string(t.pauli), t.coeff});
    return gmiqcc::PauliHamiltonian(n_qubits, std::move(ts), constant, prune_eps);
  }

  oracle::Mat matrix() const { return oracle::hamiltonian(n_qubits, terms, constant); }
};

inline RandomHamiltonian random_hamiltonian(std::size_t n, std::size_t n_terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::set<std::string> seen;
  RandomHamiltonian h{n, {}, coeff(rng)};
  const std::string identity(n, 'I');
  // (4^n + 2^n)/2 strings have an even Y count, one of them the identity.
  n_terms = std::min(n_terms, ((std::size_t{1} << (2 * n)) + (std::size_t{1} << n)) / 2 - 1);
  while (h.terms.size() < n_terms) {
    const std::string s = random_pauli_text(n, rng);
    if (s == identity || std::count(s.begin(), s.end(), 'Y') % 2 != 0) continue;
    if (!seen.insert(s).second) continue;
    h.terms.push_back({s, coeff(rng)});
  }
  return h;
}

}  // namespace testing_support
