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

// Runs canonical and growth-mitigated iQCC side by side on a Hamiltonian file
// and prints energy and term count per iteration.
//
//   demo_h4 tests/data/h4_sto3g_1.5.json [iterations]

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "gmiqcc/gmiqcc.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s HAMILTONIAN.json [iterations]\n", argv[0]);
    return 1;
  }
  try {
    const auto file = gmiqcc::read_interchange(argv[1]);
    gmiqcc::RunConfig cfg;
    cfg.max_iterations = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 10;

    cfg.scoring.policy = gmiqcc::Policy::canonical;
    const auto canonical = gmiqcc::run(file.hamiltonian, file.reference, cfg);
    cfg.scoring.policy = gmiqcc::Policy::gm;
    cfg.scoring.bias_a = 0.5;
    const auto gm = gmiqcc::run(file.hamiltonian, file.reference, cfg);

    const double e0 = gmiqcc::exact::ground_energy(file.hamiltonian);
    std::printf("exact ground energy %.10f\n", e0);
    std::printf("%4s  %14s %8s  %14s %8s\n", "K", "E canonical", "terms", "E gm(0.5)", "terms");
    const auto n = std::max(canonical.records.size(), gm.records.size());
    for (std::size_t k = 0; k < n; ++k) {
      std::printf("%4zu", k + 1);
      for (const auto* r : {&canonical, &gm}) {
        if (k < r->records.size()) {
          std::printf("  %14.8f %8zu", r->records[k].energy, r->records[k].term_count);
        } else {
          std::printf("  %14s %8s", "-", "-");
        }
      }
      std::printf("\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
