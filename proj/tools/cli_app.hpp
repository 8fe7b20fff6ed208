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

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmiqcc/gmiqcc.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numerical guard or internal consistency violation.

namespace gmiqcc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kGuard = 3 };

namespace detail {

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
}

inline BitString parse_x_string(const std::string& text, std::size_t n_qubits) {
  const BitString x = BitString::from_string(text);
  if (x.size() != n_qubits) throw DataError("x-string length differs from n_qubits");
  return x;
}

const std::map<std::string, Policy> kPolicies{{"canonical", Policy::canonical}, {"gm", Policy::gm}};
const std::map<std::string, SearchMethod> kSearches{{"det", SearchMethod::deterministic},
                                                    {"prob", SearchMethod::probabilistic}};

struct Options {
  std::string input;
  std::string out;
  double prune_eps = kDefaultPruneEps;
  std::size_t top_p = 10;
  // search
  std::string search = "det";
  std::size_t r = 0;
  std::size_t r_fallback = 0;
  bool no_fallback = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::string x_string;
  std::string pauli;
  std::size_t rank = 1;
  // iqcc
  std::string policy = "gm";
  double bias = 1.0;
  std::size_t max_iter = 20;
  double grad_norm_eps = 0.0;
  double energy_tol = 0.0;
  unsigned threads = 1;
  bool timings = false;
  std::string save_final;
  // exact
  std::size_t k = 0;
  // transform
  std::vector<std::string> gens;
  std::vector<double> taus;
  std::string trajectory;
};

inline SearchConfig search_config(const Options& o) {
  SearchConfig s;
  s.r = o.r;
  s.r_fallback = o.r_fallback;
  s.fallback = !o.no_fallback;
  s.n_samples = o.samples;
  s.rng_seed = o.seed;
  return s;
}

inline int cmd_screen(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  const auto table = screen(file.hamiltonian, file.reference);
  std::ostringstream ss;
  ss << "rank\tgradient\tx_string\tcanonical\n";
  const auto top = table.top(o.top_p);
  for (std::size_t i = 0; i < top.size(); ++i) {
    ss << i + 1 << '\t' << format_real(top[i].gradient) << '\t' << top[i].x_string.str() << '\t'
       << canonical_element(top[i].x_string).str() << '\n';
  }
  emit(o.out, ss.str(), out);
  return kOk;
}

inline int cmd_growth(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  const auto& h = file.hamiltonian;
  std::ostringstream ss;
  if (!o.pauli.empty()) {
    const auto p = PauliProduct::from_string(o.pauli);
    const auto rep = growth_exact(h, p);
    ss << "candidate\tmultiplicity\tanticommuting_count\tgrowth\tgradient\n"
       << rep.candidate.str() << '\t' << rep.multiplicity << '\t' << rep.anticommuting_count << '\t'
       << rep.growth << '\t' << format_real(gradient_of(h, file.reference, p)) << '\n';
    emit(o.out, ss.str(), out);
    return kOk;
  }
  const auto grouping = ising_grouping(h);
  const auto table = screen(grouping, file.reference);
  std::vector<GradientPartition> targets;
  if (!o.x_string.empty()) {
    const BitString x = parse_x_string(o.x_string, h.n_qubits());
    const auto* part = table.find(x);
    targets.push_back(GradientPartition{x, part ? part->gradient : 0.0});
  } else {
    const auto top = table.top(o.top_p);
    targets.assign(top.begin(), top.end());
  }
  const SearchMethod method = kSearches.at(o.search);
  ss << "# M=" << h.term_count() << "\n";
  ss << "rank\tx_string\tgradient\talgorithm\tseed\tcandidate\tmultiplicity\tanticommuting_count\tgrowth\t"
        "n_query\tdistinct_candidates\n";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::size_t n_runs = method == SearchMethod::probabilistic ? std::max<std::size_t>(1, o.seeds) : 1;
    for (std::size_t s = 0; s < n_runs; ++s) {
      SearchConfig cfg = search_config(o);
      cfg.rng_seed = o.seed + s;
      const auto res = find_min_growth(h, grouping, targets[i].x_string, cfg, method);
      ss << i + 1 << '\t' << targets[i].x_string.str() << '\t' << format_real(targets[i].gradient) << '\t'
         << to_string(method) << '\t' << (method == SearchMethod::probabilistic ? std::to_string(cfg.rng_seed) : "-")
         << '\t' << res.best.candidate.str() << '\t' << res.best.multiplicity << '\t'
         << res.best.anticommuting_count << '\t' << res.best.growth << '\t' << res.n_query << '\t'
         << res.distinct_candidates << '\n';
    }
  }
  emit(o.out, ss.str(), out);
  return kOk;
}

inline int cmd_profile(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  BitString x;
  if (!o.x_string.empty()) {
    x = parse_x_string(o.x_string, file.hamiltonian.n_qubits());
  } else {
    const auto table = screen(file.hamiltonian, file.reference);
    if (o.rank == 0 || o.rank > table.size()) throw DataError("no partition of rank " + std::to_string(o.rank));
    x = table[o.rank - 1].x_string;
  }
  std::ostringstream ss;
  ss << "multiplicity,growth\n";
  for (const auto& rep : partition_growth_profile(file.hamiltonian, x)) {
    ss << rep.multiplicity << ',' << rep.growth << '\n';
  }
  emit(o.out, ss.str(), out);
  return kOk;
}

inline int cmd_iqcc(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  RunConfig cfg;
  cfg.scoring.policy = kPolicies.at(o.policy);
  cfg.scoring.bias_a = o.bias;
  cfg.scoring.top_p = o.top_p;
  cfg.scoring.search = kSearches.at(o.search);
  cfg.scoring.threads = o.threads;
  cfg.search = search_config(o);
  cfg.max_iterations = o.max_iter;
  cfg.grad_norm_eps = o.grad_norm_eps;
  cfg.energy_tol = o.energy_tol;
  cfg.prune_eps = o.prune_eps;
  const auto result = run(file.hamiltonian, file.reference, cfg);
  emit(o.out, trajectory_json(cfg, file.reference, result, o.timings).dump(1) + "\n", out);
  if (!o.save_final.empty()) {
    nlohmann::json meta = file.metadata;
    meta["iqcc_iterations"] = result.records.size();
    write_interchange(o.save_final, result.final_hamiltonian, file.reference, meta);
  }
  return kOk;
}

inline int cmd_exact(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  const auto ev = exact::spectrum(file.hamiltonian);
  std::ostringstream ss;
  ss << "ground_energy\t" << format_real(ev.front()) << '\n';
  for (std::size_t i = 0; i < std::min(o.k, ev.size()); ++i) ss << i << '\t' << format_real(ev[i]) << '\n';
  emit(o.out, ss.str(), out);
  return kOk;
}

inline int cmd_transform(const Options& o, std::ostream& out) {
  const auto file = read_interchange(o.input, o.prune_eps);
  std::vector<std::pair<PauliProduct, double>> steps;
  if (!o.trajectory.empty()) {
    std::ifstream in(o.trajectory);
    if (!in) throw DataError("cannot open " + o.trajectory);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(std::string("trajectory is not valid JSON: ") + e.what());
    }
    steps = trajectory_steps(doc);
  }
  if (o.gens.size() != o.taus.size()) throw InvalidArgument("--gen and --tau must be given the same number of times");
  for (std::size_t i = 0; i < o.gens.size(); ++i) {
    steps.emplace_back(PauliProduct::from_string(o.gens[i]), o.taus[i]);
  }
  PauliHamiltonian h = file.hamiltonian;
  nlohmann::json applied = nlohmann::json::array();
  for (const auto& [gen, tau] : steps) {
    h = dress(h, gen, tau);
    applied.push_back({{"generator", gen.str()}, {"tau", tau}});
  }
  nlohmann::json meta = file.metadata.is_object() ? file.metadata : nlohmann::json::object();
  if (!steps.empty()) {
    meta["transform"] = applied;
    meta["reference_energy"] = expectation(h, file.reference);
  }
  emit(o.out, format_interchange(h, file.reference, meta), out);
  return kOk;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"Growth-mitigated iterative qubit coupled cluster toolkit", "gmiqcc"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Hamiltonian interchange file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output path (default: stdout)");
    sub->add_option("--prune-eps", o.prune_eps, "Drop coefficients below this magnitude")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--search", o.search, "Growth search: det or prob")
        ->check(CLI::IsMember({"det", "prob"}));
    sub->add_option("--r", o.r, "Candidates scored per search (0: ceil(log2 M))");
    sub->add_option("--r-fallback", o.r_fallback, "Retry width for suspect searches (0: ceil(M/10))");
    sub->add_flag("--no-fallback", o.no_fallback, "Disable the fallback retry");
    sub->add_option("--samples", o.samples, "Samples for prob search (0: M)");
    sub->add_option("--seed", o.seed, "RNG seed for prob search");
  };

  auto* screen_cmd = app.add_subcommand("screen", "Rank nonzero-gradient partitions");
  add_common(screen_cmd);
  screen_cmd->add_option("--top-p", o.top_p, "Rows to print")->check(CLI::PositiveNumber);

  auto* growth_cmd = app.add_subcommand("growth", "Minimum-growth search per partition");
  add_common(growth_cmd);
  add_search(growth_cmd);
  growth_cmd->add_option("--top-p", o.top_p, "Partitions to search")->check(CLI::PositiveNumber);
  growth_cmd->add_option("--x-string", o.x_string, "Search only this partition");
  growth_cmd->add_option("--pauli", o.pauli, "Report the exact growth of one Pauli product");
  growth_cmd->add_option("--seeds", o.seeds, "Independent prob runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);

  auto* profile_cmd = app.add_subcommand("profile", "Multiplicity/growth of every partition member (CSV)");
  add_common(profile_cmd);
  profile_cmd->add_option("--x-string", o.x_string, "Partition x-string");
  profile_cmd->add_option("--rank", o.rank, "Partition rank by gradient when no x-string is given")
      ->check(CLI::PositiveNumber);

  auto* iqcc_cmd = app.add_subcommand("iqcc", "Run the iterative dressing loop");
  add_common(iqcc_cmd);
  add_search(iqcc_cmd);
  iqcc_cmd->add_option("--policy", o.policy, "canonical or gm")->check(CLI::IsMember({"canonical", "gm"}));
  iqcc_cmd->add_option("--bias", o.bias, "Gradient bias a in [0, 1]")->check(CLI::Range(0.0, 1.0));
  iqcc_cmd->add_option("--top-p", o.top_p, "Partitions scored per iteration")->check(CLI::PositiveNumber);
  iqcc_cmd->add_option("--max-iter", o.max_iter, "Iteration budget")->check(CLI::PositiveNumber);
  iqcc_cmd->add_option("--grad-norm-eps", o.grad_norm_eps, "Gradient-norm stop threshold")
      ->check(CLI::NonNegativeNumber);
  iqcc_cmd->add_option("--energy-tol", o.energy_tol, "Energy-change stop threshold")
      ->check(CLI::NonNegativeNumber);
  iqcc_cmd->add_option("--threads", o.threads, "Worker threads for growth searches")->check(CLI::PositiveNumber);
  iqcc_cmd->add_flag("--timings", o.timings, "Include wall times in the trajectory");
  iqcc_cmd->add_option("--save-final", o.save_final, "Write the final Hamiltonian to this file");

  auto* exact_cmd = app.add_subcommand("exact", "Exact ground energy by dense diagonalization");
  add_common(exact_cmd);
  exact_cmd->add_option("--k", o.k, "Also print the lowest k eigenvalues");

  auto* transform_cmd = app.add_subcommand("transform", "Apply explicit dressings");
  add_common(transform_cmd);
  transform_cmd->add_option("--gen", o.gens, "Generator Pauli string (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  transform_cmd->add_option("--tau", o.taus, "Angle for the matching --gen (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  transform_cmd->add_option("--trajectory", o.trajectory, "Replay generators and angles of a trajectory")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gmiqcc: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (screen_cmd->parsed()) return detail::cmd_screen(o, out);
    if (growth_cmd->parsed()) return detail::cmd_growth(o, out);
    if (profile_cmd->parsed()) return detail::cmd_profile(o, out);
    if (iqcc_cmd->parsed()) return detail::cmd_iqcc(o, out);
    if (exact_cmd->parsed()) return detail::cmd_exact(o, out);
    if (transform_cmd->parsed()) return detail::cmd_transform(o, out);
  } catch (const GuardExceeded& e) {
    err << "gmiqcc: " << e.what() << '\n';
    return kGuard;
  } catch (const InternalInconsistency& e) {
    err << "gmiqcc: " << e.what() << '\n';
    return kGuard;
  } catch (const Error& e) {
    err << "gmiqcc: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace gmiqcc::cli
