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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmiqcc/errors.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"

// Hamiltonian interchange files:
//
//   {
//     "n_qubits": 8,
//     "reference": "11110000",
//     "constant": 2.1166666666666667,
//     "terms": [ {"pauli": "ZIIIIIII", "coeff": -0.51235...}, ... ],
//     "metadata": { ... }
//   }
//
// `constant` and `metadata` are optional. Identity entries in `terms` are
// folded into the constant. Character 0 of `reference` and of every Pauli
// string is qubit 0.

namespace gmiqcc {

struct HamiltonianFile {
  PauliHamiltonian hamiltonian;
  ReferenceState reference;
  nlohmann::json metadata = nlohmann::json::object();
};

inline HamiltonianFile parse_interchange(const std::string& text, double prune_eps = kDefaultPruneEps) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("interchange file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("interchange document must be a JSON object");
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
    throw DataError("interchange file needs an integer \"n_qubits\"");
  }
  const auto n = doc["n_qubits"].get<long long>();
  if (n <= 0 || n > static_cast<long long>(kMaxQubits)) {
    throw DataError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  const auto n_qubits = static_cast<std::size_t>(n);
  if (!doc.contains("reference") || !doc["reference"].is_string()) {
    throw DataError("interchange file needs a \"reference\" bit string");
  }
  const auto ref_text = doc["reference"].get<std::string>();
  if (ref_text.size() != n_qubits) throw DataError("reference length differs from n_qubits");
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw DataError("interchange file needs a \"terms\" array");
  }

  double constant = 0.0;
  if (doc.contains("constant")) {
    if (!doc["constant"].is_number()) throw DataError("\"constant\" must be a real number");
    constant = doc["constant"].get<double>();
  }
  std::vector<Term> terms;
  terms.reserve(doc["terms"].size());
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_object() || !entry.contains("pauli") || !entry["pauli"].is_string() ||
        !entry.contains("coeff")) {
      throw DataError("each term needs a \"pauli\" string and a \"coeff\"");
    }
    const auto label = entry["pauli"].get<std::string>();
    if (label.size() != n_qubits) throw DataError("term \"" + label + "\" has the wrong length");
    const auto& coeff = entry["coeff"];
    if (!coeff.is_number()) {
      throw DataError("coefficient of \"" + label + "\" is not a real number; complex Hamiltonians are not supported");
    }
    terms.push_back(Term{PauliProduct::from_string(label), coeff.get<double>()});
  }
  HamiltonianFile out{PauliHamiltonian(n_qubits, std::move(terms), constant, prune_eps),
                      ReferenceState::from_string(ref_text), nlohmann::json::object()};
  if (doc.contains("metadata")) out.metadata = doc["metadata"];
  return out;
}

inline HamiltonianFile read_interchange(const std::string& path, double prune_eps = kDefaultPruneEps) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_interchange(ss.str(), prune_eps);
}

// 17 significant digits, enough to round-trip any double.
inline std::string format_real(double v) {
  if (!std::isfinite(v)) throw DataError("cannot serialize a non-finite coefficient");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_interchange(const PauliHamiltonian& h, const ReferenceState& ref,
                                      const nlohmann::json& metadata = nlohmann::json::object()) {
  if (ref.size() != h.n_qubits()) throw DimensionMismatch("reference size does not match Hamiltonian");
  std::string out;
  out.reserve(64 + h.term_count() * (h.n_qubits() + 48));
  out += "{\n  \"n_qubits\": " + std::to_string(h.n_qubits()) + ",\n";
  out += "  \"reference\": \"" + ref.str() + "\",\n";
  out += "  \"constant\": " + format_real(h.constant()) + ",\n";
  out += "  \"terms\": [";
  bool first = true;
  for (const auto& t : h.terms()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"pauli\": \"" + t.pauli.str() + "\", \"coeff\": " + format_real(t.coeff) + "}";
  }
  out += first ? "],\n" : "\n  ],\n";
  out += "  \"metadata\": " + (metadata.is_null() ? std::string("{}") : metadata.dump()) + "\n}\n";
  return out;
}

inline void write_interchange(const std::string& path, const PauliHamiltonian& h, const ReferenceState& ref,
                              const nlohmann::json& metadata = nlohmann::json::object()) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << format_interchange(h, ref, metadata);
}

}  // namespace gmiqcc
