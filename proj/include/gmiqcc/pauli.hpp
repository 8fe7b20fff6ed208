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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "gmiqcc/bits.hpp"
#include "gmiqcc/errors.hpp"

namespace gmiqcc {

// Hermitian N-qubit Pauli product in symplectic form.
//
// Qubit q carries x if only x_bits[q] is set, z if only z_bits[q] is set and
// y if both are set. The represented operator is always the Hermitian one,
// i^{|x & z|} X^x Z^z; phases produced by multiplication are returned next to
// the label (see PhasedPauli) and never folded into it.
class PauliProduct {
 public:
  PauliProduct() = default;

  // Identity on n_qubits.
  explicit PauliProduct(std::size_t n_qubits) : x_(n_qubits), z_(n_qubits) {}

  PauliProduct(BitString x_bits, BitString z_bits) : x_(x_bits), z_(z_bits) {
    if (x_.size() != z_.size()) {
      throw DimensionMismatch("x and z bit vectors differ in length");
    }
  }

  // Text form over {I, X, Y, Z}; character index 0 is qubit 0.
  static PauliProduct from_string(std::string_view text) {
    if (text.empty()) throw DataError("empty Pauli string");
    PauliProduct p(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
      switch (text[q]) {
        case 'I': break;
        case 'X': p.x_.set(q); break;
        case 'Y': p.x_.set(q); p.z_.set(q); break;
        case 'Z': p.z_.set(q); break;
        default:
          throw DataError("invalid character in Pauli string \"" + std::string(text) + "\"");
      }
    }
    return p;
  }

  std::size_t n_qubits() const { return x_.size(); }
  const BitString& x_bits() const { return x_; }
  const BitString& z_bits() const { return z_; }

  bool is_identity() const { return x_.none() && z_.none(); }

  char at(std::size_t q) const {
    static constexpr char kSymbols[4] = {'I', 'X', 'Z', 'Y'};
    return kSymbols[static_cast<int>(x_.test(q)) | (static_cast<int>(z_.test(q)) << 1)];
  }

  std::string str() const {
    std::string out(n_qubits(), 'I');
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = at(q);
    return out;
  }

  // Number of y factors.
  std::size_t y_count() const { return and_popcount(x_, z_); }

  friend bool operator==(const PauliProduct&, const PauliProduct&) = default;
  // Sorted by (x_bits, z_bits) read as integers.
  friend std::strong_ordering operator<=>(const PauliProduct& a, const PauliProduct& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

  std::size_t hash() const { return x_.hash() * 0x9e3779b97f4a7c15ULL ^ z_.hash(); }

 private:
  BitString x_;
  BitString z_;
};

struct PauliHash {
  std::size_t operator()(const PauliProduct& p) const { return p.hash(); }
};

// i^phase_exponent * label.
struct PhasedPauli {
  PauliProduct label;
  int phase_exponent = 0;

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

namespace detail {

inline void require_same_size(const PauliProduct& p, const PauliProduct& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw DimensionMismatch("Pauli products act on " + std::to_string(p.n_qubits()) + " and " +
                            std::to_string(q.n_qubits()) + " qubits");
  }
}

}  // namespace detail

// popcount(x & z) mod 2.
inline bool y_parity(const PauliProduct& p) { return and_parity(p.x_bits(), p.z_bits()); }

inline PhasedPauli multiply(const PauliProduct& p, const PauliProduct& q) {
  detail::require_same_size(p, q);
  PauliProduct r(p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits());
  // P = i^{k_p} X^{x_p} Z^{z_p}; moving Z^{z_p} past X^{x_q} costs (-1)^{z_p . x_q}.
  const std::size_t k = p.y_count() + q.y_count() + 2 * and_popcount(p.z_bits(), q.x_bits()) +
                        4 * kMaxQubits - r.y_count();
  return PhasedPauli{r, static_cast<int>(k % 4)};
}

// Symplectic form x_p . z_q + x_q . z_p == 0 (mod 2).
inline bool commutes(const PauliProduct& p, const PauliProduct& q) {
  detail::require_same_size(p, q);
  return and_parity(p.x_bits(), q.z_bits()) == and_parity(q.x_bits(), p.z_bits());
}

// [p, q] is either zero or 2pq. Only the label of pq (with its phase) is
// returned; the factor 2 is dropped.
inline std::optional<PhasedPauli> commutator_label(const PauliProduct& p, const PauliProduct& q) {
  if (commutes(p, q)) return std::nullopt;
  return multiply(p, q);
}

}  // namespace gmiqcc
