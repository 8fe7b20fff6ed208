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
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "gmiqcc/errors.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/pauli.hpp"

// Dense-matrix reference results for small registers. Nothing here goes
// through the symplectic phase algebra, the Ising grouping, screening or the
// growth search: matrices are assembled from the literal 2x2 Pauli matrices,
// qubit 0 being the leftmost (most significant) tensor factor.

namespace gmiqcc::exact {

inline constexpr std::size_t kMaxDenseQubits = 14;
inline constexpr std::size_t kMaxSpectrumQubits = 14;
inline constexpr std::size_t kMaxSweepQubits = 6;

using cplx = std::complex<double>;

struct DenseOperator {
  std::size_t n_qubits = 0;
  Eigen::MatrixXcd matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

namespace detail {

inline void guard(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw GuardExceeded(std::string(what) + ": " + std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(limit));
  }
}

// <row|sigma|col> for sigma in {I, X, Y, Z}.
inline cplx single_qubit(char sigma, unsigned row, unsigned col) {
  switch (sigma) {
    case 'I': return row == col ? 1.0 : 0.0;
    case 'X': return row != col ? 1.0 : 0.0;
    case 'Y':
      if (row == col) return 0.0;
      return row == 0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    case 'Z':
      if (row != col) return 0.0;
      return col == 0 ? 1.0 : -1.0;
    default: throw InvalidArgument("unknown Pauli symbol");
  }
}

// A Pauli product as a signed permutation: column b maps to row b ^ flip.
struct LiteralPauli {
  std::string symbols;
  std::uint64_t flip = 0;
  std::size_t n = 0;

  explicit LiteralPauli(const PauliProduct& p) : symbols(p.str()), n(p.n_qubits()) {
    for (std::size_t q = 0; q < n; ++q) {
      if (symbols[q] == 'X' || symbols[q] == 'Y') flip |= std::uint64_t{1} << (n - 1 - q);
    }
  }

  // <b ^ flip| P |b>
  cplx element(std::uint64_t col) const {
    const std::uint64_t row = col ^ flip;
    cplx v = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      const unsigned shift = static_cast<unsigned>(n - 1 - q);
      v *= single_qubit(symbols[q], (row >> shift) & 1U, (col >> shift) & 1U);
    }
    return v;
  }

  bool is_real() const { return std::count(symbols.begin(), symbols.end(), 'Y') % 2 == 0; }
};

inline std::uint64_t basis_index(const ReferenceState& ref) {
  std::uint64_t idx = 0;
  const std::size_t n = ref.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (ref.bits().test(q)) idx |= std::uint64_t{1} << (n - 1 - q);
  }
  return idx;
}

}  // namespace detail

inline DenseOperator to_matrix(const PauliHamiltonian& h) {
  const std::size_t n = h.n_qubits();
  detail::guard(n, kMaxDenseQubits, "dense matrix");
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseOperator op{n, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
  op.matrix.diagonal().setConstant(h.constant());
  for (const auto& t : h.terms()) {
    const detail::LiteralPauli lp(t.pauli);
    for (std::uint64_t col = 0; col < dim; ++col) {
      op.matrix(static_cast<Eigen::Index>(col ^ lp.flip), static_cast<Eigen::Index>(col)) += t.coeff * lp.element(col);
    }
  }
  return op;
}

inline DenseOperator to_matrix(const PauliProduct& p) {
  return to_matrix(PauliHamiltonian(p.n_qubits(), {Term{p, 1.0}}, 0.0, 0.0));
}

// Column vector of a computational basis state.
inline Eigen::VectorXcd basis_vector(const ReferenceState& ref) {
  detail::guard(ref.size(), kMaxDenseQubits, "basis vector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << ref.size());
  v(static_cast<Eigen::Index>(detail::basis_index(ref))) = 1.0;
  return v;
}

// Full sorted spectrum.
//
// Basis states connected by some term differ by an element of the GF(2) span
// of the terms' flip masks, so the matrix is block diagonal over the cosets
// of that span. Each block is assembled densely and diagonalized on its own.
inline std::vector<double> spectrum(const PauliHamiltonian& h) {
  const std::size_t n = h.n_qubits();
  detail::guard(n, kMaxSpectrumQubits, "spectrum");
  std::vector<detail::LiteralPauli> paulis;
  paulis.reserve(h.term_count());
  bool real = true;
  for (const auto& t : h.terms()) {
    paulis.emplace_back(t.pauli);
    real = real && paulis.back().is_real();
  }

  // Reduced row echelon basis of the flip masks; pivot = highest set bit.
  std::vector<std::uint64_t> basis;
  for (const auto& lp : paulis) {
    std::uint64_t v = lp.flip;
    for (auto b : basis) {
      if (v & (std::uint64_t{1} << (63 - std::countl_zero(b)))) v ^= b;
    }
    if (v == 0) continue;
    const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(v));
    for (auto& b : basis) {
      if (b & pivot) b ^= v;
    }
    basis.push_back(v);
  }
  std::uint64_t pivot_mask = 0;
  std::vector<std::uint64_t> pivots;
  for (auto b : basis) {
    pivots.push_back(std::uint64_t{1} << (63 - std::countl_zero(b)));
    pivot_mask |= pivots.back();
  }
  const std::size_t rank = basis.size();
  const std::uint64_t block_dim = std::uint64_t{1} << rank;
  auto local_index = [&](std::uint64_t state) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      if (state & pivots[i]) idx |= std::uint64_t{1} << i;
    }
    return idx;
  };

  std::vector<double> eigenvalues;
  eigenvalues.reserve(std::size_t{1} << n);
  std::vector<std::uint64_t> members(block_dim);
  for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << n); ++rep) {
    if (rep & pivot_mask) continue;
    for (std::uint64_t j = 0; j < block_dim; ++j) {
      std::uint64_t s = rep;
      for (std::size_t i = 0; i < rank; ++i) {
        if ((j >> i) & 1U) s ^= basis[i];
      }
      members[j] = s;
    }
    const auto d = static_cast<Eigen::Index>(block_dim);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d, d);
    block.diagonal().setConstant(h.constant());
    for (std::size_t t = 0; t < paulis.size(); ++t) {
      const double c = h.terms()[t].coeff;
      for (std::uint64_t j = 0; j < block_dim; ++j) {
        const std::uint64_t row = local_index(members[j] ^ paulis[t].flip);
        block(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) += c * paulis[t].element(members[j]);
      }
    }
    if (real) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.real(), Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < d; ++i) eigenvalues.push_back(solver.eigenvalues()(i));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < d; ++i) eigenvalues.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

inline double ground_energy(const PauliHamiltonian& h) { return spectrum(h).front(); }

inline std::vector<double> lowest_eigenvalues(const PauliHamiltonian& h, std::size_t k) {
  auto ev = spectrum(h);
  ev.resize(std::min(k, ev.size()));
  return ev;
}

inline bool spectra_match(const PauliHamiltonian& a, const PauliHamiltonian& b, double tol) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatch("spectra of different register sizes");
  detail::guard(a.n_qubits(), 12, "spectrum comparison");
  const auto ea = spectrum(a);
  const auto eb = spectrum(b);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!(std::abs(ea[i] - eb[i]) <= tol)) return false;
  }
  return true;
}

// |<ref|[H, P]|ref>| / 2 for all 4^N - 1 non-identity Pauli products.
inline std::map<PauliProduct, double> brute_force_gradients(const PauliHamiltonian& h,
                                                            const ReferenceState& ref) {
  const std::size_t n = h.n_qubits();
  detail::guard(n, kMaxSweepQubits, "gradient sweep");
  if (ref.size() != n) throw DimensionMismatch("reference size does not match Hamiltonian");
  const DenseOperator hm = to_matrix(h);
  const std::uint64_t r = detail::basis_index(ref);
  std::map<PauliProduct, double> out;
  static constexpr char kSymbols[4] = {'I', 'X', 'Y', 'Z'};
  std::string label(n, 'I');
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << (2 * n)); ++code) {
    for (std::size_t q = 0; q < n; ++q) label[q] = kSymbols[(code >> (2 * q)) & 3U];
    const PauliProduct p = PauliProduct::from_string(label);
    const detail::LiteralPauli lp(p);
    // P|r> = v |r'>, <r|P = conj(v) <r'|
    const std::uint64_t rp = r ^ lp.flip;
    const cplx v = lp.element(r);
    const auto ri = static_cast<Eigen::Index>(r);
    const auto rpi = static_cast<Eigen::Index>(rp);
    const cplx comm = v * hm.matrix(ri, rpi) - std::conj(v) * hm.matrix(rpi, ri);
    out.emplace(p, std::abs(comm) / 2.0);
  }
  return out;
}

}  // namespace gmiqcc::exact
