// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Dense reference matrices built qubit by qubit, independent of the
// symplectic bookkeeping in the library. Qubit q is bit q of the row index.
#pragma once

#include <Eigen/Dense>
#include <random>

#include "uccvqe/pauli.hpp"
#include "uccvqe/statevector.hpp"

namespace dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Eigen::Matrix2cd single(bool x, bool z) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  if (!x && !z) m << 1, 0, 0, 1;
  if (x && !z) m << 0, 1, 1, 0;
  if (x && z) m << 0, C(0, -1), C(0, 1), 0;
  if (!x && z) m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron_qubits(const std::vector<Eigen::Matrix2cd>& factors) {
  const int n = static_cast<int>(factors.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::complex<double> v = 1.0;
      for (int q = 0; q < n && v != 0.0; ++q) v *= factors[q]((r >> q) & 1, (c >> q) & 1);
      m(r, c) = v;
    }
  return m;
}

inline Matrix pauli(const uccvqe::PauliString& p, int n) {
  std::vector<Eigen::Matrix2cd> f;
  for (int q = 0; q < n; ++q) f.push_back(single((p.x >> q) & 1, (p.z >> q) & 1));
  return kron_qubits(f);
}

inline Matrix op(const uccvqe::QubitOperator& o, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [p, c] : o.terms()) m += c * pauli(p, n);
  return m;
}

/// Jordan-Wigner ladder operator: Z on every lower qubit, |1><0| or |0><1| on p.
inline Matrix ladder(int p, bool dagger, int n) {
  std::vector<Eigen::Matrix2cd> f;
  for (int q = 0; q < n; ++q) {
    if (q < p) {
      f.push_back(single(false, true));
    } else if (q == p) {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
      (dagger ? m(1, 0) : m(0, 1)) = 1.0;
      f.push_back(m);
    } else {
      f.push_back(Eigen::Matrix2cd::Identity());
    }
  }
  return kron_qubits(f);
}

inline Vector vec(const uccvqe::Statevector& s) {
  Vector v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

inline uccvqe::Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> amp(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amp) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amp) a /= std::sqrt(norm);
  return uccvqe::Statevector::from_amplitudes(std::move(amp));
}

}  // namespace dense
