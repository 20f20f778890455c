// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file refstate.hpp
 * @brief Closed-shell Hartree-Fock reference quantities and first-order
 *        Moller-Plesset amplitudes from canonical-orbital integrals.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <iostream>
#include <string>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fcidump.hpp"

namespace uccvqe {

/// HF energy, orbital energies and MP2 amplitudes t[i][j][a][b] (virtual
/// indices relative to the first virtual orbital).
struct ReferenceState {
  int n_occ = 0;
  int n_virt = 0;
  double e_hf = 0.0;
  std::vector<double> orbital_energies;
  std::vector<double> mp2_amplitudes;
  double e_mp2 = 0.0;
  int clamped_denominators = 0;

  double t(int i, int j, int a, int b) const {
    const std::size_t o = n_occ, v = n_virt;
    return mp2_amplitudes[((i * o + j) * v + a) * v + b];
  }
};

inline void require_closed_shell(const IntegralSet& ints, const char* who) {
  if (ints.n_electrons() % 2 != 0)
    throw PreconditionError(std::string(who) + ": odd electron count is not supported (closed shell only)");
}

inline double hf_energy(const IntegralSet& ints) {
  require_closed_shell(ints, "hf_energy");
  const int o = ints.n_occupied();
  double e = ints.core_energy();
  for (int i = 0; i < o; ++i) {
    e += 2.0 * ints.h1(i, i);
    for (int j = 0; j < o; ++j) e += 2.0 * ints.h2(i, i, j, j) - ints.h2(i, j, j, i);
  }
  return e;
}

/// Diagonal of the closed-shell Fock matrix.
inline std::vector<double> orbital_energies(const IntegralSet& ints) {
  const int n = ints.n_spatial(), o = ints.n_occupied();
  std::vector<double> eps(n);
  for (int p = 0; p < n; ++p) {
    double e = ints.h1(p, p);
    for (int i = 0; i < o; ++i) e += 2.0 * ints.h2(p, p, i, i) - ints.h2(p, i, i, p);
    eps[p] = e;
  }
  return eps;
}

/**
 * MP2 amplitudes t_ij^ab = (ia|jb) / (e_i + e_j - e_a - e_b) and the
 * closed-shell correlation energy. Denominators smaller than 1e-8 are clamped
 * to a zero amplitude with one warning per call.
 */
inline ReferenceState mp2(const IntegralSet& ints, std::ostream* warnings = &std::cerr) {
  require_closed_shell(ints, "mp2");
  ReferenceState ref;
  ref.n_occ = ints.n_occupied();
  ref.n_virt = ints.n_spatial() - ref.n_occ;
  ref.e_hf = hf_energy(ints);
  ref.orbital_energies = orbital_energies(ints);
  const int o = ref.n_occ, v = ref.n_virt;
  const auto& eps = ref.orbital_energies;
  ref.mp2_amplitudes.assign(static_cast<std::size_t>(o) * o * v * v, 0.0);

  for (int p = 1; p < ints.n_spatial(); ++p)
    if (eps[p] < eps[p - 1] - 1e-12 && warnings) {
      *warnings << "warning: orbital energies are not in ascending order at orbital " << p << '\n';
      break;
    }

  constexpr double kMinDenominator = 1e-8;
  double e2 = 0.0;
  bool large_amplitude = false;
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          const double denom = eps[i] + eps[j] - eps[o + a] - eps[o + b];
          double& t = ref.mp2_amplitudes[((static_cast<std::size_t>(i) * o + j) * v + a) * v + b];
          if (std::abs(denom) <= kMinDenominator) {
            ++ref.clamped_denominators;
            t = 0.0;
            continue;
          }
          const double iajb = ints.h2(i, o + a, j, o + b);
          const double ibja = ints.h2(i, o + b, j, o + a);
          t = iajb / denom;
          if (std::abs(t) > 1.0) large_amplitude = true;
          e2 += t * (2.0 * iajb - ibja);
        }
  ref.e_mp2 = e2;
  if (warnings) {
    if (ref.clamped_denominators > 0)
      *warnings << "warning: " << ref.clamped_denominators
                << " near-degenerate MP2 denominators clamped to zero amplitude\n";
    if (large_amplitude) *warnings << "warning: MP2 amplitude exceeds 1 in magnitude (near degeneracy)\n";
  }
  return ref;
}

/**
 * Correlation energy from the spin-orbital sum over antisymmetrized integrals,
 * sum_{i<j,a<b} |<ij||ab>|^2 / (e_i + e_j - e_a - e_b). Independent of the
 * spatial-orbital formula used by mp2().
 */
inline double mp2_energy_spin_orbital(const IntegralSet& ints) {
  require_closed_shell(ints, "mp2_energy_spin_orbital");
  const int n = ints.n_spatial(), o = ints.n_occupied();
  const auto eps = orbital_energies(ints);
  auto spatial = [n](int so) { return so % n; };
  auto spin = [n](int so) { return so / n; };
  // <pq|rs> = (pr|qs) with spin selection.
  auto phys = [&](int p, int q, int r, int s) {
    if (spin(p) != spin(r) || spin(q) != spin(s)) return 0.0;
    return ints.h2(spatial(p), spatial(r), spatial(q), spatial(s));
  };
  std::vector<int> occ, virt;
  for (int s = 0; s < 2; ++s)
    for (int p = 0; p < n; ++p) (p < o ? occ : virt).push_back(p + s * n);
  double e = 0.0;
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t z = 0; z < virt.size(); ++z)
        for (std::size_t w = z + 1; w < virt.size(); ++w) {
          const int i = occ[x], j = occ[y], a = virt[z], b = virt[w];
          const double anti = phys(i, j, a, b) - phys(i, j, b, a);
          if (anti == 0.0) continue;
          const double denom = eps[spatial(i)] + eps[spatial(j)] - eps[spatial(a)] - eps[spatial(b)];
          if (std::abs(denom) <= 1e-8) continue;
          e += anti * anti / denom;
        }
  return e;
}

}  // namespace uccvqe
