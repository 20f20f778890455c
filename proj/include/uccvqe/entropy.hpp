// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entropy.hpp
 * @brief Single-orbital reduced density matrices, orbital entropies and the
 *        entropy-ranked frozen-orbital policy.
 *
 * For a state with definite N_alpha and N_beta the one-orbital RDM is diagonal
 * in {empty, up, down, up+down}: an off-diagonal element would connect two
 * local occupations that differ in N_alpha or N_beta of orbital p, and the
 * environment would have to compensate, which changes the environment's
 * occupation and makes its partial trace vanish. The diagonal entries are then
 * sums of |c_D|^2 over determinants with the given local pattern.
 */
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fci.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/fermion.hpp"
#include "uccvqe/refstate.hpp"

namespace uccvqe {

struct OrbitalRdm {
  int orbital = 0;
  std::array<double, 4> probs{};  ///< empty, up, down, doubly occupied
};

enum class EntropySource { kMp2, kFci };

inline const char* to_string(EntropySource s) { return s == EntropySource::kMp2 ? "MP2" : "FCI"; }

struct EntropyProfile {
  std::vector<double> entropies;  ///< nats, one per spatial orbital
  EntropySource source = EntropySource::kMp2;
};

inline OrbitalRdm single_orbital_rdm(const CiVector& wf, int p) {
  OrbitalRdm rdm;
  rdm.orbital = p;
  double total = 0.0;
  int na = -1, nb = -1;
  for (const auto& [d, c] : wf) {
    const double w = c * c;
    if (w == 0.0) continue;
    const int a = std::popcount(d.alpha), b = std::popcount(d.beta);
    if (na < 0) {
      na = a;
      nb = b;
    } else if (a != na || b != nb) {
      throw ContractViolation("single_orbital_rdm: wavefunction mixes particle-number sectors");
    }
    const int up = static_cast<int>((d.alpha >> p) & 1), down = static_cast<int>((d.beta >> p) & 1);
    rdm.probs[up + 2 * down] += w;
    total += w;
  }
  if (total <= 0.0) throw PreconditionError("single_orbital_rdm: zero wavefunction");
  for (double& x : rdm.probs) x /= total;
  return rdm;
}

inline double orbital_entropy(const OrbitalRdm& rdm) {
  double s = 0.0;
  for (double l : rdm.probs)
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

/**
 * First-order wavefunction HF + sum_D c_D |D> over all spin-conserving doubles,
 * c_D = <D|H|HF> / (e_i + e_j - e_a - e_b), then L2-normalized.
 */
inline CiVector mp2_wavefunction(const IntegralSet& ints) {
  require_closed_shell(ints, "mp2_wavefunction");
  const int n = ints.n_spatial(), o = ints.n_occupied(), v = n - o;
  const auto eps = orbital_energies(ints);
  const SpinOrbitalConvention conv{n};
  const SlaterCondon sc(ints);
  const std::uint64_t hf = conv.reference_mask(o);
  CiVector wf;
  wf[Determinant::from_bits(hf, n)] = 1.0;
  for (const auto& e : enumerate_excitations(o, v)) {
    if (!e.is_double()) continue;
    std::uint64_t bits = hf;
    double denom = 0.0;
    for (int q : e.occupied()) {
      bits ^= std::uint64_t{1} << q;
      denom += eps[conv.spatial(q)];
    }
    for (int q : e.virtuals()) {
      bits ^= std::uint64_t{1} << q;
      denom -= eps[conv.spatial(q)];
    }
    if (std::abs(denom) <= 1e-8) continue;
    const double c = sc.element(bits, hf) / denom;
    if (c != 0.0) wf[Determinant::from_bits(bits, n)] = c;
  }
  double norm = 0.0;
  for (const auto& [d, c] : wf) norm += c * c;
  norm = std::sqrt(norm);
  for (auto& [d, c] : wf) c /= norm;
  return wf;
}

inline EntropyProfile entropy_profile(const CiVector& wf, int n_spatial, EntropySource source) {
  EntropyProfile prof;
  prof.source = source;
  prof.entropies.resize(n_spatial);
  for (int p = 0; p < n_spatial; ++p) prof.entropies[p] = orbital_entropy(single_orbital_rdm(wf, p));
  return prof;
}

inline EntropyProfile entropy_profile(const IntegralSet& ints, EntropySource source) {
  const CiVector wf = source == EntropySource::kMp2 ? mp2_wavefunction(ints) : fci_ground_state(ints).ci;
  return entropy_profile(wf, ints.n_spatial(), source);
}

struct FreezePolicy {
  enum class Kind { kCount, kThreshold };
  Kind kind = Kind::kCount;
  int k = 0;
  double eta = 0.01;

  static FreezePolicy count(int k) { return {Kind::kCount, k, 0.0}; }
  static FreezePolicy threshold(double eta = 0.01) { return {Kind::kThreshold, 0, eta}; }
};

/// Occupied orbitals to freeze, in ascending entropy (ties by lower index).
inline std::vector<int> select_frozen(const EntropyProfile& profile, int n_occ, const FreezePolicy& policy) {
  if (n_occ > static_cast<int>(profile.entropies.size()))
    throw PreconditionError("select_frozen: more occupied orbitals than entropies");
  std::vector<int> occ(n_occ);
  std::iota(occ.begin(), occ.end(), 0);
  std::stable_sort(occ.begin(), occ.end(),
                   [&](int a, int b) { return profile.entropies[a] < profile.entropies[b]; });
  if (policy.kind == FreezePolicy::Kind::kCount) {
    if (policy.k < 0) throw PreconditionError("select_frozen: negative count");
    if (policy.k >= n_occ)
      throw PreconditionError("select_frozen: cannot freeze " + std::to_string(policy.k) + " of " +
                              std::to_string(n_occ) + " occupied orbitals");
    occ.resize(policy.k);
    return occ;
  }
  const double smax = *std::max_element(profile.entropies.begin(), profile.entropies.end());
  std::vector<int> out;
  for (int p : occ)
    if (profile.entropies[p] < policy.eta * smax) out.push_back(p);
  if (static_cast<int>(out.size()) >= n_occ) out.resize(n_occ - 1);
  return out;
}

struct FreezeSavings {
  int qubits_before = 0;
  int qubits_after = 0;
  long params_before = 0;
  long params_after = 0;
};

inline FreezeSavings freeze_savings(int n_spatial, int n_occ, int n_frozen) {
  return {2 * n_spatial, 2 * (n_spatial - n_frozen), uccsd_parameter_count(n_occ, n_spatial - n_occ),
          uccsd_parameter_count(n_occ - n_frozen, n_spatial - n_occ)};
}

/// "14 -> 10 qubits, 140 -> 54 parameters"
inline std::string to_string(const FreezeSavings& s) {
  return std::to_string(s.qubits_before) + " → " + std::to_string(s.qubits_after) + " qubits, " +
         std::to_string(s.params_before) + " → " + std::to_string(s.params_after) + " parameters";
}

struct EntropyRow {
  double bond_length = 0.0;
  int orbital = 0;
  double entropy = 0.0;
  EntropySource source = EntropySource::kMp2;
};

inline void write_entropy_csv(std::ostream& out, const std::vector<EntropyRow>& rows, bool header = true) {
  if (header) out << "bond_length,orbital_index,entropy,source\n";
  for (const auto& r : rows)
    out << detail::format_double(r.bond_length) << ',' << r.orbital << ',' << detail::format_double(r.entropy) << ','
        << to_string(r.source) << '\n';
}

}  // namespace uccvqe
