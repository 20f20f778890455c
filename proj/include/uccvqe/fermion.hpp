// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fermion.hpp
 * @brief Spin-orbital excitations, spin-adapted parameter maps, and the
 *        Jordan-Wigner mapping of fermionic operators onto qubits.
 *
 * Spin orbitals use the block layout: alpha orbitals are 0..n-1, beta
 * orbitals n..2n-1, and spin orbital q is qubit q.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/pauli.hpp"

namespace uccvqe {

enum class Spin { kAlpha = 0, kBeta = 1 };

struct SpinOrbitalConvention {
  int n_spatial = 0;

  int n_qubits() const { return 2 * n_spatial; }
  int alpha(int p) const { return p; }
  int beta(int p) const { return p + n_spatial; }
  int index(int p, Spin s) const { return s == Spin::kAlpha ? alpha(p) : beta(p); }
  int spatial(int so) const { return so % n_spatial; }
  Spin spin(int so) const { return so < n_spatial ? Spin::kAlpha : Spin::kBeta; }

  /// Qubit mask of the closed-shell reference with @p n_occ doubly occupied orbitals.
  std::uint64_t reference_mask(int n_occ) const {
    std::uint64_t m = 0;
    for (int p = 0; p < n_occ; ++p) m |= (std::uint64_t{1} << alpha(p)) | (std::uint64_t{1} << beta(p));
    return m;
  }
};

enum class ExcitationKind { kSingle, kDouble };

/// tau = a+_a a_i (single) or a+_a a+_b a_j a_i (double) with i<j, a<b.
struct Excitation {
  ExcitationKind kind = ExcitationKind::kSingle;
  std::array<int, 2> occ{-1, -1};
  std::array<int, 2> virt{-1, -1};

  static Excitation single(int i, int a) { return {ExcitationKind::kSingle, {i, -1}, {a, -1}}; }
  static Excitation make_double(int i, int j, int a, int b) {
    return {ExcitationKind::kDouble, {std::min(i, j), std::max(i, j)}, {std::min(a, b), std::max(a, b)}};
  }

  bool is_double() const { return kind == ExcitationKind::kDouble; }
  int rank() const { return is_double() ? 2 : 1; }
  std::span<const int> occupied() const { return {occ.data(), static_cast<std::size_t>(rank())}; }
  std::span<const int> virtuals() const { return {virt.data(), static_cast<std::size_t>(rank())}; }

  bool spin_conserving(const SpinOrbitalConvention& conv) const {
    auto betas = [&](std::span<const int> idx) {
      return std::count_if(idx.begin(), idx.end(), [&](int so) { return conv.spin(so) == Spin::kBeta; });
    };
    if (!is_double()) return conv.spin(occ[0]) == conv.spin(virt[0]);
    return betas(occupied()) == betas(virtuals());
  }

  std::string label() const {
    std::string s = "t_";
    for (int i : occupied()) s += std::to_string(i) + (i == occupied().back() ? "" : ",");
    s += "^";
    for (int a : virtuals()) s += std::to_string(a) + (a == virtuals().back() ? "" : ",");
    return s;
  }

  friend bool operator==(const Excitation&, const Excitation&) = default;
  friend auto operator<=>(const Excitation&, const Excitation&) = default;
};

/**
 * All spin-conserving singles and S_z-conserving doubles out of the
 * closed-shell reference: doubles first, then singles, each in
 * lexicographic spin-orbital order. This is also the Trotter order.
 */
inline std::vector<Excitation> enumerate_excitations(int n_occ_spatial, int n_virt_spatial) {
  if (n_occ_spatial <= 0 || n_virt_spatial <= 0)
    throw PreconditionError("enumerate_excitations: occupied and virtual counts must be positive");
  const SpinOrbitalConvention conv{n_occ_spatial + n_virt_spatial};
  std::vector<int> occ, virt;
  for (int so = 0; so < conv.n_qubits(); ++so)
    (conv.spatial(so) < n_occ_spatial ? occ : virt).push_back(so);

  std::vector<Excitation> doubles, singles;
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t z = 0; z < virt.size(); ++z)
        for (std::size_t w = z + 1; w < virt.size(); ++w) {
          auto e = Excitation::make_double(occ[x], occ[y], virt[z], virt[w]);
          if (e.spin_conserving(conv)) doubles.push_back(e);
        }
  for (int i : occ)
    for (int a : virt) {
      auto e = Excitation::single(i, a);
      if (e.spin_conserving(conv)) singles.push_back(e);
    }
  std::sort(doubles.begin(), doubles.end());
  std::sort(singles.begin(), singles.end());
  doubles.insert(doubles.end(), singles.begin(), singles.end());
  return doubles;
}

/// Closed form 2ov + o^2 v^2 + 2 C(o,2) C(v,2).
constexpr long uccsd_parameter_count(long o, long v) {
  return 2 * o * v + o * o * v * v + 2 * (o * (o - 1) / 2) * (v * (v - 1) / 2);
}

/// Linear map from independent parameters theta to per-excitation amplitudes.
class ParameterMap {
 public:
  using Row = std::vector<std::pair<int, double>>;

  ParameterMap() = default;
  ParameterMap(int n_independent, std::vector<Row> rows) : n_independent_(n_independent), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      for (auto [k, c] : r)
        if (k < 0 || k >= n_independent_) throw PreconditionError("ParameterMap: parameter index out of range");
  }

  /// One parameter per excitation.
  static ParameterMap identity(int n) {
    std::vector<Row> rows(n);
    for (int k = 0; k < n; ++k) rows[k] = {{k, 1.0}};
    return {n, std::move(rows)};
  }

  int n_independent() const { return n_independent_; }
  int n_rows() const { return static_cast<int>(rows_.size()); }
  const Row& row(int k) const { return rows_[k]; }
  const std::vector<Row>& rows() const { return rows_; }

  std::vector<double> amplitudes(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != n_independent_)
      throw PreconditionError("ParameterMap: expected " + std::to_string(n_independent_) + " parameters, got " +
                              std::to_string(theta.size()));
    std::vector<double> amp(rows_.size(), 0.0);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      for (auto [m, c] : rows_[k]) amp[k] += c * theta[m];
    return amp;
  }

  /// Gradient with respect to theta from the gradient with respect to amplitudes.
  std::vector<double> pull_back(std::span<const double> amp_grad) const {
    std::vector<double> g(n_independent_, 0.0);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      for (auto [m, c] : rows_[k]) g[m] += c * amp_grad[k];
    return g;
  }

  /**
   * Keeps only the parameters in @p kept (ascending, renumbered 0..) and the
   * rows that still depend on one of them. Returns the reduced map and the
   * original row index of each surviving row.
   */
  std::pair<ParameterMap, std::vector<int>> restrict_to(std::span<const int> kept) const {
    std::vector<int> new_index(n_independent_, -1);
    for (std::size_t m = 0; m < kept.size(); ++m) new_index[kept[m]] = static_cast<int>(m);
    std::vector<Row> rows;
    std::vector<int> surviving;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Row r;
      for (auto [m, c] : rows_[k])
        if (new_index[m] >= 0) r.emplace_back(new_index[m], c);
      if (r.empty()) continue;
      rows.push_back(std::move(r));
      surviving.push_back(static_cast<int>(k));
    }
    return {ParameterMap(static_cast<int>(kept.size()), std::move(rows)), std::move(surviving)};
  }

 private:
  int n_independent_ = 0;
  std::vector<Row> rows_;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/**
 * Closed-shell spin-adaptation map.
 *
 * Independent parameters: one per spatial single i->a shared by both spins,
 * and one per mixed-spin double (i alpha, j beta -> a alpha, b beta) modulo
 * the spin-flip pairing (i,j,a,b) ~ (j,i,b,a). Same-spin doubles are not
 * independent: with every excitation written in canonical operator order,
 *   t(i s, j s -> a s, b s) = T(i,j,a,b) - T(i,j,b,a)
 * where T(i,j,a,b) is the mixed-spin amplitude above. The minus sign is the
 * reordering a+_{a beta} a+_{b alpha} = -a+_{b alpha} a+_{a beta}.
 * Mixed-spin partners are identified by union-find over the pairing graph.
 */
inline ParameterMap spin_adapt(std::span<const Excitation> excitations, const SpinOrbitalConvention& conv) {
  const int count = static_cast<int>(excitations.size());
  std::map<std::array<int, 4>, int> mixed;   // spatial (i,j,a,b) -> excitation index
  std::map<std::array<int, 2>, int> single_key;  // spatial (i,a) -> first excitation index
  for (int k = 0; k < count; ++k) {
    const auto& e = excitations[k];
    if (!e.spin_conserving(conv)) throw ContractViolation("spin_adapt: excitation " + e.label() + " does not conserve spin");
    if (e.is_double() && conv.spin(e.occ[0]) != conv.spin(e.occ[1]))
      mixed[{conv.spatial(e.occ[0]), conv.spatial(e.occ[1]), conv.spatial(e.virt[0]), conv.spatial(e.virt[1])}] = k;
  }

  detail::UnionFind uf(count);
  for (const auto& [key, k] : mixed) {
    auto it = mixed.find({key[1], key[0], key[3], key[2]});
    if (it != mixed.end()) uf.unite(k, it->second);
  }
  for (int k = 0; k < count; ++k) {
    const auto& e = excitations[k];
    if (e.is_double()) continue;
    const std::array<int, 2> key{conv.spatial(e.occ[0]), conv.spatial(e.virt[0])};
    auto [it, inserted] = single_key.emplace(key, k);
    if (!inserted) uf.unite(k, it->second);
  }

  std::map<int, int> param_of_root;
  int n_params = 0;
  auto param = [&](int k) {
    auto [it, inserted] = param_of_root.emplace(uf.find(k), n_params);
    if (inserted) ++n_params;
    return it->second;
  };
  auto mixed_param = [&](int i, int j, int a, int b) {
    auto it = mixed.find({i, j, a, b});
    if (it == mixed.end())
      throw ContractViolation("spin_adapt: mixed-spin partner (" + std::to_string(i) + "," + std::to_string(j) + "->" +
                              std::to_string(a) + "," + std::to_string(b) + ") missing from the excitation list");
    return param(it->second);
  };

  std::vector<ParameterMap::Row> rows(count);
  for (int k = 0; k < count; ++k) {
    const auto& e = excitations[k];
    const bool same_spin_double = e.is_double() && conv.spin(e.occ[0]) == conv.spin(e.occ[1]);
    if (!same_spin_double) {
      rows[k] = {{param(k), 1.0}};
      continue;
    }
    const int i = conv.spatial(e.occ[0]), j = conv.spatial(e.occ[1]);
    const int a = conv.spatial(e.virt[0]), b = conv.spatial(e.virt[1]);
    rows[k] = {{mixed_param(i, j, a, b), 1.0}, {mixed_param(i, j, b, a), -1.0}};
  }
  return {n_params, std::move(rows)};
}

// --------------------------------------------------------------------------
// Fermionic operators and Jordan-Wigner.

struct LadderOp {
  int mode = 0;
  bool dagger = false;
};

inline LadderOp create(int p) { return {p, true}; }
inline LadderOp annihilate(int p) { return {p, false}; }

/// Coefficient times an ordered product of ladder operators.
struct FermionTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<LadderOp> ops;
};

using FermionOperator = std::vector<FermionTerm>;

/// a+_p -> (X_p - iY_p)/2 Z_0..Z_{p-1};  a_p -> (X_p + iY_p)/2 Z_0..Z_{p-1}.
inline QubitOperator jordan_wigner(const LadderOp& op) {
  if (op.mode < 0 || op.mode >= 64) throw BoundsError("jordan_wigner: mode out of range");
  const std::uint64_t below = (std::uint64_t{1} << op.mode) - 1;
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  QubitOperator out;
  out.add({bit, below}, 0.5);
  out.add({bit, below | bit}, Complex(0.0, op.dagger ? -0.5 : 0.5));
  return out;
}

inline QubitOperator jordan_wigner(const FermionTerm& term) {
  QubitOperator out = QubitOperator::identity(term.coefficient);
  for (const auto& op : term.ops) out = out * jordan_wigner(op);
  return out.compress();
}

inline QubitOperator jordan_wigner(const FermionOperator& op) {
  QubitOperator out;
  for (const auto& t : op) out += jordan_wigner(t);
  return out.compress();
}

/**
 * H = core + sum h1[pq] a+_{p s} a_{q s}
 *       + 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
 * mapped by Jordan-Wigner and compressed.
 */
inline QubitOperator build_qubit_hamiltonian(const IntegralSet& ints) {
  const SpinOrbitalConvention conv{ints.n_spatial()};
  const int n = ints.n_spatial();
  const int nq = conv.n_qubits();
  if (nq > 64) throw CapacityError("build_qubit_hamiltonian: more than 64 spin orbitals");
  std::vector<QubitOperator> up(nq), down(nq);
  for (int q = 0; q < nq; ++q) {
    up[q] = jordan_wigner(create(q));
    down[q] = jordan_wigner(annihilate(q));
  }
  // Pair products a+_p a_q are reused across the two-body sum.
  std::vector<QubitOperator> hop(static_cast<std::size_t>(nq) * nq);
  for (int p = 0; p < nq; ++p)
    for (int q = 0; q < nq; ++q) hop[p * nq + q] = (up[p] * down[q]).compress();

  QubitOperator h = QubitOperator::identity(ints.core_energy());
  for (int s = 0; s < 2; ++s)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const double v = ints.h1(p, q);
        if (v == 0.0) continue;
        const int P = conv.index(p, Spin(s)), Q = conv.index(q, Spin(s));
        h += hop[P * nq + Q] * Complex(v);
      }
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int u = 0; u < n; ++u) {
              const double v = ints.h2(p, q, r, u);
              if (v == 0.0) continue;
              const int P = conv.index(p, Spin(s)), Q = conv.index(q, Spin(s));
              const int R = conv.index(r, Spin(t)), U = conv.index(u, Spin(t));
              if (P == R || Q == U) continue;
              // a+_P a+_R a_U a_Q = (a+_P a_Q)(a+_R a_U) - delta_QR a+_P a_U
              QubitOperator term = hop[P * nq + Q] * hop[R * nq + U];
              if (Q == R) term -= hop[P * nq + U];
              term *= Complex(0.5 * v);
              h += term;
            }
  return h.compress();
}

/// tau - tau^dagger mapped to qubits.
inline QubitOperator generator_for(const Excitation& e) {
  FermionTerm tau;
  FermionTerm tau_dag;
  if (e.is_double()) {
    tau.ops = {create(e.virt[0]), create(e.virt[1]), annihilate(e.occ[1]), annihilate(e.occ[0])};
    tau_dag.ops = {create(e.occ[0]), create(e.occ[1]), annihilate(e.virt[1]), annihilate(e.virt[0])};
  } else {
    tau.ops = {create(e.virt[0]), annihilate(e.occ[0])};
    tau_dag.ops = {create(e.occ[0]), annihilate(e.virt[0])};
  }
  tau_dag.coefficient = -1.0;
  return jordan_wigner(FermionOperator{tau, tau_dag});
}

/// Total particle number sum_p n_p.
inline QubitOperator number_operator(int n_qubits) {
  FermionOperator op;
  for (int p = 0; p < n_qubits; ++p) op.push_back({1.0, {create(p), annihilate(p)}});
  return jordan_wigner(op);
}

/// S_z = 1/2 sum_p (n_{p alpha} - n_{p beta}).
inline QubitOperator sz_operator(const SpinOrbitalConvention& conv) {
  FermionOperator op;
  for (int p = 0; p < conv.n_spatial; ++p) {
    op.push_back({0.5, {create(conv.alpha(p)), annihilate(conv.alpha(p))}});
    op.push_back({-0.5, {create(conv.beta(p)), annihilate(conv.beta(p))}});
  }
  return jordan_wigner(op);
}

/// S^2 = S_- S_+ + S_z (S_z + 1).
inline QubitOperator s_squared_operator(const SpinOrbitalConvention& conv) {
  FermionOperator plus, minus;
  for (int p = 0; p < conv.n_spatial; ++p) {
    plus.push_back({1.0, {create(conv.alpha(p)), annihilate(conv.beta(p))}});
    minus.push_back({1.0, {create(conv.beta(p)), annihilate(conv.alpha(p))}});
  }
  const QubitOperator sz = sz_operator(conv);
  QubitOperator s2 = jordan_wigner(minus) * jordan_wigner(plus) + sz * sz + sz;
  return s2.compress();
}

}  // namespace uccvqe
