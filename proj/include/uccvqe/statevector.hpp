// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file statevector.hpp
 * @brief Dense statevector engine for Trotterized UCCSD circuits.
 *
 * Basis index bit q is the occupation of qubit (spin orbital) q. States are
 * capped at 16 qubits.
 */
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fermion.hpp"
#include "uccvqe/pauli.hpp"

namespace uccvqe {

class Statevector {
 public:
  static constexpr int kMaxQubits = 16;

  Statevector() = default;

  /// |0...0> on @p n_qubits qubits.
  explicit Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxQubits)
      throw CapacityError("Statevector: " + std::to_string(n_qubits) + " qubits exceeds the dense capacity of " +
                          std::to_string(kMaxQubits));
    amp_.assign(std::size_t{1} << n_qubits, Complex{});
    amp_[0] = 1.0;
  }

  /// Wraps explicit amplitudes; the length must be a power of two.
  static Statevector from_amplitudes(std::vector<Complex> amp) {
    const auto n = static_cast<int>(std::countr_zero(amp.size()));
    if (amp.empty() || (std::size_t{1} << n) != amp.size())
      throw PreconditionError("Statevector: amplitude count is not a power of two");
    Statevector s(n);
    s.amp_ = std::move(amp);
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amp_.size(); }
  std::span<const Complex> amplitudes() const { return amp_; }
  std::span<Complex> amplitudes() { return amp_; }
  Complex operator[](std::size_t i) const { return amp_[i]; }
  Complex& operator[](std::size_t i) { return amp_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  Complex inner(const Statevector& other) const {
    Complex s{};
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
  }

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amp_;
};

/// Computational basis state with qubits in @p occupied set to 1.
inline Statevector init_reference(int n_qubits, std::span<const int> occupied) {
  Statevector s(n_qubits);
  std::uint64_t mask = 0;
  for (int q : occupied) {
    if (q < 0 || q >= n_qubits)
      throw BoundsError("init_reference: qubit " + std::to_string(q) + " outside [0, " + std::to_string(n_qubits) + ")");
    mask |= std::uint64_t{1} << q;
  }
  s[0] = 0.0;
  s[mask] = 1.0;
  return s;
}

/// Hartree-Fock state for @p n_occ doubly occupied spatial orbitals.
inline Statevector hartree_fock_state(const SpinOrbitalConvention& conv, int n_occ) {
  std::vector<int> occ;
  for (int p = 0; p < n_occ; ++p) occ.push_back(conv.alpha(p));
  for (int p = 0; p < n_occ; ++p) occ.push_back(conv.beta(p));
  return init_reference(conv.n_qubits(), occ);
}

namespace detail {
inline void require_fits(const PauliString& p, int n_qubits) {
  if (n_qubits < 64 && ((p.x | p.z) >> n_qubits) != 0)
    throw BoundsError("Pauli string " + p.label() + " acts outside a " + std::to_string(n_qubits) + "-qubit register");
}
}  // namespace detail

/// exp(i angle P)|psi> = cos(angle)|psi> + i sin(angle) P|psi>, in place.
inline void apply_pauli_rotation(Statevector& state, const PauliString& p, double angle) {
  detail::require_fits(p, state.n_qubits());
  const double c = std::cos(angle), s = std::sin(angle);
  const Complex is{0.0, s};
  auto amp = state.amplitudes();
  if (p.x == 0) {
    for (std::size_t b = 0; b < amp.size(); ++b) {
      const double sign = (std::popcount(p.z & b) & 1) ? -1.0 : 1.0;
      amp[b] *= Complex(c, s * sign);
    }
    return;
  }
  const std::uint64_t low = std::uint64_t{1} << std::countr_zero(p.x);
  for (std::uint64_t b = 0; b < amp.size(); ++b) {
    if (b & low) continue;
    const std::uint64_t b2 = b ^ p.x;
    const Complex ph1 = p.apply(b).first;   // P|b>  = ph1 |b2>
    const Complex ph2 = p.apply(b2).first;  // P|b2> = ph2 |b>
    const Complex a1 = amp[b], a2 = amp[b2];
    amp[b] = c * a1 + is * ph2 * a2;
    amp[b2] = c * a2 + is * ph1 * a1;
  }
}

/**
 * A QubitOperator grouped by X mask for repeated application. Within a group
 * every term maps |s> to |s xor x> with phase sum_k c_k i^{y_k} (-1)^{|z_k & s|}.
 */
class CompiledOperator {
 public:
  struct Group {
    std::uint64_t x = 0;
    std::vector<std::pair<std::uint64_t, Complex>> terms;  // (z mask, c * i^{y count})

    Complex element(std::uint64_t s) const {
      Complex v{};
      for (const auto& [z, c] : terms) v += (std::popcount(z & s) & 1) ? -c : c;
      return v;
    }
  };

  CompiledOperator() = default;
  explicit CompiledOperator(const QubitOperator& op) {
    std::map<std::uint64_t, std::size_t> where;
    for (const auto& [p, c] : op.terms()) {
      auto [it, inserted] = where.emplace(p.x, groups_.size());
      if (inserted) groups_.push_back({p.x, {}});
      groups_[it->second].terms.emplace_back(p.z, c * i_pow(p.y_count()));
      support_ |= p.x | p.z;
    }
    hermitian_residual_ = op.hermiticity_residual();
  }

  const std::vector<Group>& groups() const { return groups_; }
  std::uint64_t support() const { return support_; }
  double hermiticity_residual() const { return hermitian_residual_; }

  /// out = Op |psi>, skipping exactly-zero amplitudes of psi.
  Statevector apply(const Statevector& psi) const {
    check_fits(psi.n_qubits());
    Statevector out = Statevector::from_amplitudes(std::vector<Complex>(psi.dimension()));
    auto dst = out.amplitudes();
    const auto src = psi.amplitudes();
    for (std::uint64_t s = 0; s < src.size(); ++s) {
      const Complex a = src[s];
      if (a == Complex{}) continue;
      for (const auto& g : groups_) dst[s ^ g.x] += g.element(s) * a;
    }
    return out;
  }

  /// <psi|Op|psi> without materializing Op|psi>.
  Complex expectation(const Statevector& psi) const {
    check_fits(psi.n_qubits());
    const auto src = psi.amplitudes();
    Complex total{};
    for (std::uint64_t s = 0; s < src.size(); ++s) {
      const Complex a = src[s];
      if (a == Complex{}) continue;
      for (const auto& g : groups_) {
        const Complex bra = src[s ^ g.x];
        if (bra == Complex{}) continue;
        total += std::conj(bra) * g.element(s) * a;
      }
    }
    return total;
  }

 private:
  void check_fits(int n_qubits) const {
    if (n_qubits < 64 && (support_ >> n_qubits) != 0)
      throw BoundsError("operator acts outside a " + std::to_string(n_qubits) + "-qubit register");
  }

  std::vector<Group> groups_;
  std::uint64_t support_ = 0;
  double hermitian_residual_ = 0.0;
};

inline Statevector apply_operator(const QubitOperator& op, const Statevector& psi) {
  return CompiledOperator(op).apply(psi);
}

/// Real <psi|H|psi> for Hermitian H; the imaginary residue must stay below 1e-10.
inline double expectation(const Statevector& state, const CompiledOperator& op) {
  constexpr double kTol = 1e-10;
  if (op.hermiticity_residual() > kTol)
    throw ContractViolation("expectation: operator is not Hermitian (max |Im c| = " +
                            std::to_string(op.hermiticity_residual()) + ")");
  const Complex e = op.expectation(state);
  if (std::abs(e.imag()) > kTol * std::max(1.0, std::abs(e.real())))
    throw ContractViolation("expectation: imaginary residue " + std::to_string(e.imag()));
  return e.real();
}

inline double expectation(const Statevector& state, const QubitOperator& op) {
  return expectation(state, CompiledOperator(op));
}

/**
 * exp(t G) for an anti-Hermitian G whose Pauli terms share one X mask (so
 * they commute and the exponential is exact). G couples each basis state s
 * only to s xor x, giving independent 2x2 rotations.
 */
class GeneratorExponential {
 public:
  GeneratorExponential() = default;

  /// @p source_pattern, when given, is the value of (s & x) on the side of
  /// every coupled pair that G maps forward; other pairs are known to vanish.
  explicit GeneratorExponential(const QubitOperator& g, std::optional<std::uint64_t> source_pattern = std::nullopt)
      : pattern_(source_pattern) {
    if (g.empty()) throw ContractViolation("GeneratorExponential: empty generator");
    if (g.anti_hermiticity_residual() > 1e-12)
      throw ContractViolation("GeneratorExponential: generator is not anti-Hermitian");
    for (const auto& [p, c] : g.terms()) {
      if (terms_.empty()) x_ = p.x;
      if (p.x != x_ || p.x == 0)
        throw ContractViolation("GeneratorExponential: terms must share one nonzero X mask");
      terms_.emplace_back(p.z, c * i_pow(p.y_count()));
    }
  }

  std::uint64_t x_mask() const { return x_; }

  /// psi <- exp(t G) psi.
  void apply(Statevector& psi, double t) const {
    if (t == 0.0) return;
    for_each_pair(psi.n_qubits(), [&](std::uint64_t s, std::uint64_t s2) {
      const Complex b = element(s);  // <s2|G|s>
      const double mag = std::abs(b);
      if (mag == 0.0) return;
      const Complex c = -std::conj(b);  // <s|G|s2>
      const double cs = std::cos(t * mag), sn = std::sin(t * mag) / mag;
      auto amp = psi.amplitudes();
      const Complex a1 = amp[s], a2 = amp[s2];
      amp[s] = cs * a1 + sn * c * a2;
      amp[s2] = cs * a2 + sn * b * a1;
    });
  }

  /// <lhs|G|rhs>.
  Complex matrix_element(const Statevector& lhs, const Statevector& rhs) const {
    Complex total{};
    const auto l = lhs.amplitudes();
    const auto r = rhs.amplitudes();
    for_each_pair(rhs.n_qubits(), [&](std::uint64_t s, std::uint64_t s2) {
      const Complex b = element(s);
      if (b == Complex{}) return;
      total += std::conj(l[s2]) * b * r[s] - std::conj(l[s]) * std::conj(b) * r[s2];
    });
    return total;
  }

 private:
  Complex element(std::uint64_t s) const {
    Complex v{};
    for (const auto& [z, c] : terms_) v += (std::popcount(z & s) & 1) ? -c : c;
    return v;
  }

  template <typename F>
  void for_each_pair(int n_qubits, F&& f) const {
    const std::uint64_t full = (std::uint64_t{1} << n_qubits) - 1;
    if ((x_ & ~full) != 0) throw BoundsError("generator acts outside the register");
    const std::uint64_t rest = full & ~x_;
    if (pattern_) {
      std::uint64_t r = 0;
      do {
        const std::uint64_t s = r | *pattern_;
        f(s, s ^ x_);
        r = (r - rest) & rest;
      } while (r != 0);
      return;
    }
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(x_));
    for (std::uint64_t s = 0; s <= full; ++s)
      if (!(s & top)) f(s, s ^ x_);
  }

  std::uint64_t x_ = 0;
  std::optional<std::uint64_t> pattern_;
  std::vector<std::pair<std::uint64_t, Complex>> terms_;
};

/// Compiled exp(t_k (tau_k - tau_k^dagger)) factors in Trotter order.
class UccsdAnsatz {
 public:
  UccsdAnsatz() = default;
  UccsdAnsatz(std::vector<Excitation> excitations, ParameterMap map)
      : excitations_(std::move(excitations)), map_(std::move(map)) {
    if (map_.n_rows() != static_cast<int>(excitations_.size()))
      throw PreconditionError("UccsdAnsatz: parameter map has " + std::to_string(map_.n_rows()) + " rows for " +
                              std::to_string(excitations_.size()) + " excitations");
    factors_.reserve(excitations_.size());
    for (const auto& e : excitations_) {
      std::uint64_t pattern = 0;
      for (int i : e.occupied()) pattern |= std::uint64_t{1} << i;
      factors_.emplace_back(generator_for(e), pattern);
    }
  }

  const std::vector<Excitation>& excitations() const { return excitations_; }
  const ParameterMap& map() const { return map_; }
  int n_parameters() const { return map_.n_independent(); }
  const GeneratorExponential& factor(std::size_t k) const { return factors_[k]; }

  Statevector prepare(const Statevector& reference, std::span<const double> theta) const {
    const auto amp = map_.amplitudes(theta);
    Statevector psi = reference;
    for (std::size_t k = 0; k < factors_.size(); ++k) factors_[k].apply(psi, amp[k]);
    return psi;
  }

 private:
  std::vector<Excitation> excitations_;
  ParameterMap map_;
  std::vector<GeneratorExponential> factors_;
};

/// One-shot form of UccsdAnsatz::prepare.
inline Statevector prepare_uccsd(const Statevector& reference, std::span<const Excitation> excitations,
                                 const ParameterMap& map, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != map.n_independent())
    throw PreconditionError("prepare_uccsd: theta has " + std::to_string(theta.size()) + " entries, map expects " +
                            std::to_string(map.n_independent()));
  return UccsdAnsatz({excitations.begin(), excitations.end()}, map).prepare(reference, theta);
}

enum class GradientMethod { kAdjoint, kCentralDifference };

/// Energy landscape E(theta) = <ref|U(theta)^dagger H U(theta)|ref>.
struct UccsdProblem {
  CompiledOperator hamiltonian;
  UccsdAnsatz ansatz;
  Statevector reference;
  GradientMethod gradient = GradientMethod::kAdjoint;
  double fd_step = 1e-6;

  int n_parameters() const { return ansatz.n_parameters(); }

  double energy(std::span<const double> theta) const {
    return expectation(ansatz.prepare(reference, theta), hamiltonian);
  }
};

/// Energy and dE/dtheta. Adjoint sweep by default, central differences on request.
inline std::pair<double, std::vector<double>> energy_and_gradient(const UccsdProblem& problem,
                                                                  std::span<const double> theta) {
  for (double t : theta)
    if (!std::isfinite(t)) throw ConvergenceError("energy_and_gradient: non-finite parameter");
  const int n = problem.n_parameters();
  if (static_cast<int>(theta.size()) != n)
    throw PreconditionError("energy_and_gradient: expected " + std::to_string(n) + " parameters");

  if (problem.gradient == GradientMethod::kCentralDifference) {
    const double e = problem.energy(theta);
    std::vector<double> g(n);
    std::vector<double> shifted(theta.begin(), theta.end());
    for (int m = 0; m < n; ++m) {
      shifted[m] = theta[m] + problem.fd_step;
      const double ep = problem.energy(shifted);
      shifted[m] = theta[m] - problem.fd_step;
      const double em = problem.energy(shifted);
      shifted[m] = theta[m];
      g[m] = (ep - em) / (2.0 * problem.fd_step);
    }
    return {e, std::move(g)};
  }

  const auto& ansatz = problem.ansatz;
  const auto amp = ansatz.map().amplitudes(theta);
  Statevector psi = ansatz.prepare(problem.reference, theta);
  Statevector lambda = problem.hamiltonian.apply(psi);
  const double e = psi.inner(lambda).real();
  std::vector<double> amp_grad(amp.size());
  for (std::size_t k = amp.size(); k-- > 0;) {
    const auto& f = ansatz.factor(k);
    amp_grad[k] = 2.0 * f.matrix_element(lambda, psi).real();
    f.apply(psi, -amp[k]);
    f.apply(lambda, -amp[k]);
  }
  return {e, ansatz.map().pull_back(amp_grad)};
}

}  // namespace uccvqe
