// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fci.hpp
 * @brief Exact diagonalization in a fixed (N_alpha, N_beta) determinant sector.
 *
 * Determinants are occupation bitstrings with alpha orbitals in the low block
 * and beta orbitals in the high block, |D> = a+_{p1} a+_{p2} ... |vac> with
 * p1 < p2 < ... (creation operators applied in descending index order). Under
 * Jordan-Wigner every such determinant is +1 times its qubit basis state.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/statevector.hpp"

namespace uccvqe {

struct Determinant {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;

  /// Combined qubit bitstring for @p n_spatial spatial orbitals.
  std::uint64_t bits(int n_spatial) const { return alpha | (beta << n_spatial); }
  static Determinant from_bits(std::uint64_t bits, int n_spatial) {
    const std::uint64_t lo = (n_spatial >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n_spatial) - 1;
    return {bits & lo, bits >> n_spatial};
  }

  friend bool operator==(const Determinant&, const Determinant&) = default;
  friend auto operator<=>(const Determinant&, const Determinant&) = default;
};

/// Determinant -> CI coefficient.
using CiVector = std::map<Determinant, double>;

namespace detail {

inline std::vector<std::uint64_t> strings_with_popcount(int n_orb, int n_el) {
  std::vector<std::uint64_t> out;
  if (n_el < 0 || n_el > n_orb) return out;
  if (n_el == 0) return {0};
  std::uint64_t s = (std::uint64_t{1} << n_el) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_orb;
  while (s < limit) {
    out.push_back(s);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Parity of occupied modes strictly below @p p.
inline int parity_below(std::uint64_t s, int p) {
  return std::popcount(s & ((std::uint64_t{1} << p) - 1)) & 1;
}

}  // namespace detail

class DeterminantBasis {
 public:
  DeterminantBasis(int n_spatial, int n_alpha, int n_beta)
      : n_spatial_(n_spatial),
        n_alpha_(n_alpha),
        n_beta_(n_beta),
        alpha_strings_(detail::strings_with_popcount(n_spatial, n_alpha)),
        beta_strings_(detail::strings_with_popcount(n_spatial, n_beta)) {
    for (std::size_t i = 0; i < alpha_strings_.size(); ++i) alpha_index_[alpha_strings_[i]] = i;
    for (std::size_t i = 0; i < beta_strings_.size(); ++i) beta_index_[beta_strings_[i]] = i;
  }

  int n_spatial() const { return n_spatial_; }
  int n_alpha() const { return n_alpha_; }
  int n_beta() const { return n_beta_; }
  const std::vector<std::uint64_t>& alpha_strings() const { return alpha_strings_; }
  const std::vector<std::uint64_t>& beta_strings() const { return beta_strings_; }
  std::size_t size() const { return alpha_strings_.size() * beta_strings_.size(); }

  Determinant at(std::size_t k) const {
    return {alpha_strings_[k / beta_strings_.size()], beta_strings_[k % beta_strings_.size()]};
  }

  std::size_t index_of(const Determinant& d) const {
    return alpha_index_.at(d.alpha) * beta_strings_.size() + beta_index_.at(d.beta);
  }

  /// Size C(M, N_alpha) C(M, N_beta) without building the strings.
  static double sector_size(int n_spatial, int n_alpha, int n_beta) {
    return detail::binomial(n_spatial, n_alpha) * detail::binomial(n_spatial, n_beta);
  }

 private:
  int n_spatial_;
  int n_alpha_;
  int n_beta_;
  std::vector<std::uint64_t> alpha_strings_;
  std::vector<std::uint64_t> beta_strings_;
  std::unordered_map<std::uint64_t, std::size_t> alpha_index_;
  std::unordered_map<std::uint64_t, std::size_t> beta_index_;
};

/// Slater-Condon matrix elements over spin-orbital bitstrings.
class SlaterCondon {
 public:
  explicit SlaterCondon(const IntegralSet& ints) : ints_(ints), n_(ints.n_spatial()) {}

  double one_body(int p, int q) const {
    if ((p < n_) != (q < n_)) return 0.0;
    return ints_.h1(p % n_, q % n_);
  }

  /// <pq|rs> = (pr|qs) with spin selection.
  double two_body(int p, int q, int r, int s) const {
    if ((p < n_) != (r < n_) || (q < n_) != (s < n_)) return 0.0;
    return ints_.h2(p % n_, r % n_, q % n_, s % n_);
  }

  double anti(int p, int q, int r, int s) const { return two_body(p, q, r, s) - two_body(p, q, s, r); }

  /// <bra|H|ket> including the core energy on the diagonal.
  double element(std::uint64_t bra, std::uint64_t ket) const {
    const std::uint64_t diff = bra ^ ket;
    const int degree = std::popcount(diff) / 2;
    if (degree == 0) return diagonal(ket);
    if (degree > 2 || std::popcount(diff) % 2) return 0.0;
    const std::uint64_t holes = ket & diff;       // occupied in ket only
    const std::uint64_t particles = bra & diff;   // occupied in bra only
    if (degree == 1) {
      const int q = std::countr_zero(holes), p = std::countr_zero(particles);
      int sign = detail::parity_below(ket, q);
      const std::uint64_t mid = ket ^ (std::uint64_t{1} << q);
      sign ^= detail::parity_below(mid, p);
      double v = one_body(p, q);
      for (std::uint64_t rest = mid; rest; rest &= rest - 1) {
        const int k = std::countr_zero(rest);
        v += anti(p, k, q, k);
      }
      return sign ? -v : v;
    }
    const int q1 = std::countr_zero(holes);
    const int q2 = 63 - std::countl_zero(holes);
    const int p1 = std::countr_zero(particles);
    const int p2 = 63 - std::countl_zero(particles);
    // bra = sign * a+_p1 a+_p2 a_q2 a_q1 |ket>
    std::uint64_t s = ket;
    int sign = detail::parity_below(s, q1);
    s ^= std::uint64_t{1} << q1;
    sign ^= detail::parity_below(s, q2);
    s ^= std::uint64_t{1} << q2;
    sign ^= detail::parity_below(s, p2);
    s ^= std::uint64_t{1} << p2;
    sign ^= detail::parity_below(s, p1);
    const double v = anti(p1, p2, q1, q2);
    return sign ? -v : v;
  }

  double diagonal(std::uint64_t det) const {
    double e = ints_.core_energy();
    for (std::uint64_t a = det; a; a &= a - 1) {
      const int i = std::countr_zero(a);
      e += one_body(i, i);
      for (std::uint64_t b = det; b; b &= b - 1) {
        const int j = std::countr_zero(b);
        e += 0.5 * anti(i, j, i, j);
      }
    }
    return e;
  }

 private:
  const IntegralSet& ints_;
  int n_;
};

struct FciResult {
  double energy = 0.0;
  CiVector ci;
  int iterations = 0;
  std::size_t dimension = 0;
};

/// Row-compressed sector Hamiltonian built from single and double replacements.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const IntegralSet& ints, const DeterminantBasis& basis) : basis_(basis) {
    const SlaterCondon sc(ints);
    const int n = basis.n_spatial();
    const std::size_t dim = basis.size();
    row_start_.reserve(dim + 1);
    row_start_.push_back(0);
    diag_.resize(dim);
    std::vector<std::pair<std::size_t, double>> row;
    for (std::size_t k = 0; k < dim; ++k) {
      const Determinant d = basis.at(k);
      const std::uint64_t ket = d.bits(n);
      diag_[k] = sc.diagonal(ket);
      row.clear();
      auto push = [&](const Determinant& target) {
        const std::uint64_t bra = target.bits(n);
        const double v = sc.element(bra, ket);
        if (v != 0.0) row.emplace_back(basis.index_of(target), v);
      };
      const auto occ_a = bits_of(d.alpha), occ_b = bits_of(d.beta);
      const auto vir_a = bits_of(~d.alpha & mask(n)), vir_b = bits_of(~d.beta & mask(n));
      for (int i : occ_a)
        for (int a : vir_a) push({flip(d.alpha, i, a), d.beta});
      for (int i : occ_b)
        for (int a : vir_b) push({d.alpha, flip(d.beta, i, a)});
      for (std::size_t x = 0; x < occ_a.size(); ++x)
        for (std::size_t y = x + 1; y < occ_a.size(); ++y)
          for (std::size_t z = 0; z < vir_a.size(); ++z)
            for (std::size_t w = z + 1; w < vir_a.size(); ++w)
              push({flip(flip(d.alpha, occ_a[x], vir_a[z]), occ_a[y], vir_a[w]), d.beta});
      for (std::size_t x = 0; x < occ_b.size(); ++x)
        for (std::size_t y = x + 1; y < occ_b.size(); ++y)
          for (std::size_t z = 0; z < vir_b.size(); ++z)
            for (std::size_t w = z + 1; w < vir_b.size(); ++w)
              push({d.alpha, flip(flip(d.beta, occ_b[x], vir_b[z]), occ_b[y], vir_b[w])});
      for (int i : occ_a)
        for (int a : vir_a)
          for (int j : occ_b)
            for (int b : vir_b) push({flip(d.alpha, i, a), flip(d.beta, j, b)});
      for (auto& e : row) {
        cols_.push_back(e.first);
        vals_.push_back(e.second);
      }
      row_start_.push_back(cols_.size());
    }
  }

  std::size_t dimension() const { return diag_.size(); }
  const std::vector<double>& diagonal() const { return diag_; }

  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.resize(x.size());
    for (std::size_t k = 0; k < diag_.size(); ++k) {
      double v = diag_[k] * x[k];
      for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) v += vals_[e] * x[cols_[e]];
      y[k] = v;
    }
  }

  Eigen::MatrixXd dense() const {
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t k = 0; k < diag_.size(); ++k) {
      m(k, k) = diag_[k];
      for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) m(k, cols_[e]) += vals_[e];
    }
    return m;
  }

 private:
  static std::uint64_t mask(int n) { return (std::uint64_t{1} << n) - 1; }
  static std::uint64_t flip(std::uint64_t s, int i, int a) {
    return s ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << a);
  }
  static std::vector<int> bits_of(std::uint64_t s) {
    std::vector<int> out;
    for (; s; s &= s - 1) out.push_back(std::countr_zero(s));
    return out;
  }

  const DeterminantBasis& basis_;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
  std::vector<double> diag_;
};

namespace detail {

/**
 * Lowest eigenpair by Davidson iteration with a diagonal preconditioner.
 * Starts from the unit vectors of the lowest diagonal entries plus one
 * fixed-seed random vector, which overlaps every symmetry block of H.
 */
inline std::pair<double, Eigen::VectorXd> davidson_lowest(const SectorHamiltonian& h, int& iterations,
                                                           double energy_tol = 1e-12, double residual_tol = 1e-7,
                                                           int max_iterations = 500) {
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  const auto& diag = h.diagonal();
  if (dim <= 64) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    iterations = 1;
    return {es.eigenvalues()[0], es.eigenvectors().col(0)};
  }
  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return diag[a] < diag[b]; });

  const Eigen::Index n_guess = std::min<Eigen::Index>(8, dim);
  const Eigen::Index max_space = std::min<Eigen::Index>(std::max<Eigen::Index>(48, 2 * n_guess), dim);
  Eigen::MatrixXd v(dim, 0), hv(dim, 0);
  auto add_vector = [&](Eigen::VectorXd x) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < v.cols(); ++c) x -= v.col(c).dot(x) * v.col(c);
    const double nrm = x.norm();
    if (nrm < 1e-10) return false;
    x /= nrm;
    Eigen::VectorXd y;
    h.multiply(x, y);
    v.conservativeResize(Eigen::NoChange, v.cols() + 1);
    hv.conservativeResize(Eigen::NoChange, hv.cols() + 1);
    v.col(v.cols() - 1) = x;
    hv.col(hv.cols() - 1) = y;
    return true;
  };
  for (Eigen::Index g = 0; g < n_guess; ++g) add_vector(Eigen::VectorXd::Unit(dim, order[g]));
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd mixed(dim);
  for (Eigen::Index k = 0; k < dim; ++k) mixed[k] = u(rng);
  add_vector(mixed);

  double last = std::numeric_limits<double>::infinity();
  for (iterations = 1; iterations <= max_iterations; ++iterations) {
    Eigen::MatrixXd sub = v.transpose() * hv;
    sub = 0.5 * (sub + sub.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    const double theta = es.eigenvalues()[0];
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    Eigen::VectorXd x = v * y;
    Eigen::VectorXd r = hv * y - theta * x;
    if (r.norm() < residual_tol && std::abs(theta - last) < energy_tol) return {theta, x.normalized()};
    last = theta;
    if (v.cols() + 1 > max_space) {
      // Collapse onto the current lowest Ritz vectors.
      const Eigen::Index keep = std::min<Eigen::Index>(4, es.eigenvalues().size());
      Eigen::MatrixXd nv = v * es.eigenvectors().leftCols(keep);
      Eigen::MatrixXd nhv = hv * es.eigenvectors().leftCols(keep);
      v = nv;
      hv = nhv;
    }
    Eigen::VectorXd t(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      double denom = diag[k] - theta;
      if (std::abs(denom) < 1e-8) denom = std::copysign(1e-8, denom == 0.0 ? 1.0 : denom);
      t[k] = r[k] / denom;
    }
    if (!add_vector(t) && !add_vector(r)) return {theta, x.normalized()};
  }
  throw ConvergenceError("FCI Davidson did not converge after " + std::to_string(max_iterations) + " iterations");
}

}  // namespace detail

/**
 * Lowest eigenpair of H in the (N_alpha, N_beta) sector fixed by the
 * electron count and spin multiplicity. The CI vector is normalized with a
 * non-negative Hartree-Fock coefficient.
 */
inline FciResult fci_ground_state(const IntegralSet& ints, double max_dimension = 1e6) {
  const int ms2 = ints.spin_multiplicity() - 1;
  const int n_alpha = (ints.n_electrons() + ms2) / 2;
  const int n_beta = ints.n_electrons() - n_alpha;
  const double dim = DeterminantBasis::sector_size(ints.n_spatial(), n_alpha, n_beta);
  if (dim > max_dimension)
    throw CapacityError("fci_ground_state: sector dimension " + std::to_string(static_cast<long long>(dim)) +
                        " exceeds cap " + std::to_string(static_cast<long long>(max_dimension)));
  if (ints.n_spatial() > 32) throw CapacityError("fci_ground_state: more than 32 spatial orbitals");
  const DeterminantBasis basis(ints.n_spatial(), n_alpha, n_beta);
  const SectorHamiltonian h(ints, basis);
  FciResult res;
  res.dimension = basis.size();
  auto [e, vec] = detail::davidson_lowest(h, res.iterations);
  const Determinant hf{(std::uint64_t{1} << n_alpha) - 1, (std::uint64_t{1} << n_beta) - 1};
  if (vec[static_cast<Eigen::Index>(basis.index_of(hf))] < 0.0) vec = -vec;
  res.energy = e;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (vec[k] != 0.0) res.ci[basis.at(k)] = vec[k];
  return res;
}

/// Places each CI coefficient at its Jordan-Wigner basis state (sign +1).
inline Statevector ci_to_statevector(const CiVector& ci, int n_spatial) {
  Statevector s(2 * n_spatial);
  s[0] = 0.0;
  for (const auto& [d, c] : ci) s[d.bits(n_spatial)] = c;
  return s;
}

}  // namespace uccvqe
