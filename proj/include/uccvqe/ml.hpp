// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ml.hpp
 * @brief Kernel ridge regression from principal to auxiliary amplitudes and
 *        the regression-assisted VQE loop built on it.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uccvqe/errors.hpp"
#include "uccvqe/vqe.hpp"

namespace uccvqe {

struct AmplitudeSplit {
  std::vector<int> principal;
  std::vector<int> auxiliary;
  double epsilon = 0.0;   ///< realized cutoff: smallest |theta| among principal
  double fraction = 0.0;  ///< |principal| / N
  bool degenerate = false;
};

struct SplitPolicy {
  enum class Kind { kCutoff, kFraction };
  Kind kind = Kind::kFraction;
  double value = 0.35;

  static SplitPolicy cutoff(double eps) { return {Kind::kCutoff, eps}; }
  static SplitPolicy fraction(double f) { return {Kind::kFraction, f}; }
};

inline AmplitudeSplit label_amplitudes(std::span<const double> theta, const SplitPolicy& policy) {
  const int n = static_cast<int>(theta.size());
  if (n == 0) throw PreconditionError("label_amplitudes: empty parameter vector");
  std::vector<char> is_principal(n, 0);
  if (policy.kind == SplitPolicy::Kind::kCutoff) {
    for (int k = 0; k < n; ++k) is_principal[k] = std::abs(theta[k]) >= policy.value;
  } else {
    if (!(policy.value >= 0.0 && policy.value <= 1.0))
      throw PreconditionError("label_amplitudes: fraction must lie in [0, 1]");
    const int count = std::min(n, static_cast<int>(std::ceil(policy.value * n - 1e-12)));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(theta[a]) > std::abs(theta[b]); });
    for (int k = 0; k < count; ++k) is_principal[order[k]] = 1;
  }
  AmplitudeSplit s;
  s.epsilon = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    if (is_principal[k]) {
      s.principal.push_back(k);
      s.epsilon = std::min(s.epsilon, std::abs(theta[k]));
    } else {
      s.auxiliary.push_back(k);
    }
  }
  if (s.principal.empty()) throw PreconditionError("label_amplitudes: no principal amplitudes");
  s.fraction = static_cast<double>(s.principal.size()) / n;
  s.degenerate = s.auxiliary.empty();
  return s;
}

struct Kernel {
  enum class Kind { kLinear, kPolynomial };
  Kind kind = Kind::kPolynomial;
  double gamma = 1.0;
  double c0 = 0.0;
  int degree = 3;

  static Kernel linear() { return {Kind::kLinear, 1.0, 0.0, 1}; }
  static Kernel polynomial(double gamma = 1.0, double c0 = 0.0, int degree = 3) {
    return {Kind::kPolynomial, gamma, c0, degree};
  }

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    const double d = x.dot(y);
    return kind == Kind::kLinear ? d : std::pow(gamma * d + c0, degree);
  }

  /// d k(x, y) / dx
  Eigen::VectorXd gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (kind == Kind::kLinear) return y;
    return degree * gamma * std::pow(gamma * x.dot(y) + c0, degree - 1) * y;
  }

  Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
    Eigen::MatrixXd k(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < b.rows(); ++j) k(i, j) = (*this)(a.row(i).transpose(), b.row(j).transpose());
    return k;
  }
};

struct RegressionModel {
  Kernel kernel;
  double lambda = 1e-6;
  Eigen::MatrixXd X;  ///< training inputs after standardization
  Eigen::MatrixXd A;  ///< dual coefficients (K + lambda I)^-1 Y
  Eigen::VectorXd x_mean, x_scale, y_mean, y_scale;

  int n_inputs() const { return static_cast<int>(X.cols()); }
  int n_outputs() const { return static_cast<int>(A.cols()); }
};

namespace detail {

/// Column means and standard deviations; degenerate columns get (0, 1).
inline void column_standardization(const Eigen::MatrixXd& m, bool enabled, Eigen::VectorXd& mean,
                                   Eigen::VectorXd& scale) {
  mean = Eigen::VectorXd::Zero(m.cols());
  scale = Eigen::VectorXd::Ones(m.cols());
  if (!enabled || m.rows() < 2) return;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double mu = m.col(c).mean();
    const double sd = std::sqrt((m.col(c).array() - mu).square().mean());
    if (sd > 1e-14 * std::max(1.0, std::abs(mu))) {
      mean[c] = mu;
      scale[c] = sd;
    }
  }
}

}  // namespace detail

/// Dual kernel ridge fit; columns are standardized first when @p standardize is set.
inline RegressionModel fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Kernel& kernel, double lambda,
                           bool standardize = false) {
  if (X.rows() < 1) throw PreconditionError("fit: no training rows");
  if (X.rows() != Y.rows()) throw PreconditionError("fit: X and Y row counts differ");
  if (!(lambda > 0.0)) throw PreconditionError("fit: lambda must be > 0");
  RegressionModel m;
  m.kernel = kernel;
  m.lambda = lambda;
  detail::column_standardization(X, standardize, m.x_mean, m.x_scale);
  detail::column_standardization(Y, standardize, m.y_mean, m.y_scale);
  m.X = (X.rowwise() - m.x_mean.transpose()).array().rowwise() / m.x_scale.transpose().array();
  const Eigen::MatrixXd Ys = (Y.rowwise() - m.y_mean.transpose()).array().rowwise() / m.y_scale.transpose().array();
  Eigen::MatrixXd K = kernel.gram(m.X, m.X);
  K.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    throw IllConditionedError("fit: kernel matrix is not positive definite (condition estimate " +
                                  std::to_string(cond) + ")",
                              cond);
  }
  m.A = llt.solve(Ys);
  return m;
}

inline Eigen::VectorXd predict(const RegressionModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.n_inputs())
    throw PreconditionError("predict: expected " + std::to_string(m.n_inputs()) + " inputs, got " +
                            std::to_string(x.size()));
  const Eigen::VectorXd xs = (x - m.x_mean).cwiseQuotient(m.x_scale);
  Eigen::VectorXd k(m.X.rows());
  for (Eigen::Index i = 0; i < m.X.rows(); ++i) k[i] = m.kernel(xs, m.X.row(i).transpose());
  return m.y_mean + m.y_scale.cwiseProduct(m.A.transpose() * k);
}

/// d predict / d x, shape (outputs x inputs).
inline Eigen::MatrixXd predict_jacobian(const RegressionModel& m, const Eigen::VectorXd& x) {
  const Eigen::VectorXd xs = (x - m.x_mean).cwiseQuotient(m.x_scale);
  Eigen::MatrixXd dk(m.X.rows(), m.X.cols());
  for (Eigen::Index i = 0; i < m.X.rows(); ++i) dk.row(i) = m.kernel.gradient(xs, m.X.row(i).transpose());
  Eigen::MatrixXd j = m.A.transpose() * dk;
  j = m.y_scale.asDiagonal() * j;
  return j * m.x_scale.cwiseInverse().asDiagonal();
}

inline nlohmann::json to_json(const RegressionModel& m) {
  auto mat = [](const Eigen::MatrixXd& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (Eigen::Index j = 0; j < a.cols(); ++j) r.push_back(a(i, j));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json k;
  k["kind"] = m.kernel.kind == Kernel::Kind::kLinear ? "linear" : "poly";
  k["gamma"] = m.kernel.gamma;
  k["c0"] = m.kernel.c0;
  k["degree"] = m.kernel.degree;
  return {{"kernel", k},         {"lambda", m.lambda},          {"X", mat(m.X)},
          {"A", mat(m.A)},       {"x_mean", vec(m.x_mean)},     {"x_scale", vec(m.x_scale)},
          {"y_mean", vec(m.y_mean)}, {"y_scale", vec(m.y_scale)}};
}

struct MlOptions {
  int n = 4;
  SplitPolicy split = SplitPolicy::fraction(0.35);
  Kernel kernel = Kernel::polynomial(1.0, 0.0, 3);
  double lambda = 1e-6;
  bool standardize = true;
  int max_cycles = 100;
};

struct MlResult {
  VqeResult vqe;
  std::vector<AmplitudeSplit> splits;
  std::vector<RegressionModel> models;
  std::vector<std::string> notices;
};

/**
 * Alternates n full-space iterations with minimization over the principal
 * amplitudes, the auxiliary ones being predicted by a model fitted on the n
 * iterates. Every reported energy is the expectation value at the composed
 * full parameter vector.
 */
inline MlResult run_ml_assisted_vqe(const IntegralSet& ints, const VqeOptions& base, const MlOptions& ml) {
  base.validate();
  if (ml.n < 1) throw PreconditionError("run_ml_assisted_vqe: n must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const UccsdSystem sys = build_system(ints, base.use_spin_adaptation);
  const UccsdProblem full = sys.problem(base);
  const Objective full_objective = make_objective(full);
  const int n_full = full.n_parameters();

  MlResult out;
  VqeResult& res = out.vqe;
  res.n_params_initial = n_full;
  res.n_params_final = n_full;
  VqeTrace& trace = res.trace;
  std::vector<double> theta(n_full, 0.0);
  int budget = base.max_iterations;

  auto append = [&](const VqeTrace& part, const std::vector<double>* composed_from_reduced) {
    if (trace.iterates.empty()) trace.iterates.push_back(part.iterates.front());
    for (std::size_t k = 1; k < part.iterates.size(); ++k) {
      Iterate it = part.iterates[k];
      it.iteration = trace.last().iteration + 1;
      if (composed_from_reduced) it.theta = composed_from_reduced[k];
      trace.iterates.push_back(std::move(it));
    }
    trace.converged = part.converged;
    trace.termination = part.termination;
  };

  for (int cycle = 0; cycle < ml.max_cycles && budget > 0; ++cycle) {
    std::optional<AmplitudeSplit> labelled;
    const IterationHook at_n = [&](const VqeTrace& tr) {
      if (labelled || tr.n_iterations() < ml.n) return true;
      labelled = label_amplitudes(tr.last().theta, ml.split);
      if (!labelled->degenerate) return false;
      out.notices.push_back("degenerate split: every amplitude is principal, continuing as plain VQE");
      return true;
    };
    const VqeTrace stage = minimize(full_objective, theta, {base.energy_tol, budget}, at_n, 0, start);
    append(stage, nullptr);
    res.n_iterations += stage.n_iterations();
    budget -= stage.n_iterations();
    theta = stage.last().theta;
    if (labelled) out.splits.push_back(*labelled);
    if (stage.converged || !labelled || labelled->degenerate) break;

    const AmplitudeSplit& split = *labelled;
    const auto np = static_cast<Eigen::Index>(split.principal.size());
    const auto na = static_cast<Eigen::Index>(split.auxiliary.size());
    const auto rows = static_cast<Eigen::Index>(stage.iterates.size()) - 1;
    Eigen::MatrixXd X(rows, np), Y(rows, na);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& t = stage.iterates[r + 1].theta;
      for (Eigen::Index c = 0; c < np; ++c) X(r, c) = t[split.principal[c]];
      for (Eigen::Index c = 0; c < na; ++c) Y(r, c) = t[split.auxiliary[c]];
    }
    const RegressionModel model = fit(X, Y, ml.kernel, ml.lambda, ml.standardize);
    out.models.push_back(model);

    auto compose = [&](std::span<const double> phi) {
      std::vector<double> t(n_full);
      Eigen::VectorXd x(np);
      for (Eigen::Index c = 0; c < np; ++c) x[c] = t[split.principal[c]] = phi[c];
      const Eigen::VectorXd y = predict(model, x);
      for (Eigen::Index c = 0; c < na; ++c) t[split.auxiliary[c]] = y[c];
      return t;
    };
    const Objective reduced = [&](std::span<const double> phi, std::vector<double>* grad) {
      const auto t = compose(phi);
      if (!grad) return full_objective(t, nullptr);
      std::vector<double> g;
      const double e = full_objective(t, &g);
      Eigen::VectorXd x(np), ga(na);
      for (Eigen::Index c = 0; c < np; ++c) x[c] = phi[c];
      for (Eigen::Index c = 0; c < na; ++c) ga[c] = g[split.auxiliary[c]];
      const Eigen::VectorXd chain = predict_jacobian(model, x).transpose() * ga;
      grad->resize(np);
      for (Eigen::Index c = 0; c < np; ++c) (*grad)[c] = g[split.principal[c]] + chain[c];
      return e;
    };
    std::vector<double> phi0(np);
    for (Eigen::Index c = 0; c < np; ++c) phi0[c] = theta[split.principal[c]];
    const VqeTrace red = minimize(reduced, phi0, {base.energy_tol, std::max(1, budget)}, {}, 0, start);
    std::vector<std::vector<double>> composed;
    composed.reserve(red.iterates.size());
    for (const auto& it : red.iterates) composed.push_back(compose(it.theta));
    append(red, composed.data());
    res.n_reduced_iterations += red.n_iterations();
    res.n_params_final = static_cast<int>(np);
    budget -= red.n_iterations();
    theta = composed.back();
    if (red.converged && red.n_iterations() <= 1) break;
  }

  res.energy = trace.last().energy;
  res.theta_final = theta;
  res.converged = trace.converged;
  res.s_squared_final = expectation(full.ansatz.prepare(full.reference, theta), sys.s_squared);
  res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace uccvqe
