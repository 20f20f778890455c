// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file vqe.hpp
 * @brief L-BFGS energy minimization with per-iteration tracing, the
 *        small-amplitude filter, and the plain / spin-adapted / filtered drivers.
 *
 * The quasi-Newton solver is Ceres' line-search minimizer (L-BFGS direction,
 * strong-Wolfe line search, history 10). Termination on the absolute energy
 * change is done from an iteration callback so that one iteration is exactly
 * one accepted parameter update.
 */
#pragma once

#include <ceres/ceres.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uccvqe/errors.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/fermion.hpp"
#include "uccvqe/refstate.hpp"
#include "uccvqe/statevector.hpp"

namespace uccvqe {

struct VqeOptions {
  bool use_spin_adaptation = false;
  bool use_saf = false;
  int kappa = 2;
  double eps1 = 1e-4;
  double eps2 = 1e-5;
  double energy_tol = 1e-6;
  int max_iterations = 500;
  double fd_step = 1e-6;
  GradientMethod gradient = GradientMethod::kAdjoint;

  void validate() const {
    if (kappa < 2) throw PreconditionError("VqeOptions: kappa must be >= 2");
    if (use_saf && (eps1 < 0.0 || eps2 < 0.0)) throw PreconditionError("VqeOptions: eps1 and eps2 must be >= 0");
    if (!(energy_tol > 0.0)) throw PreconditionError("VqeOptions: energy_tol must be > 0");
    if (max_iterations < 1) throw PreconditionError("VqeOptions: max_iterations must be >= 1");
    if (!(fd_step > 0.0)) throw PreconditionError("VqeOptions: fd_step must be > 0");
  }
};

struct Iterate {
  int iteration = 0;
  std::vector<double> theta;
  double energy = 0.0;
  double wall_time = 0.0;  ///< seconds since the run started
};

struct SafEvent {
  int iteration = 0;
  std::vector<int> dropped;
  double warm_start_energy = 0.0;
};

/// Iterates[0] is the starting point; iterates[k] follows the k-th accepted update.
struct VqeTrace {
  std::vector<Iterate> iterates;
  std::vector<SafEvent> events;
  bool converged = false;
  std::string termination;

  int n_iterations() const { return iterates.empty() ? 0 : static_cast<int>(iterates.size()) - 1; }
  const Iterate& last() const { return iterates.back(); }
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> theta_final;  ///< in the unfiltered parameter indexing; dropped entries are 0
  int n_params_initial = 0;
  int n_params_final = 0;
  int n_iterations = 0;
  double wall_time = 0.0;
  std::vector<int> dropped_indices;
  double s_squared_final = 0.0;
  bool converged = false;
  VqeTrace trace;
  int n_reduced_iterations = 0;  ///< ML loop only
};

/// Returns energy; fills *gradient when it is non-null.
using Objective = std::function<double(std::span<const double> theta, std::vector<double>* gradient)>;

/// Called after every recorded iterate; return false to stop.
using IterationHook = std::function<bool(const VqeTrace&)>;

struct MinimizeOptions {
  double energy_tol = 1e-6;
  int max_iterations = 500;
  double gradient_tol = 1e-8;
  int history = 10;
};

namespace detail {

class CeresObjective final : public ceres::FirstOrderFunction {
 public:
  CeresObjective(const Objective& f, int n, bool& non_finite) : f_(f), n_(n), non_finite_(non_finite) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    std::vector<double> g;
    const double e = f_(std::span<const double>(parameters, n_), gradient ? &g : nullptr);
    bool ok = std::isfinite(e);
    if (gradient)
      for (int k = 0; k < n_; ++k) {
        gradient[k] = g[k];
        ok = ok && std::isfinite(g[k]);
      }
    if (!ok) {
      non_finite_ = true;
      return false;
    }
    *cost = e;
    return true;
  }
  int NumParameters() const override { return n_; }

 private:
  const Objective& f_;
  int n_;
  bool& non_finite_;
};

class TraceCallback final : public ceres::IterationCallback {
 public:
  TraceCallback(VqeTrace& trace, const std::vector<double>& x, const MinimizeOptions& opts,
                const IterationHook& hook, const bool& non_finite,
                std::chrono::steady_clock::time_point start)
      : trace_(trace), x_(x), opts_(opts), hook_(hook), non_finite_(non_finite), start_(start) {}

  ceres::CallbackReturnType operator()(const ceres::IterationSummary& s) override {
    if (non_finite_) return ceres::SOLVER_ABORT;
    if (s.iteration == 0 || !s.step_is_successful) return ceres::SOLVER_CONTINUE;
    const double prev = trace_.last().energy;
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    trace_.iterates.push_back({trace_.last().iteration + 1, x_, s.cost, t});
    if (std::abs(s.cost - prev) < opts_.energy_tol) {
      trace_.converged = true;
      trace_.termination = "energy change below tolerance";
      return ceres::SOLVER_TERMINATE_SUCCESSFULLY;
    }
    if (hook_ && !hook_(trace_)) {
      trace_.termination = "stopped by caller";
      return ceres::SOLVER_TERMINATE_SUCCESSFULLY;
    }
    return ceres::SOLVER_CONTINUE;
  }

 private:
  VqeTrace& trace_;
  const std::vector<double>& x_;
  const MinimizeOptions& opts_;
  const IterationHook& hook_;
  const bool& non_finite_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/**
 * Minimizes @p f from @p theta0. Iterate numbering continues from
 * @p first_iteration so that restarted runs can share one trace.
 */
inline VqeTrace minimize(const Objective& f, std::vector<double> theta0, const MinimizeOptions& opts = {},
                         const IterationHook& hook = {}, int first_iteration = 0,
                         std::optional<std::chrono::steady_clock::time_point> start = std::nullopt) {
  const auto t0 = start.value_or(std::chrono::steady_clock::now());
  for (double t : theta0)
    if (!std::isfinite(t)) throw PreconditionError("minimize: non-finite starting point");
  VqeTrace trace;
  const double e0 = f(theta0, nullptr);
  if (!std::isfinite(e0)) throw ConvergenceError("minimize: non-finite objective at the starting point");
  trace.iterates.push_back(
      {first_iteration, theta0, e0, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  if (theta0.empty()) {
    trace.converged = true;
    trace.termination = "no free parameters";
    return trace;
  }
  if (hook && !hook(trace)) {
    trace.termination = "stopped by caller";
    return trace;
  }

  bool non_finite = false;
  std::vector<double> x = theta0;
  ceres::GradientProblem problem(new detail::CeresObjective(f, static_cast<int>(x.size()), non_finite));
  detail::TraceCallback callback(trace, x, opts, hook, non_finite, t0);
  ceres::GradientProblemSolver::Options o;
  o.line_search_direction_type = ceres::LBFGS;
  o.line_search_type = ceres::WOLFE;
  o.max_lbfgs_rank = opts.history;
  o.max_num_iterations = opts.max_iterations;
  o.function_tolerance = 0.0;
  o.parameter_tolerance = 0.0;
  o.gradient_tolerance = opts.gradient_tol;
  o.logging_type = ceres::SILENT;
  o.minimizer_progress_to_stdout = false;
  o.update_state_every_iteration = true;
  o.callbacks.push_back(&callback);
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(o, problem, x.data(), &summary);

  if (non_finite)
    throw ConvergenceError("minimize: non-finite objective after iteration " +
                           std::to_string(trace.last().iteration) + " (last finite energy " +
                           std::to_string(trace.last().energy) + ")");
  if (trace.termination.empty() && x != trace.last().theta) {
    // Final step accepted by the gradient test, not yet recorded.
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    trace.iterates.push_back({trace.last().iteration + 1, x, summary.final_cost, t});
  }
  if (trace.termination.empty()) {
    if (summary.termination_type == ceres::CONVERGENCE) {
      trace.converged = true;
      trace.termination = "gradient norm below tolerance";
    } else if (summary.termination_type == ceres::NO_CONVERGENCE) {
      trace.termination = "iteration limit reached";
    } else {
      trace.termination = summary.message;
    }
  }
  return trace;
}

/// Applies the small-amplitude filter to iterates kappa-1 and kappa of @p trace.
inline std::pair<std::vector<int>, std::vector<int>> saf_filter(const VqeTrace& trace, int kappa, double eps1,
                                                                double eps2) {
  if (kappa < 1 || kappa >= static_cast<int>(trace.iterates.size()))
    throw PreconditionError("saf_filter: trace has " + std::to_string(trace.n_iterations()) +
                            " iterations, kappa = " + std::to_string(kappa));
  const auto& now = trace.iterates[kappa].theta;
  const auto& before = trace.iterates[kappa - 1].theta;
  std::vector<int> kept, dropped;
  for (std::size_t k = 0; k < now.size(); ++k) {
    if (std::abs(now[k]) < eps1 && std::abs(now[k] - before[k]) < eps2)
      dropped.push_back(static_cast<int>(k));
    else
      kept.push_back(static_cast<int>(k));
  }
  return {kept, dropped};
}

/// Hamiltonian, ansatz pieces and observables for one closed-shell system.
struct UccsdSystem {
  SpinOrbitalConvention conv{0};
  int n_occ = 0;
  QubitOperator hamiltonian;
  std::vector<Excitation> excitations;
  ParameterMap map;
  Statevector reference;
  CompiledOperator s_squared;

  UccsdProblem problem(const VqeOptions& opts) const { return problem_for(excitations, map, opts); }

  UccsdProblem problem_for(std::vector<Excitation> exc, ParameterMap m, const VqeOptions& opts) const {
    return {CompiledOperator(hamiltonian), UccsdAnsatz(std::move(exc), std::move(m)), reference, opts.gradient,
            opts.fd_step};
  }
};

inline UccsdSystem build_system(const IntegralSet& ints, bool spin_adaptation) {
  require_closed_shell(ints, "build_system");
  if (2 * ints.n_spatial() > Statevector::kMaxQubits)
    throw CapacityError("build_system: " + std::to_string(2 * ints.n_spatial()) + " qubits exceed the " +
                        std::to_string(Statevector::kMaxQubits) + "-qubit statevector limit");
  UccsdSystem sys;
  sys.conv = SpinOrbitalConvention{ints.n_spatial()};
  sys.n_occ = ints.n_occupied();
  sys.hamiltonian = build_qubit_hamiltonian(ints);
  sys.excitations = enumerate_excitations(sys.n_occ, ints.n_spatial() - sys.n_occ);
  sys.map = spin_adaptation ? spin_adapt(sys.excitations, sys.conv)
                            : ParameterMap::identity(static_cast<int>(sys.excitations.size()));
  sys.reference = hartree_fock_state(sys.conv, sys.n_occ);
  sys.s_squared = CompiledOperator(s_squared_operator(sys.conv));
  return sys;
}

inline Objective make_objective(const UccsdProblem& problem) {
  return [&problem](std::span<const double> theta, std::vector<double>* gradient) {
    if (!gradient) return problem.energy(theta);
    auto [e, g] = energy_and_gradient(problem, theta);
    *gradient = std::move(g);
    return e;
  };
}

namespace detail {

inline void append_trace(VqeTrace& into, const VqeTrace& from, const std::vector<int>& full_index, int n_full) {
  for (std::size_t k = 1; k < from.iterates.size(); ++k) {
    Iterate it = from.iterates[k];
    std::vector<double> full(n_full, 0.0);
    for (std::size_t m = 0; m < full_index.size(); ++m) full[full_index[m]] = it.theta[m];
    it.theta = std::move(full);
    into.iterates.push_back(std::move(it));
  }
  into.converged = from.converged;
  into.termination = from.termination;
}

}  // namespace detail

/**
 * UCCSD-VQE from theta = 0 with optional spin adaptation and one-shot
 * small-amplitude filtering after kappa iterations. Filtered parameters and
 * the excitations that depend only on them are removed, and the remaining
 * parameters are warm-started from their iteration-kappa values.
 */
inline VqeResult run_uccsd_vqe(const IntegralSet& ints, const VqeOptions& options) {
  options.validate();
  const auto start = std::chrono::steady_clock::now();
  const UccsdSystem sys = build_system(ints, options.use_spin_adaptation);
  const UccsdProblem full = sys.problem(options);
  const int n_full = full.n_parameters();
  const MinimizeOptions mopts{options.energy_tol, options.max_iterations};

  VqeResult res;
  res.n_params_initial = n_full;
  std::vector<int> kept(n_full);
  std::iota(kept.begin(), kept.end(), 0);

  // Filtering happens at most once; if it drops nothing the run simply continues.
  bool filter_done = !options.use_saf;
  IterationHook hook = [&](const VqeTrace& tr) {
    if (filter_done || tr.n_iterations() < options.kappa) return true;
    filter_done = true;
    auto [k, d] = saf_filter(tr, options.kappa, options.eps1, options.eps2);
    if (d.empty()) return true;
    kept = std::move(k);
    res.dropped_indices = std::move(d);
    return false;
  };
  VqeTrace trace = minimize(make_objective(full), std::vector<double>(n_full, 0.0), mopts, hook, 0, start);

  if (!res.dropped_indices.empty()) {
    auto [reduced_map, rows] = sys.map.restrict_to(kept);
    std::vector<Excitation> exc;
    exc.reserve(rows.size());
    for (int r : rows) exc.push_back(sys.excitations[r]);
    const UccsdProblem reduced = sys.problem_for(std::move(exc), std::move(reduced_map), options);
    std::vector<double> warm(kept.size());
    for (std::size_t m = 0; m < kept.size(); ++m) warm[m] = trace.last().theta[kept[m]];
    MinimizeOptions ropts = mopts;
    ropts.max_iterations = std::max(1, options.max_iterations - trace.n_iterations());
    const VqeTrace rest = minimize(make_objective(reduced), warm, ropts, {}, trace.last().iteration, start);
    trace.events.push_back({trace.last().iteration, res.dropped_indices, rest.iterates.front().energy});
    detail::append_trace(trace, rest, kept, n_full);
    res.n_params_final = static_cast<int>(kept.size());
  } else {
    res.n_params_final = n_full;
  }

  res.energy = trace.last().energy;
  res.theta_final = trace.last().theta;
  res.n_iterations = trace.n_iterations();
  res.converged = trace.converged;
  res.s_squared_final = expectation(full.ansatz.prepare(full.reference, res.theta_final), sys.s_squared);
  res.trace = std::move(trace);
  res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace uccvqe
