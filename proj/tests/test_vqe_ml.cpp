// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "catch.hpp"

#include <random>

#include "fixtures.hpp"
#include "uccvqe/ml.hpp"
#include "uccvqe/vqe.hpp"

using namespace uccvqe;
using Catch::Approx;

namespace {

VqeOptions sa_options(bool saf) {
  VqeOptions o;
  o.use_spin_adaptation = true;
  o.use_saf = saf;
  return o;
}

}  // namespace

TEST_CASE("L-BFGS minimizes a separable quadratic in a few iterations") {
  const Objective f = [](std::span<const double> t, std::vector<double>* g) {
    double e = 0.0;
    if (g) g->assign(t.size(), 0.0);
    for (std::size_t k = 0; k < t.size(); ++k) {
      e += (t[k] - 1.0) * (t[k] - 1.0);
      if (g) (*g)[k] = 2.0 * (t[k] - 1.0);
    }
    return e;
  };
  const VqeTrace tr = minimize(f, std::vector<double>(5, 0.0), {1e-12, 50});
  CHECK(tr.converged);
  CHECK(tr.n_iterations() <= 3);
  for (double x : tr.last().theta) CHECK(x == Approx(1.0).margin(1e-8));
  CHECK(tr.iterates.front().energy == 5.0);
}

TEST_CASE("L-BFGS minimizes the Rosenbrock function") {
  const Objective f = [](std::span<const double> t, std::vector<double>* g) {
    const double x = t[0], y = t[1];
    if (g) *g = {-2.0 * (1.0 - x) - 400.0 * x * (y - x * x), 200.0 * (y - x * x)};
    return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
  };
  MinimizeOptions opts{1e-20, 1000, 1e-10};
  const VqeTrace tr = minimize(f, {-1.2, 1.0}, opts);
  CHECK(tr.last().theta[0] == Approx(1.0).margin(1e-6));
  CHECK(tr.last().theta[1] == Approx(1.0).margin(1e-6));
  for (std::size_t k = 1; k < tr.iterates.size(); ++k) CHECK(tr.iterates[k].energy <= tr.iterates[k - 1].energy);
}

TEST_CASE("minimize reports non-finite objectives and caller stops") {
  const Objective bad = [](std::span<const double>, std::vector<double>*) { return std::nan(""); };
  CHECK_THROWS_AS(minimize(bad, {0.0}), ConvergenceError);

  const Objective quad = [](std::span<const double> t, std::vector<double>* g) {
    if (g) *g = {2.0 * (t[0] - 3.0), 2.0 * (t[1] + 1.0)};
    return (t[0] - 3.0) * (t[0] - 3.0) + (t[1] + 1.0) * (t[1] + 1.0);
  };
  const VqeTrace stopped = minimize(quad, {0.0, 0.0}, {}, [](const VqeTrace& t) { return t.n_iterations() < 1; });
  CHECK(stopped.n_iterations() == 1);
  CHECK_FALSE(stopped.converged);
  CHECK(stopped.termination == "stopped by caller");

  const Objective constant = [](std::span<const double>, std::vector<double>*) { return 2.0; };
  const VqeTrace empty = minimize(constant, {});
  CHECK(empty.converged);
  CHECK(empty.n_iterations() == 0);
}

TEST_CASE("iteration limit") {
  const IntegralSet ints = fixtures::load(fixtures::grid("LiH")[5].fcidump);
  VqeOptions o = sa_options(false);
  o.max_iterations = 2;
  const VqeResult r = run_uccsd_vqe(ints, o);
  CHECK_FALSE(r.converged);
  CHECK(r.n_iterations == 2);
  CHECK(r.trace.termination == "iteration limit reached");
}

TEST_CASE("small-amplitude filter") {
  VqeTrace tr;
  tr.iterates = {{0, {0, 0, 0, 0}, 0, 0}, {1, {0.1, 0.0, 0.3, 2e-5}, 0, 0}, {2, {0.1, 5e-5, 0.3, 2e-5}, 0, 0}};
  auto [kept, dropped] = saf_filter(tr, 2, 1e-4, 1e-5);
  CHECK(kept == std::vector<int>({0, 1, 2}));
  CHECK(dropped == std::vector<int>({3}));

  tr.iterates[2].theta = {0.1, 0.1, 0.1, 0.1};
  std::tie(kept, dropped) = saf_filter(tr, 2, 1e-4, 1e-5);
  CHECK(dropped.empty());
  CHECK(kept.size() == 4);
  CHECK_THROWS_AS(saf_filter(tr, 3, 1e-4, 1e-5), PreconditionError);

  VqeOptions o;
  o.kappa = 1;
  CHECK_THROWS_AS(o.validate(), PreconditionError);
}

TEST_CASE("H2 UCCSD reaches FCI") {
  for (const auto& pt : fixtures::grid("H2")) {
    const IntegralSet ints = fixtures::load(pt.fcidump);
    const VqeResult r = run_uccsd_vqe(ints, VqeOptions{});
    CHECK(r.converged);
    CHECK(r.energy == Approx(pt.meta["e_fci"].get<double>()).margin(1e-8));
    CHECK(r.n_params_initial == 3);
    CHECK(r.s_squared_final == Approx(0.0).margin(1e-8));
  }
}

TEST_CASE("VQE runs are variational, monotone at the end and deterministic") {
  for (const std::string mol : {"LiH", "H4_ring", "H2O"}) {
    const auto pt = fixtures::grid(mol)[4];
    const IntegralSet ints = fixtures::load(pt.fcidump);
    const double e_fci = pt.meta["e_fci"].get<double>();
    const VqeResult a = run_uccsd_vqe(ints, sa_options(true));
    const VqeResult b = run_uccsd_vqe(ints, sa_options(true));
    CHECK(a.converged);
    CHECK(a.energy <= a.trace.iterates[1].energy);
    CHECK(a.n_params_final <= a.n_params_initial);
    CHECK(a.dropped_indices == b.dropped_indices);
    CHECK(a.energy == b.energy);
    CHECK(a.theta_final.size() == static_cast<std::size_t>(a.n_params_initial));
    for (const auto& it : a.trace.iterates) CHECK(it.energy >= e_fci - 1e-10);
    for (int k : a.dropped_indices) CHECK(a.theta_final[k] == 0.0);
    for (std::size_t k = 1; k < a.trace.iterates.size(); ++k)
      CHECK(a.trace.iterates[k].iteration == a.trace.iterates[k - 1].iteration + 1);
  }
}

TEST_CASE("filtering with zero thresholds reproduces the unfiltered trajectory") {
  const IntegralSet ints = fixtures::load(fixtures::grid("LiH")[6].fcidump);
  VqeOptions o = sa_options(true);
  o.eps1 = 0.0;
  o.eps2 = 0.0;
  const VqeResult f = run_uccsd_vqe(ints, o);
  const VqeResult u = run_uccsd_vqe(ints, sa_options(false));
  CHECK(f.dropped_indices.empty());
  REQUIRE(f.trace.iterates.size() == u.trace.iterates.size());
  for (std::size_t k = 0; k < f.trace.iterates.size(); ++k) {
    CHECK(f.trace.iterates[k].energy == u.trace.iterates[k].energy);
    CHECK(f.trace.iterates[k].theta == u.trace.iterates[k].theta);
  }
}

TEST_CASE("warm start keeps the energy at the filtering step") {
  for (const std::string mol : {"LiH", "H2O", "H6"}) {
    for (const auto& pt : fixtures::grid(mol)) {
      const VqeResult r = run_uccsd_vqe(fixtures::load(pt.fcidump), sa_options(true));
      if (r.trace.events.empty()) continue;
      const SafEvent& ev = r.trace.events.front();
      CHECK(ev.iteration == 2);
      CHECK(ev.warm_start_energy <= r.trace.iterates[2].energy + 1e-6);
      CHECK(r.trace.iterates[3].energy <= r.trace.iterates[2].energy + 1e-6);
    }
  }
}

TEST_CASE("amplitude labelling") {
  const std::vector<double> theta{0.5, -0.01, 0.2, 0.0, -0.3, 0.2};
  const AmplitudeSplit f = label_amplitudes(theta, SplitPolicy::fraction(0.35));
  CHECK(f.principal == std::vector<int>({0, 2, 4}));
  CHECK(f.auxiliary == std::vector<int>({1, 3, 5}));
  CHECK(f.fraction == 0.5);
  CHECK(f.epsilon == 0.2);

  const AmplitudeSplit c = label_amplitudes(theta, SplitPolicy::cutoff(0.2));
  CHECK(c.principal == std::vector<int>({0, 2, 4, 5}));
  CHECK_FALSE(c.degenerate);

  CHECK(label_amplitudes(theta, SplitPolicy::fraction(1.0)).degenerate);
  CHECK_THROWS_AS(label_amplitudes(theta, SplitPolicy::cutoff(1.0)), PreconditionError);
  CHECK_THROWS_AS(label_amplitudes(theta, SplitPolicy::fraction(1.5)), PreconditionError);
  CHECK_THROWS_AS(label_amplitudes(std::vector<double>{}, SplitPolicy::fraction(0.5)), PreconditionError);
}

TEST_CASE("kernel ridge regression oracles") {
  SECTION("linear targets are reproduced") {
    Eigen::MatrixXd X(4, 2);
    X << 1, 0, 0, 1, 1, 1, 2, -1;
    const RegressionModel m = fit(X, X, Kernel::linear(), 1e-12);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      CHECK((predict(m, X.row(i).transpose()) - X.row(i).transpose()).norm() < 1e-8);
    const Eigen::Vector2d x(0.3, -0.7);
    CHECK((predict(m, 2.5 * x) - 2.5 * predict(m, x)).norm() < 1e-12);
  }
  SECTION("primal and dual forms agree") {
    Eigen::MatrixXd X(3, 2), Y(3, 1);
    X << 1, 2, -0.5, 1, 3, 0.25;
    Y << 1, -2, 0.5;
    const double lambda = 0.3;
    const RegressionModel m = fit(X, Y, Kernel::linear(), lambda);
    const Eigen::MatrixXd beta =
        (X.transpose() * X + lambda * Eigen::MatrixXd::Identity(2, 2)).ldlt().solve(X.transpose() * Y);
    for (const Eigen::Vector2d x : {Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(-3, 4), Eigen::Vector2d(1, 2)})
      CHECK(std::abs(predict(m, x)[0] - x.dot(beta.col(0))) < 1e-12);
  }
  SECTION("a cubic kernel recovers a cubic target") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::Vector2d w(0.7, -1.3);
    Eigen::MatrixXd X(20, 2), Y(20, 1);
    for (Eigen::Index i = 0; i < 20; ++i) {
      X.row(i) << u(rng), u(rng);
      Y(i, 0) = std::pow(X.row(i).dot(w), 3);
    }
    const RegressionModel m = fit(X, Y, Kernel::polynomial(1.0, 0.0, 3), 1e-12);
    for (int t = 0; t < 10; ++t) {
      const Eigen::Vector2d x(u(rng), u(rng));
      const double y = std::pow(x.dot(w), 3);
      CHECK(std::abs(predict(m, x)[0] - y) <= 1e-6 * std::max(std::abs(y), 1e-2));
    }
  }
  SECTION("regularization shrinks predictions") {
    Eigen::MatrixXd X(3, 1), Y(3, 1);
    X << 1, 2, 3;
    Y << 2, 4, 6;
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.5);
    double prev = std::abs(predict(fit(X, Y, Kernel::linear(), 1e-8), x)[0]);
    for (double lambda : {1.0, 10.0, 1e3, 1e6}) {
      const double p = std::abs(predict(fit(X, Y, Kernel::linear(), lambda), x)[0]);
      CHECK(p < prev);
      prev = p;
    }
    CHECK(prev < 1e-4);
  }
  SECTION("kernels are symmetric and the Jacobian matches differences") {
    const Kernel k = Kernel::polynomial(0.5, 1.0, 3);
    const Eigen::Vector3d a(0.2, -1, 0.5), b(1, 0.3, -0.4);
    CHECK(std::abs(k(a, b) - k(b, a)) < 1e-12);
    Eigen::MatrixXd X(5, 3), Y(5, 2);
    X.setRandom();
    Y.setRandom();
    const RegressionModel m = fit(X, Y, k, 1e-3, true);
    const Eigen::MatrixXd j = predict_jacobian(m, a);
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector3d h = Eigen::Vector3d::Zero();
      h[c] = 1e-6;
      const Eigen::VectorXd fd = (predict(m, a + h) - predict(m, a - h)) / 2e-6;
      CHECK((j.col(c) - fd).norm() < 1e-6);
    }
  }
  SECTION("invalid fits") {
    Eigen::MatrixXd X(2, 1), Y(3, 1);
    CHECK_THROWS_AS(fit(X, Y, Kernel::linear(), 1e-6), PreconditionError);
    CHECK_THROWS_AS(fit(X, X, Kernel::linear(), 0.0), PreconditionError);
    const Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2, 1);
    CHECK_THROWS_AS(fit(Z, Z, Kernel::polynomial(1.0, -1.0, 1), 1e-6), IllConditionedError);
  }
}

TEST_CASE("ML loop with an empty auxiliary set is the plain spin-adapted run") {
  const IntegralSet ints = fixtures::load(fixtures::grid("LiH")[3].fcidump);
  MlOptions ml;
  ml.split = SplitPolicy::fraction(1.0);
  const MlResult r = run_ml_assisted_vqe(ints, sa_options(false), ml);
  const VqeResult plain = run_uccsd_vqe(ints, sa_options(false));
  REQUIRE(r.vqe.trace.iterates.size() == plain.trace.iterates.size());
  for (std::size_t k = 0; k < plain.trace.iterates.size(); ++k)
    CHECK(r.vqe.trace.iterates[k].energy == plain.trace.iterates[k].energy);
  CHECK(r.vqe.energy == plain.energy);
  REQUIRE(r.notices.size() == 1);
  CHECK(r.notices[0].find("degenerate") != std::string::npos);
  CHECK(r.models.empty());
}

TEST_CASE("ML-assisted VQE on LiH") {
  const auto pt = fixtures::grid("LiH")[5];
  const IntegralSet ints = fixtures::load(pt.fcidump);
  const MlResult r = run_ml_assisted_vqe(ints, sa_options(false), MlOptions{});
  const VqeResult saf = run_uccsd_vqe(ints, sa_options(true));
  CHECK(std::abs(r.vqe.energy - saf.energy) <= 5e-4);
  CHECK(r.vqe.energy >= pt.meta["e_fci"].get<double>() - 1e-10);
  REQUIRE_FALSE(r.models.empty());
  REQUIRE_FALSE(r.splits.empty());
  CHECK(r.splits[0].principal.size() == 16);
  CHECK(r.vqe.n_params_final == 16);

  const UccsdSystem sys = build_system(ints, true);
  const UccsdProblem prob = sys.problem(VqeOptions{});
  for (const auto& it : r.vqe.trace.iterates) CHECK(prob.energy(it.theta) == Approx(it.energy).margin(1e-12));

  const auto j = to_json(r.models[0]);
  for (const char* key : {"kernel", "lambda", "X", "A", "x_mean", "x_scale", "y_mean", "y_scale"})
    CHECK(j.contains(key));
  CHECK(j["kernel"]["kind"] == "poly");
}
