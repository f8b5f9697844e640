#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dcatight/dca_engine.hpp"
#include "dcatight/error.hpp"

using namespace dcatight;

namespace {

// f1 = a1/2 x^2 + b1 x, f2 = a2/2 x^2 + b2 x in one dimension.
DcOracles quadratic_pair(double a1, double b1, double a2, double b2) {
  DcOracles o;
  o.subgrad_f2 = [=](const Vector& x) -> Vector { return a2 * x + Vector::Constant(x.size(), b2); };
  o.conj_step_f1 = [=](const Vector& g) -> Vector { return (g - Vector::Constant(g.size(), b1)) / a1; };
  o.eval_f1 = [=](const Vector& x) { return 0.5 * a1 * x.squaredNorm() + b1 * x.sum(); };
  o.eval_f2 = [=](const Vector& x) { return 0.5 * a2 * x.squaredNorm() + b2 * x.sum(); };
  o.subgrad_f1 = [=](const Vector& x) -> Vector { return a1 * x + Vector::Constant(x.size(), b1); };
  return o;
}

Vector v1(double x) { return Vector::Constant(1, x); }

// Triplets of f(x) = mu/2 x^2 + (L - mu) 4 log(1 + e^x), whose curvature ranges over (mu, L].
std::vector<Triplet> softplus_triplets(double mu, double L, std::size_t m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Triplet> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = u(rng);
    const double sig = 1.0 / (1.0 + std::exp(-x));
    out.push_back({v1(x), v1(mu * x + 4.0 * (L - mu) * sig), 0.5 * mu * x * x + 4.0 * (L - mu) * std::log1p(std::exp(x))});
  }
  return out;
}

}  // namespace

TEST_CASE("DCA on a quadratic pair follows the closed-form recursion") {
  const DcaTrajectory t = run_dca(quadratic_pair(2.0, 0.5, 1.0, -0.3), v1(1.0), 5);
  REQUIRE(t.points.size() == 6);
  CHECK(t.steps() == 5);
  double x = 1.0;
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(t.points[k][0] == doctest::Approx(x));
    x = (x - 0.3 - 0.5) / 2.0;
  }
  // g1 at step k is g2 from step k-1.
  for (std::size_t k = 1; k <= 5; ++k) CHECK(t.g1[k][0] == t.g2[k - 1][0]);
  CHECK(t.g1[0][0] == doctest::Approx(2.5));
  for (std::size_t k = 1; k < t.objective.size(); ++k) {
    CHECK(t.objective[k] <= t.objective[k - 1]);
    CHECK(t.min_residual_sq[k] <= t.min_residual_sq[k - 1]);
  }
  CHECK(t.step_norms.size() == 5);
}

TEST_CASE("stopping on a small residual") {
  RunOptions opts;
  opts.stop_tol = 1e-6;
  const DcaTrajectory t = run_dca(quadratic_pair(2.0, 0.0, 1.0, 0.0), v1(1.0), 1000, opts);
  CHECK(t.residual_sq.back() <= 1e-6);
  CHECK(t.steps() < 20);
}

TEST_CASE("oracle failures are reported") {
  DcOracles bad = quadratic_pair(2.0, 0.0, 1.0, 0.0);
  bad.conj_step_f1 = [](const Vector&) { return v1(std::numeric_limits<double>::quiet_NaN()); };
  CHECK_THROWS_AS(run_dca(bad, v1(1.0), 3), Error);

  DcOracles wrong_size = quadratic_pair(2.0, 0.0, 1.0, 0.0);
  wrong_size.subgrad_f2 = [](const Vector&) { return Vector::Zero(2); };
  try {
    (void)run_dca(wrong_size, v1(1.0), 3);
    FAIL("expected OracleFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OracleFailure);
  }

  DcOracles missing = quadratic_pair(2.0, 0.0, 1.0, 0.0);
  missing.eval_f2 = nullptr;
  CHECK_THROWS_AS(run_dca(missing, v1(1.0), 3), Error);
}

TEST_CASE("an objective increase is flagged when descent is expected") {
  // The step oracle ignores its input and jumps uphill.
  DcOracles o = quadratic_pair(2.0, 0.0, 1.0, 0.0);
  o.conj_step_f1 = [](const Vector& g) -> Vector { return Vector::Constant(1, 10.0 + std::abs(g[0])); };
  RunOptions opts;
  opts.expect_descent = true;
  try {
    (void)run_dca(o, v1(1.0), 3, opts);
    FAIL("expected DivergenceDetected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivergenceDetected);
  }
}

TEST_CASE("one-step check on a hand example") {
  // L1 = L2 = 2, mu1 = mu2 = 1: sigma = sigma_plus = 1/2.
  const Splitting s = validate_splitting(1.0, 2.0, 1.0, 2.0);
  const StepCheck c = check_one_step(s, 1.0, 0.25, 1.0, 0.5, 0.0);
  CHECK(c.slack == doctest::Approx(0.75 - 0.25 - 0.125));
  CHECK(c.holds == (c.slack >= 0.0));
}

TEST_CASE("one-step and step-size bounds hold along quadratic runs") {
  const Splitting s = validate_splitting(1.0, 3.0, -0.4, 2.0);
  for (double a1 : {1.0, 2.0, 3.0})
    for (double a2 : {-0.4, 0.5, 2.0}) {
      const DcaTrajectory t = run_dca(quadratic_pair(a1, 0.1, a2, -0.2), v1(1.5), 6);
      for (std::size_t k = 0; k + 1 < t.objective.size(); ++k) {
        const StepCheck c = check_one_step(s, t.objective[k], t.objective[k + 1], t.residual_sq[k],
                                           t.residual_sq[k + 1], default_tolerance(t.objective[k]));
        CHECK(c.holds);
      }
      CHECK(check_step_bounds(s, t).holds);
    }
}

TEST_CASE("interpolation slack by hand") {
  const Triplet a{v1(1.0), v1(2.0), 1.0};
  const Triplet b{v1(0.0), v1(0.0), 0.0};
  // f = x^2 sampled at 0 and 1; mu = 1, L = 3.
  // lhs = 1, |dg|^2/(2L) = 4/6, mu/(2L(L-mu)) |dg - L dx|^2 = 1/12.
  CHECK(interpolation_slack(a, b, 1.0, 3.0) == doctest::Approx(1.0 - 4.0 / 6.0 - 1.0 / 12.0));
  CHECK(interpolation_slack(a, b, 1.0, kInf) == doctest::Approx(0.5));
  CHECK(interpolation_slack(a, b, 2.0, 2.0) == doctest::Approx(0.0));
  CHECK(interpolation_slack(a, b, 1.0, 1.0) < -0.1);
}

TEST_CASE("in-class functions interpolate and out-of-class ones do not") {
  const auto trips = softplus_triplets(-0.5, 2.0, 60, 3);
  const InterpolationResult ok = interpolation_check(trips, -0.5, 2.0, 1e-10);
  CHECK(ok.ok);
  CHECK(ok.worst_violation >= -1e-10);
  CHECK(interpolation_check(trips, -0.5, kInf, 1e-10).ok);

  // Declaring a smaller upper curvature than the function has must fail somewhere.
  CHECK_FALSE(interpolation_check(trips, -0.5, 1.2, 1e-10).ok);
  // Same for a larger lower curvature.
  CHECK_FALSE(interpolation_check(trips, 0.5, 2.0, 1e-10).ok);
}

TEST_CASE("interpolation check reports the worst pair") {
  std::vector<Triplet> trips{{v1(0.0), v1(0.0), 0.0}, {v1(1.0), v1(1.0), 0.5}, {v1(2.0), v1(10.0), 2.0}};
  const InterpolationResult r = interpolation_check(trips, 0.0, 1.0, 1e-12);
  CHECK_FALSE(r.ok);
  CHECK((r.worst_i == 2 || r.worst_j == 2));
  CHECK(r.worst_violation == doctest::Approx(interpolation_slack(trips[r.worst_i], trips[r.worst_j], 0.0, 1.0)));
}

TEST_CASE("interpolation class arguments are validated") {
  const auto trips = softplus_triplets(0.0, 1.0, 4, 1);
  CHECK_THROWS_AS(interpolation_check(trips, 2.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(interpolation_check(trips, -1.0, 0.0, 0.0), Error);
  CHECK(interpolation_check({}, 0.0, 1.0, 0.0).ok);
}

TEST_CASE("parallel and serial interpolation checks agree exactly") {
  const auto trips = softplus_triplets(-0.3, 1.7, 300, 11);
  for (double L : {1.7, 1.0}) {
    const InterpolationResult a = interpolation_check(trips, -0.3, L, 1e-10);
    const InterpolationResult b = interpolation_check_serial(trips, -0.3, L, 1e-10);
    CHECK(a.ok == b.ok);
    CHECK(a.worst_i == b.worst_i);
    CHECK(a.worst_j == b.worst_j);
    CHECK(a.worst_violation == b.worst_violation);
  }
}
