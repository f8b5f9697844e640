#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dcatight/error.hpp"
#include "dcatight/pgd_bridge.hpp"
#include "dcatight/regimes.hpp"

using namespace dcatight;

namespace {

PgdSetting plain(double L, double mu, double gamma) { return {L, mu, 0.0, ExtReal::infinity(), gamma}; }

PgdProblem quadratic_l1(double a, double c, double kappa) {
  PgdProblem prob;
  prob.phi = [a, c](const Vector& x) { return 0.5 * a * x.squaredNorm() + c * x.sum(); };
  prob.phi_grad = [a, c](const Vector& x) -> Vector { return a * x + Vector::Constant(x.size(), c); };
  prob.h = [kappa](const Vector& x) { return kappa * x.lpNorm<1>(); };
  prob.prox_h = [kappa](const Vector& v, double t) { return soft_threshold(v, kappa * t); };
  prob.h_subgrad = [kappa](const Vector& x) -> Vector {
    return x.unaryExpr([kappa](double v) { return kappa * static_cast<double>((v > 0.0) - (v < 0.0)); });
  };
  return prob;
}

}  // namespace

TEST_CASE("curvature map") {
  const Splitting s = pgd_to_dca(plain(1.0, 0.0, 1.0));
  CHECK(s.mu1() == 1.0);
  CHECK(s.L1().is_inf());
  CHECK(s.mu2() == 0.0);
  CHECK(s.L2() == 1.0);

  const Splitting t = pgd_to_dca(plain(1.0, 0.5, 1.5));
  CHECK(t.mu2() == doctest::Approx(-1.0 / 3.0));
  CHECK(t.L2().value() == doctest::Approx(1.0 / 6.0));

  const Splitting u = pgd_to_dca(plain(1.0, -0.2, 0.5));
  CHECK(u.mu2() == doctest::Approx(1.0));
  CHECK(classify(u).regime == Regime::P1);

  const Splitting w = pgd_to_dca({1.0, 0.0, 0.3, 2.0, 0.5});
  CHECK(w.mu1() == doctest::Approx(2.3));
  CHECK(w.L1().value() == doctest::Approx(4.0));
}

TEST_CASE("large stepsizes on a strongly convex phi land in P4") {
  // 2/(L + mu) <= gamma < 2/L
  const Splitting s = pgd_to_dca(plain(1.0, 0.5, 1.9));
  CHECK(s.mu2() < 0.0);
  CHECK(s.L2().value() > 0.0);
  CHECK(classify(s).regime == Regime::P4);
}

TEST_CASE("stepsize validation") {
  CHECK_THROWS_AS(validate_pgd_setting(plain(1.0, 0.0, 2.0)), Error);
  CHECK_THROWS_AS(validate_pgd_setting(plain(1.0, 0.0, 0.0)), Error);
  CHECK_THROWS_AS(validate_pgd_setting(plain(1.0, 1.5, 0.5)), Error);
  CHECK_THROWS_AS(validate_pgd_setting({1.0, 0.0, 0.5, 0.5, 0.5}), Error);
  CHECK_NOTHROW(validate_pgd_setting(plain(1.0, -3.0, 1.99)));
}

TEST_CASE("closed-form sigma_plus by hand") {
  const PgdSigma a = pgd_sigma_plus(1.0, 0.0, 1.0);
  CHECK(a.sigma_plus == doctest::Approx(2.0));
  CHECK(a.branch == SigmaBranch::SmallOrBelowThreshold);

  const PgdSigma b = pgd_sigma_plus(1.0, 0.0, 1.5);
  CHECK(b.B == doctest::Approx(0.0));
  CHECK(b.sigma_plus == doctest::Approx(3.0));

  const PgdSigma c = pgd_sigma_plus(1.0, -1.0, 0.5);
  CHECK(c.sigma_plus == doctest::Approx(0.5 * 2.5 / 2.25));

  const PgdSigma d = pgd_sigma_plus(2.0, -0.5, 0.25);
  CHECK(d.sigma_plus == doctest::Approx(0.25 * 2.125 / 1.265625));

  const PgdSigma e = pgd_sigma_plus(1.0, -0.5, 1.8);
  CHECK(e.branch == SigmaBranch::AboveThreshold);
  CHECK(e.sigma_plus == doctest::Approx(1.8 * 0.2 / 0.64));

  const PgdSigma f = pgd_sigma_plus(1.0, 0.5, 0.5);
  CHECK(f.branch == SigmaBranch::ClassifierFallback);
}

TEST_CASE("rates") {
  CHECK(pgd_rate(plain(1.0, 0.0, 1.0), 10, 1.0) == doctest::Approx(0.05));
  CHECK(pgd_rate(plain(1.0, 0.0, 1.5), 4, 1.0) == doctest::Approx(1.0 / 12.0));
  CHECK(pgd_rate(plain(2.0, -0.5, 0.25), 1, 1.0) == doctest::Approx(1.0 / 0.41975308641975306));
  CHECK_THROWS_AS(pgd_rate(plain(1.0, 0.0, 1.0), 0, 1.0), Error);
}

TEST_CASE("closed form agrees with the classifier for nonpositive mu_phi") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double L = 0.1 + 5.0 * u(rng);
    const double mu = -5.0 * u(rng) * (i % 7 == 0 ? 0.0 : 1.0);
    const double gamma = (0.001 + 1.998 * u(rng)) / L;
    const PgdSigma s = pgd_sigma_plus(L, mu, gamma);
    const double ref = classify(pgd_to_dca(plain(L, mu, gamma))).sigma_plus;
    CHECK(std::abs(s.sigma_plus - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("closed-form branches meet at B = 0") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    // B = 0 with t = gamma L in (1, 2) and s = gamma mu <= 0 means 1/(1 - s) = -1 - 1/(1 - t).
    const double L = 0.2 + 3.0 * u(rng);
    const double t = 1.5 + 0.49 * u(rng);
    const double s = 1.0 + 1.0 / (1.0 + 1.0 / (1.0 - t));
    if (!(s <= 0.0)) continue;
    const double gamma = t / L;
    const double mu = s / gamma;
    const double d1 = 1.0 - s, d2 = 1.0 - t;
    const double first = gamma * (2.0 - s) / (d1 * d1);
    const double second = gamma * (2.0 - t) / (d2 * d2);
    CHECK(std::abs(first - second) <= 1e-9 * first);
    CHECK(std::abs(pgd_sigma_plus(L, mu, gamma).sigma_plus - first) <= 1e-9 * first);
  }
}

TEST_CASE("mu2 is negative exactly for stepsizes above 1/L") {
  for (double g : {0.3, 0.9, 1.0, 1.1, 1.9}) {
    const Splitting s = pgd_to_dca(plain(1.0, -0.4, g));
    CHECK((s.mu2() < 0.0) == (g > 1.0));
  }
}

TEST_CASE("stepsize table cells and their regimes") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const StepsizeCell cells[] = {StepsizeCell::NonconvexSmall, StepsizeCell::NonconvexUnit, StepsizeCell::NonconvexLarge,
                                StepsizeCell::ConvexSmall,    StepsizeCell::ConvexUnit,    StepsizeCell::ConvexLarge,
                                StepsizeCell::StronglySmall,  StepsizeCell::StronglyUnit,  StepsizeCell::StronglyMid,
                                StepsizeCell::StronglyLarge};
  for (StepsizeCell cell : cells) {
    for (int i = 0; i < 1000; ++i) {
      double L = 0.1 + 4.0 * u(rng);
      // gamma L must be exactly one in the unit cells
      if (cell == StepsizeCell::NonconvexUnit || cell == StepsizeCell::ConvexUnit || cell == StepsizeCell::StronglyUnit)
        L = std::ldexp(1.0, static_cast<int>(u(rng) * 6.0) - 3);
      const int kind = static_cast<int>(cell) / 3;
      double mu = kind == 0 ? -4.0 * (0.01 + u(rng)) : (kind == 1 ? 0.0 : L * (0.01 + 0.98 * u(rng)));
      double gamma = 0.0;
      switch (cell) {
        case StepsizeCell::NonconvexSmall:
        case StepsizeCell::ConvexSmall:
        case StepsizeCell::StronglySmall: gamma = (0.01 + 0.98 * u(rng)) / L; break;
        case StepsizeCell::NonconvexUnit:
        case StepsizeCell::ConvexUnit:
        case StepsizeCell::StronglyUnit: gamma = 1.0 / L; break;
        case StepsizeCell::NonconvexLarge:
        case StepsizeCell::ConvexLarge: gamma = (1.01 + 0.98 * u(rng)) / L; break;
        case StepsizeCell::StronglyMid: {
          const double hi = 2.0 / (L + mu);
          gamma = 1.0 / L + (hi - 1.0 / L) * (0.01 + 0.98 * u(rng));
          break;
        }
        case StepsizeCell::StronglyLarge: {
          const double lo = 2.0 / (L + mu);
          gamma = lo + (2.0 / L - lo) * (0.01 + 0.98 * u(rng));
          break;
        }
      }
      const PgdSetting p = plain(L, mu, gamma);
      REQUIRE(stepsize_cell(p) == cell);
      const auto allowed = stepsize_regimes(p);
      const Regime got = classify(pgd_to_dca(p)).regime;
      INFO("cell=" << to_string(cell) << " L=" << L << " mu=" << mu << " gamma=" << gamma);
      CHECK(std::find(allowed.begin(), allowed.end(), got) != allowed.end());
    }
  }
}

TEST_CASE("soft thresholding") {
  Vector v(4);
  v << 1.0, -0.3, 0.1, -2.0;
  const Vector s = soft_threshold(v, 0.5);
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
  CHECK(s[3] == doctest::Approx(-1.5));
}

TEST_CASE("PGD with h = 0 on a quadratic reaches the minimiser in one step") {
  PgdProblem prob = quadratic_l1(1.0, 0.0, 0.0);
  const DcaTrajectory t = run_pgd(prob, Vector::Constant(1, 1.0), 1.0, 1);
  CHECK(t.points[1][0] == doctest::Approx(0.0));
  CHECK(t.residual_sq[1] == doctest::Approx(0.0));
}

TEST_CASE("PGD and its DCA form agree on iterates and residuals") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = -0.2 + 2.2 * u(rng);
    const double c = -1.0 + 2.0 * u(rng);
    const double kappa = 0.5 * u(rng);
    const double L = std::max(a, 0.2);
    const double gamma = (0.01 + 1.98 * u(rng)) / L;
    const PgdProblem prob = quadratic_l1(a, c, kappa);
    const Vector x0 = Vector::Constant(1, -2.0 + 4.0 * u(rng));
    const DcaTrajectory p = run_pgd(prob, x0, gamma, 50);
    const DcaTrajectory d = run_dca(pgd_as_dca(prob, gamma), x0, 50);
    REQUIRE(p.points.size() == d.points.size());
    for (std::size_t k = 0; k < p.points.size(); ++k) {
      CHECK(std::abs(p.points[k][0] - d.points[k][0]) <= 1e-10 * std::max(1.0, std::abs(p.points[k][0])));
      CHECK(std::abs(p.residual_sq[k] - d.residual_sq[k]) <= 1e-10 * std::max(1.0, p.residual_sq[k]));
    }
  }
}

TEST_CASE("missing h subgradient leaves only the first residual undefined") {
  PgdProblem prob = quadratic_l1(1.0, 0.2, 0.1);
  prob.h_subgrad = nullptr;
  const DcaTrajectory t = run_pgd(prob, Vector::Constant(1, 1.0), 0.5, 3);
  CHECK(std::isnan(t.residual_sq[0]));
  CHECK(std::isfinite(t.residual_sq[1]));
  CHECK(std::isfinite(t.min_residual_sq.back()));
}

TEST_CASE("a failing prox is reported") {
  PgdProblem prob = quadratic_l1(1.0, 0.0, 0.1);
  prob.prox_h = [](const Vector& v, double) { return Vector::Constant(v.size(), std::nan("")); };
  try {
    (void)run_pgd(prob, Vector::Constant(1, 1.0), 0.5, 3);
    FAIL("expected ProxFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProxFailure);
  }
}
