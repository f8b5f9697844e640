#include <doctest.h>

#include <cmath>
#include <optional>

#include "dcatight/error.hpp"
#include "dcatight/regimes.hpp"
#include "dcatight/sampling.hpp"

using namespace dcatight;

namespace {

double r(double x) { return x == 0.0 ? kInf : 1.0 / x; }
double r(ExtReal x) { return x.is_inf() ? 0.0 : r(x.value()); }

// Decision-tree reading of the regime table with the root split on the sign of B taken
// in the direction the proofs use. Returns nothing when the point sits within `gap` of a split.
std::optional<Regime> tree_oracle(const Splitting& s, double gap) {
  const double mu1 = s.mu1(), mu2 = s.mu2();
  const double L1 = s.L1().value(), L2 = s.L2().value();
  if (mu1 == 0.0 && mu2 == 0.0) return Regime::Degenerate;
  auto near = [gap](double a, double b) {
    if (std::isinf(a) && std::isinf(b)) return true;
    return std::abs(a - b) <= gap * std::max({1.0, std::abs(a), std::abs(b)});
  };
  if (mu2 < 0.0) {
    // f2 concave: the p4 row with L2 <= 0.
    if (near(L2, 0.0)) return std::nullopt;
    if (L2 < 0.0) return Regime::P4;
    const double B = r(mu1) + r(mu2) + r(s.L2());
    if (near(B, 0.0)) return std::nullopt;
    if (B > 0.0) return Regime::P4;
  }
  if (near(L2, mu1)) return std::nullopt;
  if (L2 <= mu1) return Regime::P5;
  if (near(L2, L1)) return std::nullopt;
  if (L2 > L1) {
    if (mu2 < 0.0) return Regime::P3;
    if (near(L1, mu2)) return std::nullopt;
    return L1 <= mu2 ? Regime::P6 : Regime::P2;
  }
  if (mu2 >= 0.0) return Regime::P1;
  const double E = (L2 + mu2) / (L1 * L2) * (L2 - L1) / (-mu2) + r(mu1) - r(s.L1());
  if (near(E, 0.0)) return std::nullopt;
  return E > 0.0 ? Regime::P3 : Regime::P1;
}

}  // namespace

TEST_CASE("regime names round-trip") {
  for (Regime g : kAllRegimes) CHECK(regime_from_string(to_string(g)) == g);
  CHECK_FALSE(regime_from_string("p7"));
}

TEST_CASE("hand-evaluated coefficients") {
  SUBCASE("both convex, L2 >= L1: p2") {
    const RegimeReport rep = classify(validate_splitting(1.5, 2.0, 1.0, 2.5));
    CHECK(rep.regime == Regime::P2);
    // sigma = (1/2)(1 + (1/2 - 1/2.5)/(1 - 1/2.5)), sigma_plus = (1/2)(2 - 1)/(2.5 - 1)
    CHECK(rep.sigma == doctest::Approx(0.5 * (1.0 + 0.1 / 0.6)));
    CHECK(rep.sigma_plus == doctest::Approx(1.0 / 3.0));
    CHECK(rep.p == doctest::Approx(0.9166666667).epsilon(1e-9));
  }
  SUBCASE("weakly convex f2 with E <= 0: p1") {
    const RegimeReport rep = classify(validate_splitting(0.1, 2.0, -0.01, 0.5));
    CHECK(rep.regime == Regime::P1);
    CHECK(rep.sigma == doctest::Approx(2.0 * 0.4 / 1.9));
    CHECK(rep.sigma_plus == doctest::Approx(2.0 * (1.0 + 1.5 / 9.5)));
    CHECK(rep.p == doctest::Approx(2.7368421053));
    REQUIRE(rep.E);
    CHECK(*rep.E <= 0.0);
  }
  SUBCASE("nonsmooth f1 collapses p1 and p5") {
    const RegimeReport rep = classify(validate_splitting(1.0, kInf, 0.0, 1.0));
    CHECK(rep.regime == Regime::P1);
    CHECK(rep.sigma == 0.0);
    CHECK(rep.p == doctest::Approx(2.0));  // (L2 + mu1) / L2^2
  }
  SUBCASE("degenerate mu1 = mu2 = 0") {
    const RegimeReport rep = classify(validate_splitting(0.0, 1.0, 0.0, 1.0));
    CHECK(rep.regime == Regime::Degenerate);
    CHECK(rep.p == doctest::Approx(2.0));
  }
  SUBCASE("B <= 0 and L2 > L1: p3") {
    const Splitting s = validate_splitting(2.0, 2.5, -1.0, 3.0);
    const RegimeReport rep = classify(s);
    CHECK(rep.regime == Regime::P3);
    const double B = 0.5 - 1.0 + 1.0 / 3.0;
    CHECK(rep.B == doctest::Approx(B));
    CHECK(rep.sigma == doctest::Approx(0.4 * B / (B - 0.4)));
    CHECK(rep.sigma_plus == doctest::Approx(0.5));
  }
  SUBCASE("B > 0 with mu2 < 0: p4") {
    const RegimeReport rep = classify(validate_splitting(1.0, 4.0, -0.9, 3.0));
    CHECK(rep.regime == Regime::P4);
    CHECK(rep.B > 0.0);
    CHECK(rep.sigma == 0.0);
    CHECK(rep.sigma_plus == doctest::Approx(0.1 / 0.81));
  }
  SUBCASE("F strongly convex: p5") {
    const RegimeReport rep = classify(validate_splitting(1.0, 4.0, 0.3, 0.8));
    CHECK(rep.regime == Regime::P5);
    CHECK(rep.sigma_plus == doctest::Approx((1.0 + 1.0 / 0.8) / 0.8));
  }
  SUBCASE("F concave: p6 is flagged") {
    const RegimeReport rep = classify(validate_splitting(0.5, 1.0, 2.0, 3.0));
    CHECK(rep.regime == Regime::P6);
    CHECK(rep.concave_unbounded);
    CHECK(rep.sigma == doctest::Approx((1.0 + 2.0) / 1.0));
    CHECK(rep.sigma_plus == 0.0);
  }
}

TEST_CASE("E is only defined for negative mu2") {
  CHECK_FALSE(boundary_E(validate_splitting(1.0, 3.0, 0.5, 2.0)));
  CHECK(boundary_E(validate_splitting(1.0, 3.0, -0.5, 2.0)));
}

TEST_CASE("E reduces to B when f1 is nonsmooth") {
  const Splitting s = validate_splitting(1.0, kInf, -0.4, 2.0);
  REQUIRE(boundary_E(s));
  CHECK(*boundary_E(s) == doctest::Approx(threshold_B(s)));
}

TEST_CASE("classification errors") {
  CHECK_THROWS_AS(classify(validate_splitting(1.0, kInf, 0.5, kInf)), Error);
  CHECK_THROWS_AS(classify(validate_splitting(0.5, 2.0, -0.7, 1.0, DecreaseCheck::Allow)), Error);
  try {
    (void)classify(validate_splitting(1.0, kInf, 0.5, kInf));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideAllRegimes);
  }
}

TEST_CASE("classifier agrees with an independent decision tree away from boundaries") {
  int compared = 0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    Rng rng = sample_rng(99, i);
    const Splitting s = random_splitting(rng);
    if (s.L1().is_inf() && s.L2().is_inf()) continue;
    const auto expected = tree_oracle(s, 1e-9);
    if (!expected) continue;
    const RegimeReport rep = classify(s);
    INFO("mu1=" << s.mu1() << " L1=" << s.L1().value() << " mu2=" << s.mu2() << " L2=" << s.L2().value());
    CHECK(rep.regime == *expected);
    CHECK(rep.sigma >= 0.0);
    CHECK(rep.sigma_plus >= 0.0);
    ++compared;
  }
  CHECK(compared > 15000);
}

TEST_CASE("each reported regime contains its point") {
  for (std::uint64_t i = 0; i < 5000; ++i) {
    Rng rng = sample_rng(5, i);
    const Splitting s = random_splitting(rng);
    if (s.L1().is_inf() && s.L2().is_inf()) continue;
    CHECK(in_domain(classify(s).regime, s));
  }
}

TEST_CASE("contour grid") {
  const GridAxis mu2{-1.0, 1.0, 3}, L2{0.5, 3.0, 3};
  const auto cells = contour_grid(1.0, 2.0, mu2, L2);
  REQUIRE(cells.size() == 9);
  CHECK(cells[0].mu2 == -1.0);
  CHECK(cells[0].L2 == 0.5);
  CHECK(cells[1].L2 == 1.75);
  CHECK_FALSE(cells[0].regime);  // mu1 + mu2 = 0
  CHECK_FALSE(cells[6].regime);  // mu2 > L2
  REQUIRE(cells[5].regime);
  CHECK(*cells[5].regime == Regime::P2);

  CHECK_THROWS_AS(contour_grid(1.0, 2.0, GridAxis{0.0, 1.0, 0}, L2), Error);
  CHECK_THROWS_AS(contour_grid(1.0, 2.0, GridAxis{1.0, 0.0, 4}, L2), Error);
}

TEST_CASE("grid axis endpoints are exact") {
  const GridAxis a{-0.3, 0.7, 11};
  CHECK(a.at(0) == -0.3);
  CHECK(a.at(10) == 0.7);
  CHECK(GridAxis{2.0, 5.0, 1}.at(0) == 2.0);
}
