#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dcatight/error.hpp"
#include "dcatight/piecewise_quadratic.hpp"

using namespace dcatight;

namespace {

// |x| smoothed: curvature 1 on [-1, 1], flat outside.
PiecewiseQuadratic1D huber() {
  return PiecewiseQuadratic1D::from_curvatures({-1.0, 1.0}, {0.0, 1.0, 0.0}, 0.0, 0.0, 0.0);
}

}  // namespace

TEST_CASE("from_curvatures integrates to a C1 function") {
  const auto f = huber();
  CHECK(f.value(0.0) == 0.0);
  CHECK(f.value(0.5) == doctest::Approx(0.125));
  CHECK(f.value(3.0) == doctest::Approx(2.5));
  CHECK(f.value(-3.0) == doctest::Approx(2.5));
  CHECK(f.derivative(2.0) == doctest::Approx(1.0));
  CHECK(f.derivative(-0.25) == doctest::Approx(-0.25));
  CHECK(f.continuity_defect() <= 1e-12);
  CHECK(f.min_curvature() == 0.0);
  CHECK(f.max_curvature() == 1.0);
  CHECK(f.in_class(0.0, 1.0));
  CHECK_FALSE(f.in_class(0.1, 1.0));
  CHECK_FALSE(f.in_class(0.0, 0.9));
  CHECK(f.in_class(0.0, kInf));
}

TEST_CASE("values match a direct integration of the curvature") {
  const std::vector<double> breaks{-1.3, 0.2, 0.9, 2.0};
  const std::vector<double> curv{0.5, 3.0, -0.2, 1.1, 0.4};
  const auto f = PiecewiseQuadratic1D::from_curvatures(breaks, curv, 0.4, 1.7, -0.6);
  // Reference: march from x_ref in small steps that never straddle a breakpoint, using the
  // exact constant-curvature update on each step.
  auto curvature_at = [&](double x) {
    std::size_t k = 0;
    while (k < breaks.size() && x > breaks[k]) ++k;
    return curv[k];
  };
  for (double target : {-2.0, -0.5, 1.5, 3.0}) {
    std::vector<double> stops{0.4};
    for (double b : breaks)
      if ((b - 0.4) * (target - b) > 0.0) stops.push_back(b);
    if (target < 0.4) std::sort(stops.begin() + 1, stops.end(), std::greater<>());
    stops.push_back(target);
    double g = -0.6, v = 1.7;
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
      const int n = 1000;
      const double h = (stops[s + 1] - stops[s]) / n;
      for (int i = 0; i < n; ++i) {
        const double c = curvature_at(stops[s] + (i + 0.5) * h);
        v += g * h + 0.5 * c * h * h;
        g += c * h;
      }
    }
    CHECK(f.value(target) == doctest::Approx(v).epsilon(1e-11));
    CHECK(f.derivative(target) == doctest::Approx(g).epsilon(1e-11));
  }
}

TEST_CASE("inverse derivative") {
  const auto f = PiecewiseQuadratic1D::from_curvatures({-1.0, 1.0}, {0.5, 2.0, 0.25}, 0.0, 0.0, 0.0);
  for (double x : {-5.0, -1.0, -0.3, 0.0, 0.7, 1.0, 4.0}) CHECK(f.inverse_derivative(f.derivative(x)) == doctest::Approx(x));
  // On a flat end piece the slope is attained on a half-line; its left end is returned,
  // and slopes beyond the plateau are not attained at all.
  CHECK(huber().inverse_derivative(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(huber().inverse_derivative(1.5), Error);
  // A decreasing derivative is not invertible either.
  const auto g = PiecewiseQuadratic1D::from_curvatures({0.0}, {1.0, -1.0}, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(g.inverse_derivative(0.1), Error);
}

TEST_CASE("piece lookup at breakpoints") {
  const auto f = huber();
  CHECK(f.piece_index(-2.0) == 0);
  CHECK(f.piece_index(0.0) == 1);
  CHECK(f.piece_index(5.0) == 2);
  // Both neighbours agree on value at a breakpoint.
  const auto pieces = f.pieces();
  CHECK(pieces[0].value(-1.0) == doctest::Approx(pieces[1].value(-1.0)).epsilon(1e-12));
  CHECK(pieces[1].slope(1.0) == doctest::Approx(pieces[2].slope(1.0)).epsilon(1e-12));
}

TEST_CASE("construction is validated") {
  CHECK_THROWS_AS(PiecewiseQuadratic1D({1.0, 0.0}, {{}, {}, {}}), Error);
  CHECK_THROWS_AS(PiecewiseQuadratic1D({0.0}, {{}}), Error);
  CHECK_THROWS_AS(PiecewiseQuadratic1D::from_curvatures({0.0, 0.0}, {1.0, 1.0, 1.0}, 0.0, 0.0, 0.0), Error);
  CHECK_NOTHROW(PiecewiseQuadratic1D({}, {QuadraticPiece{1.0, 0.0, 0.0, 0.0}}));
}
