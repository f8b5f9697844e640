#include <doctest.h>

#include <cstring>

#include "dcatight/dca_engine.hpp"
#include "dcatight/rates_shift.hpp"
#include "dcatight/regimes.hpp"
#include "dcatight/worstcase.hpp"

using namespace dcatight;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("contour grids match the serial sweep bit for bit") {
  for (double L1 : {3.0, kInf}) {
    const GridAxis mu2{-2.0, 2.0, 101};
    const GridAxis L2{-1.0, 4.0, 97};
    const auto par = contour_grid(1.0, L1, mu2, L2);
    const auto ser = contour_grid_serial(1.0, L1, mu2, L2);
    REQUIRE(par.size() == ser.size());
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].regime == ser[i].regime);
      CHECK(same_bits(par[i].p, ser[i].p));
      CHECK(same_bits(par[i].sigma, ser[i].sigma));
      CHECK(same_bits(par[i].sigma_plus, ser[i].sigma_plus));
      feasible += par[i].regime.has_value();
    }
    CHECK(feasible > 0);
  }
}

TEST_CASE("shift profiles match the serial sweep bit for bit") {
  const Splitting s = validate_splitting(2.99, 4.0, -2.9, 3.0);
  const ShiftInterval iv = feasible_shift_interval(s);
  std::vector<double> lambdas;
  for (int i = 0; i < 4000; ++i) lambdas.push_back(iv.lo + (iv.hi - iv.lo) * i / 4000.0);
  const auto par = shift_profile(s, lambdas);
  const auto ser = shift_profile_serial(s, lambdas);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(same_bits(par[i].lambda, ser[i].lambda));
    CHECK(same_bits(par[i].p, ser[i].p));
    CHECK(par[i].regime == ser[i].regime);
  }
}

TEST_CASE("interpolation checks agree with the serial scan") {
  std::vector<Triplet> ts;
  for (int i = 0; i < 300; ++i) {
    const double x = -3.0 + 0.02 * i;
    ts.push_back({Vector::Constant(1, x), Vector::Constant(1, 2.0 * x), x * x});
  }
  for (double mu : {1.0, 2.0, 2.5}) {
    const auto par = interpolation_check(ts, mu, 3.0, 1e-12);
    const auto ser = interpolation_check_serial(ts, mu, 3.0, 1e-12);
    CHECK(par.ok == ser.ok);
    CHECK(same_bits(par.worst_violation, ser.worst_violation));
    CHECK(par.worst_i == ser.worst_i);
    CHECK(par.worst_j == ser.worst_j);
  }
  CHECK(interpolation_check(ts, 2.0, 2.0, 1e-12).ok);
  CHECK_FALSE(interpolation_check(ts, 2.5, 3.0, 1e-12).ok);
}
