#pragma once

#include <cstddef>
#include <vector>

#include "dcatight/dca_engine.hpp"
#include "dcatight/piecewise_quadratic.hpp"
#include "dcatight/regimes.hpp"

namespace dcatight {

// f1(x0) is always f2_0 + delta. g0 is g2(x0) for p1 and g1(x0) for p2.
struct WorstCaseAnchors {
  double x0 = 0.0;
  double f2_0 = 0.0;
  double g0 = 0.0;
};

struct WorstCaseInstance {
  PiecewiseQuadratic1D f1;
  PiecewiseQuadratic1D f2;
  Splitting splitting;
  Regime regime;
  std::size_t N = 0;
  double delta = 0.0;
  double p = 0.0;
  double U = 0.0;
  std::vector<double> x_iters;
  std::vector<double> xbar;
  double predicted_min_residual_sq = 0.0;  // 2 delta / (p N)
};

WorstCaseInstance instance_p1(const Splitting& s, double delta, std::size_t N, const WorstCaseAnchors& anchors = {});
WorstCaseInstance instance_p2(const Splitting& s, double delta, std::size_t N, const WorstCaseAnchors& anchors = {});

DcOracles as_oracles(const WorstCaseInstance& inst);

// Triplets (x, f'(x), f(x)) at the predicted iterates and at every breakpoint.
std::vector<Triplet> sample_triplets(const PiecewiseQuadratic1D& f, const std::vector<double>& extra_points);

}  // namespace dcatight
