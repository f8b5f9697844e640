#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dcatight/splitting.hpp"

namespace dcatight {

using Vector = Eigen::VectorXd;

struct DcOracles {
  std::function<Vector(const Vector&)> subgrad_f2;
  // Returns a minimizer of f1(w) - <g, w>, i.e. an element of the conjugate subdifferential at g.
  std::function<Vector(const Vector&)> conj_step_f1;
  std::function<double(const Vector&)> eval_f1;
  std::function<double(const Vector&)> eval_f2;
  // Only queried at x0; later g1 is the previous g2.
  std::function<Vector(const Vector&)> subgrad_f1;
};

struct DcaTrajectory {
  std::vector<Vector> points;
  std::vector<Vector> g1;
  std::vector<Vector> g2;
  std::vector<double> residual_sq;
  std::vector<double> objective;
  std::vector<double> min_residual_sq;
  std::vector<double> step_norms;  // ||x^k - x^{k+1}||^2, one per step

  std::size_t steps() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

struct RunOptions {
  std::optional<double> stop_tol;  // stop once residual_sq <= stop_tol
  bool expect_descent = false;     // set when mu1 + mu2 >= 0; an increase then means a bad oracle
};

DcaTrajectory run_dca(const DcOracles& oracles, const Vector& x0, std::size_t N, const RunOptions& opts = {});

// 1e-9 absolute plus 1e-12 relative to |F(x)|.
double default_tolerance(double F_x) noexcept;

struct StepCheck {
  double slack = 0.0;
  bool holds = false;
};

StepCheck check_one_step(const Splitting& s, double F_x, double F_xplus, double G_sq, double Gplus_sq,
                         double tol);

struct BoundCheck {
  bool holds = true;
  double worst_slack = 0.0;  // smallest slack over both sides and all steps
};

BoundCheck check_step_bounds(const Splitting& s, const DcaTrajectory& traj, double tol = 1e-9);

struct Triplet {
  Vector x;
  Vector g;
  double f = 0.0;
};

struct InterpolationResult {
  bool ok = true;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  double worst_violation = 0.0;  // minimum slack over ordered pairs; negative means violated
};

// Slack of the pairwise interpolation inequality for F_{mu,L} written for the ordered pair (i, j).
double interpolation_slack(const Triplet& ti, const Triplet& tj, double mu, ExtReal L);

InterpolationResult interpolation_check(const std::vector<Triplet>& triplets, double mu, ExtReal L, double tol);
InterpolationResult interpolation_check_serial(const std::vector<Triplet>& triplets, double mu, ExtReal L,
                                               double tol);

}  // namespace dcatight
