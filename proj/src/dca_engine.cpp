#include "dcatight/dca_engine.hpp"

#include <algorithm>
#include <cmath>

#include "dcatight/error.hpp"
#include "dcatight/regimes.hpp"

namespace dcatight {

namespace {

void require_finite(const Vector& v, std::size_t dim, const char* what, std::size_t k) {
  if (static_cast<std::size_t>(v.size()) != dim || !v.allFinite())
    throw Error(ErrorCode::OracleFailure,
                std::string(what) + " returned a non-finite or wrongly sized vector at step " + std::to_string(k));
}

}  // namespace

DcaTrajectory run_dca(const DcOracles& o, const Vector& x0, std::size_t N, const RunOptions& opts) {
  if (!o.subgrad_f2 || !o.conj_step_f1 || !o.eval_f1 || !o.eval_f2 || !o.subgrad_f1)
    throw Error(ErrorCode::InvalidArgument, "all five oracles are required");
  const auto dim = static_cast<std::size_t>(x0.size());
  require_finite(x0, dim, "starting point", 0);

  DcaTrajectory t;
  t.points.reserve(N + 1);
  t.points.push_back(x0);
  Vector g1 = o.subgrad_f1(x0);
  require_finite(g1, dim, "subgrad_f1", 0);

  for (std::size_t k = 0;; ++k) {
    const Vector& x = t.points.back();
    Vector g2 = o.subgrad_f2(x);
    require_finite(g2, dim, "subgrad_f2", k);
    const double F = o.eval_f1(x) - o.eval_f2(x);
    const double r = (g1 - g2).squaredNorm();

    if (opts.expect_descent && !t.objective.empty()) {
      const double prev = t.objective.back();
      if (F > prev + 1e-9 * (1.0 + std::abs(prev)))
        throw Error(ErrorCode::DivergenceDetected,
                    "objective rose from " + format_double(prev) + " to " + format_double(F) + " at step " +
                        std::to_string(k));
    }

    t.objective.push_back(F);
    t.residual_sq.push_back(r);
    t.min_residual_sq.push_back(t.min_residual_sq.empty() ? r : std::min(t.min_residual_sq.back(), r));
    t.g1.push_back(g1);
    t.g2.push_back(g2);

    if (k == N || (opts.stop_tol && r <= *opts.stop_tol)) break;

    Vector next = o.conj_step_f1(g2);
    require_finite(next, dim, "conj_step_f1", k);
    t.step_norms.push_back((x - next).squaredNorm());
    t.points.push_back(std::move(next));
    g1 = std::move(g2);
  }
  return t;
}

double default_tolerance(double F_x) noexcept { return 1e-9 + 1e-12 * std::abs(F_x); }

StepCheck check_one_step(const Splitting& s, double F_x, double F_xplus, double G_sq, double Gplus_sq,
                         double tol) {
  const RegimeReport rep = classify(s);
  StepCheck out;
  out.slack = (F_x - F_xplus) - 0.5 * rep.sigma * G_sq - 0.5 * rep.sigma_plus * Gplus_sq;
  out.holds = out.slack >= -tol;
  return out;
}

BoundCheck check_step_bounds(const Splitting& s, const DcaTrajectory& traj, double tol) {
  BoundCheck out;
  const double lower = 0.5 * (s.mu1() + s.mu2());
  const bool upper_known = s.L1().is_finite() && s.L2().is_finite();
  const double upper = upper_known ? 0.5 * (s.L1().value() + s.L2().value()) : kInf;
  double worst = kInf;
  for (std::size_t k = 0; k < traj.step_norms.size(); ++k) {
    const double dF = traj.objective[k] - traj.objective[k + 1];
    const double dx = traj.step_norms[k];
    worst = std::min(worst, dF - lower * dx);
    if (upper_known) worst = std::min(worst, upper * dx - dF);
  }
  out.worst_slack = traj.step_norms.empty() ? 0.0 : worst;
  out.holds = out.worst_slack >= -tol;
  return out;
}

}  // namespace dcatight
