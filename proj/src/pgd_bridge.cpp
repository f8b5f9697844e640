#include "dcatight/pgd_bridge.hpp"

#include <cmath>
#include <limits>

#include "dcatight/error.hpp"

namespace dcatight {

void validate_pgd_setting(const PgdSetting& p) {
  if (!(p.L_phi > 0.0) || !std::isfinite(p.L_phi)) throw Error(ErrorCode::InvalidArgument, "L_phi must be positive");
  if (!std::isfinite(p.mu_phi) || !(p.mu_phi < p.L_phi))
    throw Error(ErrorCode::CurvatureOrder, "need mu_phi < L_phi");
  if (!(p.mu_h >= 0.0) || !std::isfinite(p.mu_h)) throw Error(ErrorCode::InvalidArgument, "mu_h must be >= 0");
  // L_h = mu_h would make f1 a single quadratic curvature, which Splitting rejects.
  if (!(p.L_h > p.mu_h)) throw Error(ErrorCode::CurvatureOrder, "need L_h > mu_h");
  if (!(p.gamma > 0.0) || !(p.gamma * p.L_phi < 2.0))
    throw Error(ErrorCode::NoDecreaseGuarantee, "stepsize must lie in (0, 2/L_phi)");
}

Splitting pgd_to_dca(const PgdSetting& p) {
  validate_pgd_setting(p);
  const double ig = 1.0 / p.gamma;
  return validate_splitting(ig + p.mu_h, p.L_h + ig, ig - p.L_phi, ig - p.mu_phi);
}

std::string_view to_string(SigmaBranch b) noexcept {
  switch (b) {
    case SigmaBranch::SmallOrBelowThreshold: return "small_or_below_threshold";
    case SigmaBranch::AboveThreshold: return "above_threshold";
    case SigmaBranch::ClassifierFallback: return "classifier_fallback";
  }
  return "unknown";
}

PgdSigma pgd_sigma_plus(double L_phi, double mu_phi, double gamma) {
  PgdSetting setting{L_phi, mu_phi, 0.0, ExtReal::infinity(), gamma};
  validate_pgd_setting(setting);
  PgdSigma out;
  out.B = 1.0 + rcp(1.0 - gamma * L_phi) + rcp(1.0 - gamma * mu_phi);
  const bool above_unit = gamma * L_phi > 1.0;
  if (above_unit && out.B > 0.0) {
    const double d = 1.0 - gamma * L_phi;
    out.sigma_plus = gamma * (2.0 - gamma * L_phi) / (d * d);
    out.branch = SigmaBranch::AboveThreshold;
  } else if (mu_phi <= 0.0) {
    const double d = 1.0 - gamma * mu_phi;
    out.sigma_plus = gamma * (2.0 - gamma * mu_phi) / (d * d);
    out.branch = SigmaBranch::SmallOrBelowThreshold;
  } else {
    out.sigma_plus = classify(pgd_to_dca(setting)).sigma_plus;
    out.branch = SigmaBranch::ClassifierFallback;
  }
  return out;
}

double pgd_rate(const PgdSetting& p, long N, double F_gap) {
  if (N < 1) throw Error(ErrorCode::InvalidN, "N must be at least 1");
  if (!(F_gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "F gap must be nonnegative");
  const double sp = classify(pgd_to_dca(p)).sigma_plus;
  return F_gap / (sp * static_cast<double>(N));
}

std::string_view to_string(StepsizeCell c) noexcept {
  switch (c) {
    case StepsizeCell::NonconvexSmall: return "nonconvex_small";
    case StepsizeCell::NonconvexUnit: return "nonconvex_unit";
    case StepsizeCell::NonconvexLarge: return "nonconvex_large";
    case StepsizeCell::ConvexSmall: return "convex_small";
    case StepsizeCell::ConvexUnit: return "convex_unit";
    case StepsizeCell::ConvexLarge: return "convex_large";
    case StepsizeCell::StronglySmall: return "strongly_convex_small";
    case StepsizeCell::StronglyUnit: return "strongly_convex_unit";
    case StepsizeCell::StronglyMid: return "strongly_convex_mid";
    case StepsizeCell::StronglyLarge: return "strongly_convex_large";
  }
  return "unknown";
}

StepsizeCell stepsize_cell(const PgdSetting& p) {
  validate_pgd_setting(p);
  const double gL = p.gamma * p.L_phi;
  const int band = gL < 1.0 ? 0 : (gL == 1.0 ? 1 : 2);
  if (p.mu_phi < 0.0) return static_cast<StepsizeCell>(static_cast<int>(StepsizeCell::NonconvexSmall) + band);
  if (p.mu_phi == 0.0) return static_cast<StepsizeCell>(static_cast<int>(StepsizeCell::ConvexSmall) + band);
  if (band < 2) return band == 0 ? StepsizeCell::StronglySmall : StepsizeCell::StronglyUnit;
  return p.gamma * (p.L_phi + p.mu_phi) < 2.0 ? StepsizeCell::StronglyMid : StepsizeCell::StronglyLarge;
}

std::vector<Regime> stepsize_regimes(const PgdSetting& p) {
  const bool B_positive = threshold_B(pgd_to_dca(p)) > 0.0;
  switch (stepsize_cell(p)) {
    case StepsizeCell::NonconvexSmall:
    case StepsizeCell::NonconvexUnit:
      return {Regime::P1};
    case StepsizeCell::NonconvexLarge:
      return {B_positive ? Regime::P4 : Regime::P1};
    case StepsizeCell::ConvexSmall:
    case StepsizeCell::ConvexUnit:
      return {Regime::P1, Regime::P5};
    case StepsizeCell::ConvexLarge:
      // The table prints p4 only; near gamma = 1/L_phi B is still <= 0 and the p1 = p5 formula applies.
      if (B_positive) return {Regime::P4};
      return {Regime::P1, Regime::P5};
    case StepsizeCell::StronglySmall:
    case StepsizeCell::StronglyUnit:
      return {Regime::P5};
    case StepsizeCell::StronglyMid:
      return {B_positive ? Regime::P4 : Regime::P5};
    case StepsizeCell::StronglyLarge:
      return {Regime::P4};
  }
  return {};
}

Vector soft_threshold(const Vector& v, double threshold) {
  return v.unaryExpr([threshold](double a) {
    const double m = std::abs(a) - threshold;
    return m > 0.0 ? std::copysign(m, a) : 0.0;
  });
}

DcaTrajectory run_pgd(const PgdProblem& prob, const Vector& x0, double gamma, std::size_t N) {
  if (!prob.phi || !prob.phi_grad || !prob.h || !prob.prox_h)
    throw Error(ErrorCode::InvalidArgument, "phi, phi_grad, h and prox_h are required");
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "stepsize must be positive");

  DcaTrajectory t;
  const double ig = 1.0 / gamma;
  Vector gh = prob.h_subgrad ? prob.h_subgrad(x0) : Vector::Constant(x0.size(), std::numeric_limits<double>::quiet_NaN());
  Vector x = x0;
  for (std::size_t k = 0;; ++k) {
    const Vector grad = prob.phi_grad(x);
    const double F = prob.phi(x) + prob.h(x);
    const double r = (grad + gh).squaredNorm();
    t.points.push_back(x);
    t.objective.push_back(F);
    t.residual_sq.push_back(r);
    // NaN (unknown k = 0 residual) never wins the running minimum.
    const double prev_min = t.min_residual_sq.empty() ? kInf : t.min_residual_sq.back();
    t.min_residual_sq.push_back(std::isnan(r) ? prev_min : std::min(prev_min, r));
    // In DCA terms g1 = g_h + x/gamma and g2 = x/gamma - grad phi.
    t.g1.push_back(gh + ig * x);
    t.g2.push_back(ig * x - grad);
    if (k == N) break;

    const Vector v = x - gamma * grad;
    Vector next = prob.prox_h(v, gamma);
    if (next.size() != x.size() || !next.allFinite())
      throw Error(ErrorCode::ProxFailure, "prox returned a non-finite point at step " + std::to_string(k));
    gh = (v - next) * ig;
    t.step_norms.push_back((x - next).squaredNorm());
    x = std::move(next);
  }
  return t;
}

DcOracles pgd_as_dca(const PgdProblem& prob, double gamma) {
  const double ig = 1.0 / gamma;
  DcOracles o;
  o.subgrad_f2 = [prob, ig](const Vector& x) -> Vector { return ig * x - prob.phi_grad(x); };
  // argmin_w h(w) + ||w||^2/(2 gamma) - <g, w> = prox_{gamma h}(gamma g)
  o.conj_step_f1 = [prob, gamma](const Vector& g) { return prob.prox_h(gamma * g, gamma); };
  o.eval_f1 = [prob, ig](const Vector& x) { return prob.h(x) + 0.5 * ig * x.squaredNorm(); };
  o.eval_f2 = [prob, ig](const Vector& x) { return 0.5 * ig * x.squaredNorm() - prob.phi(x); };
  o.subgrad_f1 = [prob, ig](const Vector& x) -> Vector {
    if (!prob.h_subgrad) throw Error(ErrorCode::InvalidArgument, "h_subgrad is needed for the DCA form at x0");
    return prob.h_subgrad(x) + ig * x;
  };
  return o;
}

}  // namespace dcatight
