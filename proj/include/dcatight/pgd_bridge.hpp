#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "dcatight/dca_engine.hpp"
#include "dcatight/regimes.hpp"

namespace dcatight {

// F = phi + h with phi in F_{mu_phi, L_phi} smooth and h in F_{mu_h, L_h} convex.
struct PgdSetting {
  double L_phi = 1.0;
  double mu_phi = 0.0;
  double mu_h = 0.0;
  ExtReal L_h = ExtReal::infinity();
  double gamma = 1.0;
};

void validate_pgd_setting(const PgdSetting& p);

Splitting pgd_to_dca(const PgdSetting& p);

enum class SigmaBranch { SmallOrBelowThreshold, AboveThreshold, ClassifierFallback };
std::string_view to_string(SigmaBranch b) noexcept;

struct PgdSigma {
  double sigma_plus = 0.0;
  SigmaBranch branch = SigmaBranch::SmallOrBelowThreshold;
  double B = 0.0;  // 1 + 1/(1 - gamma L_phi) + 1/(1 - gamma mu_phi)
};

// Closed-form one-step coefficient for mu_h = 0, L_h = inf. For mu_phi > 0 the
// printed branches do not apply and the classifier's value is returned instead.
PgdSigma pgd_sigma_plus(double L_phi, double mu_phi, double gamma);

double pgd_rate(const PgdSetting& p, long N, double F_gap);

// Cells of the stepsize table for mu_h = 0, L_h = inf.
enum class StepsizeCell {
  NonconvexSmall,
  NonconvexUnit,
  NonconvexLarge,
  ConvexSmall,
  ConvexUnit,
  ConvexLarge,
  StronglySmall,
  StronglyUnit,
  StronglyMid,
  StronglyLarge,
};
std::string_view to_string(StepsizeCell c) noexcept;

StepsizeCell stepsize_cell(const PgdSetting& p);
// Regimes the table admits for this setting; ambiguous cells are settled by the sign of B.
std::vector<Regime> stepsize_regimes(const PgdSetting& p);

struct PgdProblem {
  std::function<double(const Vector&)> phi;
  std::function<Vector(const Vector&)> phi_grad;
  std::function<double(const Vector&)> h;
  std::function<Vector(const Vector&, double)> prox_h;  // argmin_w h(w) + ||w - v||^2 / (2 t)
  std::function<Vector(const Vector&)> h_subgrad;      // optional, used at x0 only
};

// Residuals are ||grad phi(x^k) + g_h^k||^2 with g_h^k taken from the prox optimality
// condition of the step that produced x^k. Without h_subgrad the k = 0 residual is NaN.
DcaTrajectory run_pgd(const PgdProblem& prob, const Vector& x0, double gamma, std::size_t N);

// f1 = h + ||.||^2/(2 gamma), f2 = ||.||^2/(2 gamma) - phi.
DcOracles pgd_as_dca(const PgdProblem& prob, double gamma);

// Elementwise soft thresholding: prox of t * kappa * ||.||_1.
Vector soft_threshold(const Vector& v, double threshold);

}  // namespace dcatight
