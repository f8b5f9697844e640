#include "dcatight/verify.hpp"

#include <algorithm>
#include <cmath>

#include "dcatight/dca_engine.hpp"
#include "dcatight/error.hpp"
#include "dcatight/pgd_bridge.hpp"
#include "dcatight/piecewise_quadratic.hpp"
#include "dcatight/regimes.hpp"
#include "dcatight/sampling.hpp"
#include "dcatight/worstcase.hpp"

namespace dcatight {

namespace {

double rel_diff(double a, double b) {
  const double d = std::abs(a - b);
  if (d <= 1e-14) return 0.0;
  return d / std::max(std::abs(a), std::abs(b));
}

// Draws a curvature in [lo, min(hi, lo + 4)], hitting either end a quarter of the time.
double draw_curvature(Rng& rng, double lo, ExtReal hi) {
  const double top = std::min(hi.value(), lo + 4.0);
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.25) return lo;
  if (u < 0.5) return top;
  return uniform(rng, lo, top);
}

double positive_floor(const Splitting& s) {
  // f1 needs positive curvature for an invertible derivative; mu1 = 0 is replaced by a small positive value.
  return s.mu1() > 0.0 ? s.mu1() : std::min(0.05, 0.5 * s.L1().value());
}

double bounds_sample(std::uint64_t seed, std::uint64_t i) {
  Rng rng = sample_rng(seed, i);
  const Splitting s = random_splitting(rng);
  const RegimeReport rep = classify(s);
  double worst = kInf;

  {
    const double a1 = draw_curvature(rng, positive_floor(s), s.L1());
    const double a2 = draw_curvature(rng, s.mu2(), s.L2());
    const double b1 = uniform(rng, -1.0, 1.0);
    const double b2 = uniform(rng, -1.0, 1.0);
    const double x = uniform(rng, -2.0, 2.0);
    auto F = [&](double t) { return 0.5 * a1 * t * t + b1 * t - 0.5 * a2 * t * t - b2 * t; };
    const double g2 = a2 * x + b2;
    const double xp = (g2 - b1) / a1;
    const double G = (a1 * x + b1) - g2;
    const double Gp = g2 - (a2 * xp + b2);
    const double drop = F(x) - F(xp);
    worst = std::min(worst, drop - 0.5 * rep.sigma * G * G - 0.5 * rep.sigma_plus * Gp * Gp);
    const double dx2 = (x - xp) * (x - xp);
    worst = std::min(worst, drop - 0.5 * (s.mu1() + s.mu2()) * dx2);
    if (s.L1().is_finite() && s.L2().is_finite())
      worst = std::min(worst, 0.5 * (s.L1().value() + s.L2().value()) * dx2 - drop);
  }

  if (i % 10 == 0) {
    std::vector<double> breaks{uniform(rng, -2.0, -0.5), uniform(rng, -0.5, 0.5), uniform(rng, 0.5, 2.0)};
    std::vector<double> c1, c2;
    for (int k = 0; k < 4; ++k) {
      c1.push_back(draw_curvature(rng, positive_floor(s), s.L1()));
      c2.push_back(draw_curvature(rng, s.mu2(), s.L2()));
    }
    const auto f1 = PiecewiseQuadratic1D::from_curvatures(breaks, c1, 0.0, 0.0, uniform(rng, -1.0, 1.0));
    const auto f2 = PiecewiseQuadratic1D::from_curvatures(breaks, c2, 0.0, 0.0, uniform(rng, -1.0, 1.0));
    DcOracles o;
    o.subgrad_f2 = [&](const Vector& x) { return Vector::Constant(1, f2.derivative(x[0])); };
    o.conj_step_f1 = [&](const Vector& g) { return Vector::Constant(1, f1.inverse_derivative(g[0])); };
    o.eval_f1 = [&](const Vector& x) { return f1.value(x[0]); };
    o.eval_f2 = [&](const Vector& x) { return f2.value(x[0]); };
    o.subgrad_f1 = [&](const Vector& x) { return Vector::Constant(1, f1.derivative(x[0])); };
    const DcaTrajectory t = run_dca(o, Vector::Constant(1, uniform(rng, -2.5, 2.5)), 3);
    // With a small mu1 the iterates grow by L2/mu1 per step and F reaches 1e12, so slacks are
    // measured relative to the objective's size there.
    double scale = 1.0;
    for (double f : t.objective) scale = std::max(scale, std::abs(f));
    for (std::size_t k = 0; k + 1 < t.objective.size(); ++k) {
      const StepCheck c = check_one_step(s, t.objective[k], t.objective[k + 1], t.residual_sq[k],
                                         t.residual_sq[k + 1], 0.0);
      worst = std::min(worst, c.slack / scale);
    }
    worst = std::min(worst, check_step_bounds(s, t, 0.0).worst_slack / scale);
  }
  return worst;
}

struct BoundaryDraw {
  double error = 0.0;     // relative disagreement of neighbouring formulas
  double identity = 0.0;  // B = 0 only: 1/(L2 + mu2) against (mu1 + mu2)/mu2^2
  bool used = false;
};

// Disagreement of the (sigma, sigma_plus) pairs relative to p. A coefficient that is exactly zero on
// one side is only zero up to rounding on the other, so entrywise relative error would be meaningless.
double pair_diff(const Coefficients& a, const Coefficients& b) {
  const double scale = std::max({std::abs(a.p()), std::abs(b.p()), 1e-300});
  return std::max(std::abs(a.sigma - b.sigma), std::abs(a.sigma_plus - b.sigma_plus)) / scale;
}

BoundaryDraw boundary_sample(std::uint64_t seed, std::uint64_t i, int which) {
  Rng rng = sample_rng(seed, i * 4 + static_cast<std::uint64_t>(which));
  BoundaryDraw d;
  switch (which) {
    case 0: {  // B = 0: p3 | p4 when L2 > mu1, p4 | p5 when L2 <= mu1
      const double mu1 = uniform(rng, 0.1, 3.0);
      const bool upper = i % 2 == 0;
      const double mu2 = upper ? -mu1 * uniform(rng, 0.51, 0.99) : -mu1 * uniform(rng, 0.01, 0.49);
      const double L2 = -mu1 * mu2 / (mu1 + mu2);
      const double L1 = std::max(L2, mu1) + uniform(rng, 0.01, 4.0);
      const Splitting s = validate_splitting(mu1, L1, mu2, L2);
      const Coefficients p4 = regime_coefficients(Regime::P4, s);
      const Coefficients other = regime_coefficients(upper ? Regime::P3 : Regime::P5, s);
      d.identity = rel_diff(1.0 / (L2 + mu2), (mu1 + mu2) / (mu2 * mu2));
      d.error = pair_diff(p4, other);
      d.used = true;
      break;
    }
    case 1: {  // E = 0 with L1 >= L2: p1 | p3
      const double mu1 = uniform(rng, 0.1, 3.0);
      const double L1 = mu1 + uniform(rng, 0.05, 4.0);
      const double mu2 = -mu1 * uniform(rng, 0.01, 0.99);
      // E * L2 = 0 is a quadratic a L2^2 + c L2 + 1 = 0.
      const double a = -1.0 / (L1 * mu2);
      const double c = 1.0 / mu1 + 1.0 / mu2 - 2.0 / L1;
      const double disc = c * c - 4.0 * a;
      if (disc < 0.0) break;
      const double q = -0.5 * (c + std::copysign(std::sqrt(disc), c));
      for (double L2 : {q / a, 1.0 / q}) {
        if (!(L2 > mu1 && L2 <= L1)) continue;
        const Splitting s = validate_splitting(mu1, L1, mu2, L2);
        if (!(threshold_B(s) <= 0.0)) continue;
        d.error = std::max(d.error, pair_diff(regime_coefficients(Regime::P1, s), regime_coefficients(Regime::P3, s)));
        d.used = true;
      }
      break;
    }
    case 2: {  // L1 = L2 with mu1, mu2 >= 0: p1 | p2 in p
      const double mu1 = uniform(rng, 0.0, 3.0);
      const double mu2 = uniform(rng, 0.01, 3.0);
      const double L = std::max(mu1, mu2) + uniform(rng, 0.01, 4.0);
      const Splitting s = validate_splitting(mu1, L, mu2, L);
      d.error = rel_diff(regime_coefficients(Regime::P1, s).p(), regime_coefficients(Regime::P2, s).p());
      d.used = true;
      break;
    }
    case 3: {  // L2 = mu1: p1 | p5 or p3 | p5, whichever the classifier finds on each side
      const double mu1 = uniform(rng, 0.1, 3.0);
      const double mu2 = mu1 * uniform(rng, -0.99, 0.99);
      const double L1 = mu1 + uniform(rng, 0.01, 4.0);
      const Regime above = classify(validate_splitting(mu1, L1, mu2, mu1 * (1.0 + 1e-9))).regime;
      const Regime below = classify(validate_splitting(mu1, L1, mu2, mu1 * (1.0 - 1e-9))).regime;
      // With mu2 < 0 and B > 0 both sides are p4 and the line is not a boundary.
      if (above == below) break;
      const Splitting s = validate_splitting(mu1, L1, mu2, mu1);
      d.error = pair_diff(regime_coefficients(above, s), regime_coefficients(below, s));
      d.used = true;
      break;
    }
    default:
      break;
  }
  return d;
}

double swap_sample(std::uint64_t seed, std::uint64_t i) {
  Rng rng = sample_rng(seed, i);
  const double mu1 = uniform(rng, 0.0, 3.0);
  const double mu2 = uniform(rng, 0.01, 3.0);
  const double L2 = std::max(mu1, mu2) + uniform(rng, 0.01, 3.0);
  const ExtReal L1 = uniform(rng, 0.0, 1.0) < 0.1 ? ExtReal::infinity() : ExtReal(L2 + uniform(rng, 0.01, 3.0));
  const RegimeReport a = classify(validate_splitting(mu1, L1, mu2, L2));
  const RegimeReport b = classify(validate_splitting(mu2, L2, mu1, L1));
  if (a.regime != Regime::P1 || b.regime != Regime::P2) return kInf;
  return std::max(rel_diff(a.sigma, b.sigma_plus), rel_diff(a.sigma_plus, b.sigma));
}

double pgd_sample(std::uint64_t seed, std::uint64_t i) {
  Rng rng = sample_rng(seed, i);
  const double a = uniform(rng, -0.2, 2.0);
  const double c = uniform(rng, -1.0, 1.0);
  const double kappa = uniform(rng, 0.0, 0.5);
  const double L_phi = std::max(a, 0.2);
  const double gamma = std::min(2.0, uniform(rng, 0.01, 0.99) * 2.0 / L_phi);
  const std::size_t N = 50;

  PgdProblem prob;
  prob.phi = [a, c](const Vector& x) { return 0.5 * a * x.squaredNorm() + c * x.sum(); };
  prob.phi_grad = [a, c](const Vector& x) -> Vector { return a * x + Vector::Constant(x.size(), c); };
  prob.h = [kappa](const Vector& x) { return kappa * x.lpNorm<1>(); };
  prob.prox_h = [kappa](const Vector& v, double t) { return soft_threshold(v, kappa * t); };
  prob.h_subgrad = [kappa](const Vector& x) -> Vector {
    return x.unaryExpr([kappa](double v) { return kappa * static_cast<double>((v > 0.0) - (v < 0.0)); });
  };

  const Vector x0 = Vector::Constant(1, uniform(rng, -2.0, 2.0));
  const DcaTrajectory p = run_pgd(prob, x0, gamma, N);
  const DcaTrajectory d = run_dca(pgd_as_dca(prob, gamma), x0, N);
  double worst = 0.0;
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    const double xp = p.points[k][0];
    const double xd = d.points[k][0];
    worst = std::max(worst, std::abs(xp - xd) / std::max(1.0, std::abs(xp)));
    worst = std::max(worst, std::abs(p.residual_sq[k] - d.residual_sq[k]) / std::max(1.0, p.residual_sq[k]));
  }
  return worst;
}

template <class F>
std::vector<double> parallel_map(std::size_t n, F f) {
  std::vector<double> out(n);
  const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = f(static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace

bool SuiteResult::passed() const noexcept {
  return complete && std::all_of(metrics.begin(), metrics.end(), [](const SuiteMetric& m) { return m.passed(); });
}

SuiteResult verify_bounds(std::size_t samples, std::uint64_t seed) {
  const auto v = parallel_map(samples, [seed](std::uint64_t i) { return bounds_sample(seed, i); });
  SuiteMetric m{"min_slack", samples == 0 ? 0.0 : kInf, -1e-9, true};
  for (double x : v) m.worst = std::min(m.worst, x);
  return {"bounds", samples, {m}, true};
}

SuiteResult verify_boundaries(std::size_t samples, std::uint64_t seed) {
  constexpr const char* names[] = {"max_rel_diff_b_zero", "max_rel_diff_e_zero", "max_rel_diff_l1_eq_l2",
                                   "max_rel_diff_l2_eq_mu1"};
  SuiteResult r{"boundaries", 0, {}, true};
  SuiteMetric identity{"b_zero_identity_rel_err", 0.0, 1e-12, false};
  for (int which = 0; which < 4; ++which) {
    SuiteMetric m{names[which], 0.0, 1e-8, false};
    // E = 0 draws can miss the admissible root; oversample and count only the hits.
    std::size_t used = 0;
    for (std::uint64_t batch = 0; used < samples && batch < 50; ++batch) {
      std::vector<BoundaryDraw> draws(samples);
      const auto n = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < n; ++i)
        draws[i] = boundary_sample(seed, batch * samples + static_cast<std::uint64_t>(i), which);
      for (const BoundaryDraw& d : draws) {
        if (!d.used || used >= samples) continue;
        ++used;
        m.worst = std::max(m.worst, d.error);
        identity.worst = std::max(identity.worst, d.identity);
      }
    }
    r.samples += used;
    r.complete = r.complete && used == samples;
    r.metrics.push_back(m);
  }
  r.metrics.push_back(identity);
  return r;
}

SuiteResult verify_swap(std::size_t samples, std::uint64_t seed) {
  const auto v = parallel_map(samples, [seed](std::uint64_t i) { return swap_sample(seed, i); });
  SuiteMetric m{"max_rel_diff", 0.0, 1e-12, false};
  for (double x : v) m.worst = std::max(m.worst, x);
  return {"swap", samples, {m}, true};
}

SuiteResult verify_pgd_equiv(std::size_t samples, std::uint64_t seed) {
  const auto v = parallel_map(samples, [seed](std::uint64_t i) { return pgd_sample(seed, i); });
  SuiteMetric m{"max_rel_diff", 0.0, 1e-10, false};
  for (double x : v) m.worst = std::max(m.worst, x);
  return {"pgd-equiv", samples, {m}, true};
}

std::vector<SuiteResult> run_verify(std::string_view suite, std::size_t samples, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (all || suite == "bounds") out.push_back(verify_bounds(samples, seed));
  if (all || suite == "boundaries") out.push_back(verify_boundaries(samples, seed));
  if (all || suite == "swap") out.push_back(verify_swap(samples, seed));
  if (all || suite == "pgd-equiv") out.push_back(verify_pgd_equiv(samples, seed));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace dcatight
