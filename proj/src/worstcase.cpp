#include "dcatight/worstcase.hpp"

#include <cmath>
#include <memory>

#include "dcatight/error.hpp"

namespace dcatight {

namespace {

void check_common(double delta, std::size_t N) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (N < 1) throw Error(ErrorCode::InvalidN, "N must be at least 1");
}

// Breakpoints and pieces for the alternating ladder, skipping zero-width pieces.
struct Ladder {
  std::vector<double> breaks;
  std::vector<QuadraticPiece> pieces;

  void start(const QuadraticPiece& left) { pieces.push_back(left); }
  void add(double break_at, const QuadraticPiece& next) {
    if (!breaks.empty() && !(break_at > breaks.back())) {
      pieces.back() = next;  // previous piece had zero width
      return;
    }
    breaks.push_back(break_at);
    pieces.push_back(next);
  }
  PiecewiseQuadratic1D build() { return PiecewiseQuadratic1D(std::move(breaks), std::move(pieces)); }
};

}  // namespace

WorstCaseInstance instance_p1(const Splitting& s, double delta, std::size_t N, const WorstCaseAnchors& a) {
  check_common(delta, N);
  if (s.mu1() == 0.0)
    throw Error(ErrorCode::DegenerateMu1, "mu1 = 0 gives flat pieces and a set-valued conjugate step");
  if (s.L1().is_inf() || s.L2().is_inf() || !in_domain(Regime::P1, s))
    throw Error(ErrorCode::DomainViolation, "parameters are outside the p1 domain with finite L1, L2");

  const double mu1 = s.mu1();
  const double L1 = s.L1().value();
  const double L2 = s.L2().value();
  const double p = regime_coefficients(Regime::P1, s).p();
  const double Nd = static_cast<double>(N);
  const double U = -std::sqrt(2.0 * delta / (p * Nd));
  const double frac = (L2 - mu1) / (L1 - mu1);

  const QuadraticPiece f2_piece{L2, a.g0, a.f2_0, a.x0};
  std::vector<double> x(N + 1), g1(N + 1), f1v(N + 1), xbar(N);
  for (std::size_t k = 0; k <= N; ++k) {
    const double kd = static_cast<double>(k);
    x[k] = a.x0 - kd * U / L2;
    g1[k] = a.g0 - (kd - 1.0) * U;
    f1v[k] = f2_piece.value(x[k]) + (Nd - kd) / Nd * delta;
  }
  for (std::size_t k = 0; k < N; ++k) {
    if (frac == 0.0) xbar[k] = x[k];
    else if (frac == 1.0) xbar[k] = x[k + 1];
    else xbar[k] = x[k] - frac * U / L2;
  }

  Ladder f1;
  f1.start({L1, g1[0], f1v[0], x[0]});
  for (std::size_t k = 0; k < N; ++k) {
    f1.add(x[k], {L1, g1[k], f1v[k], x[k]});
    f1.add(xbar[k], {mu1, g1[k + 1], f1v[k + 1], x[k + 1]});
  }
  f1.add(x[N], {L1, g1[N], f1v[N], x[N]});

  return WorstCaseInstance{f1.build(),
                           PiecewiseQuadratic1D({}, {f2_piece}),
                           s,
                           Regime::P1,
                           N,
                           delta,
                           p,
                           U,
                           std::move(x),
                           std::move(xbar),
                           U * U};
}

WorstCaseInstance instance_p2(const Splitting& s, double delta, std::size_t N, const WorstCaseAnchors& a) {
  check_common(delta, N);
  const double mu1 = s.mu1();
  const double mu2 = s.mu2();
  if (s.L1().is_inf() || s.L2().is_inf() || mu2 < 0.0 || !(std::max(mu1, mu2) < s.L1()) || !(s.L1() < s.L2()))
    throw Error(ErrorCode::DomainViolation, "p2 instances need mu1, mu2 >= 0 and max(mu1, mu2) < L1 < L2 < inf");

  const double L1 = s.L1().value();
  const double L2 = s.L2().value();
  const double p = regime_coefficients(Regime::P2, s).p();
  const double Nd = static_cast<double>(N);
  const double U = -std::sqrt(2.0 * delta / (p * Nd));
  const double frac = (L2 - L1) / (L2 - mu2);

  const QuadraticPiece f1_piece{L1, a.g0, a.f2_0 + delta, a.x0};
  std::vector<double> x(N + 1), g2(N + 1), f2v(N + 1), xbar(N);
  for (std::size_t k = 0; k <= N; ++k) {
    const double kd = static_cast<double>(k);
    x[k] = a.x0 - kd * U / L1;
    g2[k] = a.g0 - (kd + 1.0) * U;
    f2v[k] = f1_piece.value(x[k]) - (Nd - kd) / Nd * delta;
  }
  for (std::size_t k = 0; k < N; ++k) {
    if (frac == 1.0) xbar[k] = x[k + 1];
    else xbar[k] = x[k] - frac * U / L1;
  }

  Ladder f2;
  f2.start({mu2, g2[0], f2v[0], x[0]});
  for (std::size_t k = 0; k < N; ++k) {
    f2.add(x[k], {mu2, g2[k], f2v[k], x[k]});
    f2.add(xbar[k], {L2, g2[k + 1], f2v[k + 1], x[k + 1]});
  }
  f2.add(x[N], {mu2, g2[N], f2v[N], x[N]});

  return WorstCaseInstance{PiecewiseQuadratic1D({}, {f1_piece}),
                           f2.build(),
                           s,
                           Regime::P2,
                           N,
                           delta,
                           p,
                           U,
                           std::move(x),
                           std::move(xbar),
                           U * U};
}

DcOracles as_oracles(const WorstCaseInstance& inst) {
  auto f1 = std::make_shared<const PiecewiseQuadratic1D>(inst.f1);
  auto f2 = std::make_shared<const PiecewiseQuadratic1D>(inst.f2);
  auto lift = [](double v) { return Vector::Constant(1, v); };
  DcOracles o;
  o.subgrad_f2 = [f2, lift](const Vector& x) { return lift(f2->derivative(x[0])); };
  o.conj_step_f1 = [f1, lift](const Vector& g) { return lift(f1->inverse_derivative(g[0])); };
  o.eval_f1 = [f1](const Vector& x) { return f1->value(x[0]); };
  o.eval_f2 = [f2](const Vector& x) { return f2->value(x[0]); };
  o.subgrad_f1 = [f1, lift](const Vector& x) { return lift(f1->derivative(x[0])); };
  return o;
}

std::vector<Triplet> sample_triplets(const PiecewiseQuadratic1D& f, const std::vector<double>& extra_points) {
  std::vector<double> xs(extra_points);
  xs.insert(xs.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Triplet> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({Vector::Constant(1, x), Vector::Constant(1, f.derivative(x)), f.value(x)});
  return out;
}

}  // namespace dcatight
