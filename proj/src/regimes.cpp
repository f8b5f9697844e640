#include "dcatight/regimes.hpp"

#include <cmath>

#include "dcatight/error.hpp"

namespace dcatight {

namespace {

struct Cmp {
  double tol;
  bool ge(double a, double b) const { return a >= b - tol; }
  bool gt(double a, double b) const { return a > b - tol; }
  bool le(double a, double b) const { return a <= b + tol; }
  bool lt(double a, double b) const { return a < b + tol; }
};

std::string describe(Regime r, const Splitting& s) {
  const double mu1 = s.mu1();
  const double mu2 = s.mu2();
  const double L2 = s.L2().value();
  switch (r) {
    case Regime::P1:
      if (mu2 < 0) return "f1 strongly convex, f2 nonconvex, F nonconvex-nonconcave";
      return "f1, f2 convex, F nonconvex-nonconcave";
    case Regime::P2:
      return "f1, f2 convex, F nonconvex-nonconcave";
    case Regime::P3:
      return "f1 strongly convex, f2 nonconvex, F nonconvex-nonconcave";
    case Regime::P4:
      if (L2 <= 0) return "f1 strongly convex, f2 concave, F strongly convex";
      if (L2 <= mu1) return "f1 strongly convex, f2 nonconvex, F convex";
      return "f1 strongly convex, f2 nonconvex, F nonconvex-nonconcave";
    case Regime::P5:
      if (mu2 < 0) return "f1 strongly convex, f2 nonconvex, F convex";
      return "f1 strongly convex, f2 convex, F convex";
    case Regime::P6:
      return "f1 convex, f2 strongly convex, F concave and unbounded below";
    case Regime::Degenerate:
      return "f1, f2 convex with mu1 = mu2 = 0, regimes p1 and p2 coincide";
  }
  return {};
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::P1: return "p1";
    case Regime::P2: return "p2";
    case Regime::P3: return "p3";
    case Regime::P4: return "p4";
    case Regime::P5: return "p5";
    case Regime::P6: return "p6";
    case Regime::Degenerate: return "p1p2_degenerate";
  }
  return "unknown";
}

std::optional<Regime> regime_from_string(std::string_view name) noexcept {
  for (Regime r : kAllRegimes)
    if (to_string(r) == name) return r;
  return std::nullopt;
}

double threshold_B(const Splitting& s) noexcept {
  return rcp(s.mu1()) + rcp(s.mu2()) + rcp(s.L2().value());
}

std::optional<double> boundary_E(const Splitting& s) noexcept {
  if (!(s.mu2() < 0)) return std::nullopt;
  // Expanded form of ((L2+mu2)/(L1 L2)) ((L2-L1)/(-mu2)) + 1/mu1 - 1/L1; it stays
  // well defined when either L is infinite.
  const double L2 = s.L2().value();
  return threshold_B(s) - rcp(s.L1().value()) * (2.0 + L2 / s.mu2());
}

Coefficients regime_coefficients(Regime r, const Splitting& s) noexcept {
  const double mu1 = s.mu1();
  const double mu2 = s.mu2();
  const double iL1 = rcp(s.L1().value());
  const double iL2 = rcp(s.L2().value());
  switch (r) {
    case Regime::P1:
      return {(1.0 - mu1 * iL2) * rcp(s.L1().value() - mu1),
              iL2 * (1.0 + (iL2 - iL1) / (rcp(mu1) - iL1))};
    case Regime::P2:
      return {iL1 * (1.0 + (iL1 - iL2) / (rcp(mu2) - iL2)),
              (1.0 - mu2 * iL1) * rcp(s.L2().value() - mu2)};
    case Regime::P3: {
      const double B = threshold_B(s);
      return {iL1 * B / (B - iL1), rcp(s.L2().value() + mu2)};
    }
    case Regime::P4:
      return {0.0, (mu1 + mu2) / (mu2 * mu2)};
    case Regime::P5:
      return {0.0, (1.0 + mu1 * iL2) * iL2};
    case Regime::P6:
      return {(1.0 + mu2 * iL1) * iL1, 0.0};
    case Regime::Degenerate:
      return {iL1, iL2};
  }
  return {};
}

bool in_domain(Regime r, const Splitting& s, double tol) noexcept {
  const Cmp c{tol};
  const double mu1 = s.mu1();
  const double mu2 = s.mu2();
  const double L1 = s.L1().value();
  const double L2 = s.L2().value();

  if (r == Regime::Degenerate) return c.le(std::abs(mu1), 0.0) && c.le(std::abs(mu2), 0.0);
  if (!(c.gt(mu1 + mu2, 0.0))) return false;
  if (s.L1().is_inf() && s.L2().is_inf()) return false;

  switch (r) {
    case Regime::P1: {
      if (!(c.ge(L1, L2) && c.ge(L2, mu1) && c.ge(mu1, 0.0) && c.gt(L1, mu2))) return false;
      if (c.ge(mu2, 0.0)) return true;
      const auto E = boundary_E(s);
      return E && c.le(*E, 0.0);
    }
    case Regime::P2:
      return c.ge(L2, L1) && c.ge(L1, mu2) && c.ge(mu2, 0.0) && c.gt(L2, mu1) && c.ge(mu1, 0.0);
    case Regime::P3: {
      if (!(c.lt(mu2, 0.0) && c.gt(mu1, 0.0) && c.gt(L2, mu1) && c.gt(L1, mu2))) return false;
      if (!c.le(threshold_B(s), 0.0)) return false;
      if (c.gt(L2, L1)) return true;
      const auto E = boundary_E(s);
      return c.ge(L1, L2) && (!E || c.ge(*E, 0.0));
    }
    case Regime::P4: {
      if (!(c.lt(mu2, 0.0) && c.gt(mu1, 0.0) && c.gt(L1, mu2))) return false;
      if (L2 > 0.0) return c.gt(threshold_B(s), 0.0);
      // L2 * B > 0 with L2 <= 0, written without dividing by L2.
      return c.gt(1.0 + L2 * (rcp(mu1) + rcp(mu2)), 0.0);
    }
    case Regime::P5:
      if (!(c.gt(L1, mu1) && c.ge(mu1, L2) && c.gt(L2, 0.0) && c.gt(L1, mu2))) return false;
      return c.ge(mu2, 0.0) || c.le(threshold_B(s), 0.0);
    case Regime::P6:
      return c.gt(L2, mu2) && c.ge(mu2, L1) && c.gt(L1, mu1) && c.ge(mu1, 0.0);
    case Regime::Degenerate:
      break;
  }
  return false;
}

RegimeReport classify(const Splitting& s, double tol) {
  if (!s.decrease_guaranteed() && !(tol > 0 && in_domain(Regime::Degenerate, s, tol)))
    throw Error(ErrorCode::OutsideAllRegimes,
                "decrease condition mu1 + mu2 > 0 fails (mu1 + mu2 = " + format_double(s.mu1() + s.mu2()) + ")");
  if (s.L1().is_inf() && s.L2().is_inf())
    throw Error(ErrorCode::OutsideAllRegimes, "L1 and L2 cannot both be infinite");

  constexpr Regime order[] = {Regime::Degenerate, Regime::P1, Regime::P2, Regime::P3,
                              Regime::P4,         Regime::P5, Regime::P6};
  for (Regime r : order) {
    if (!in_domain(r, s, tol)) continue;
    const Coefficients k = regime_coefficients(r, s);
    RegimeReport out;
    out.regime = r;
    out.sigma = k.sigma;
    out.sigma_plus = k.sigma_plus;
    out.p = k.sigma + k.sigma_plus;
    out.B = threshold_B(s);
    out.E = boundary_E(s);
    out.description = describe(r, s);
    out.concave_unbounded = r == Regime::P6;
    return out;
  }
  throw Error(ErrorCode::OutsideAllRegimes, "no regime domain contains this splitting");
}

double GridAxis::at(std::size_t i) const noexcept {
  if (n <= 1) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

namespace {

void check_axes(const GridAxis& a, const GridAxis& b) {
  if (a.n == 0 || b.n == 0 || !(a.lo <= a.hi) || !(b.lo <= b.hi))
    throw Error(ErrorCode::EmptyGrid, "grid axes must have n >= 1 and lo <= hi");
}

ContourCell grid_cell(double mu1, ExtReal L1, double mu2, double L2, double tol) {
  ContourCell cell{mu2, L2, std::nullopt, 0.0, 0.0, 0.0};
  try {
    const Splitting s = validate_splitting(mu1, L1, mu2, L2);
    const RegimeReport rep = classify(s, tol);
    cell.regime = rep.regime;
    cell.p = rep.p;
    cell.sigma = rep.sigma;
    cell.sigma_plus = rep.sigma_plus;
  } catch (const Error&) {
  }
  return cell;
}

}  // namespace

std::vector<ContourCell> contour_grid(double mu1, ExtReal L1, const GridAxis& mu2, const GridAxis& L2,
                                      double tol) {
  check_axes(mu2, L2);
  const std::size_t total = mu2.n * L2.n;
  std::vector<ContourCell> cells(total);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < total; ++k)
    cells[k] = grid_cell(mu1, L1, mu2.at(k / L2.n), L2.at(k % L2.n), tol);
  return cells;
}

std::vector<ContourCell> contour_grid_serial(double mu1, ExtReal L1, const GridAxis& mu2,
                                             const GridAxis& L2, double tol) {
  check_axes(mu2, L2);
  std::vector<ContourCell> cells;
  cells.reserve(mu2.n * L2.n);
  for (std::size_t i = 0; i < mu2.n; ++i)
    for (std::size_t j = 0; j < L2.n; ++j) cells.push_back(grid_cell(mu1, L1, mu2.at(i), L2.at(j), tol));
  return cells;
}

}  // namespace dcatight
