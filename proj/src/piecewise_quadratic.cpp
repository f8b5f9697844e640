#include "dcatight/piecewise_quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "dcatight/error.hpp"

namespace dcatight {

PiecewiseQuadratic1D::PiecewiseQuadratic1D(std::vector<double> breakpoints, std::vector<QuadraticPiece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "need exactly one more piece than breakpoints");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])))
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be finite and strictly increasing");
  }
  for (const auto& p : pieces_)
    if (!std::isfinite(p.c2) || !std::isfinite(p.c1) || !std::isfinite(p.c0) || !std::isfinite(p.x_ref))
      throw Error(ErrorCode::InvalidArgument, "piece coefficients must be finite");
}

PiecewiseQuadratic1D PiecewiseQuadratic1D::from_curvatures(std::vector<double> breakpoints,
                                                           const std::vector<double>& curvatures, double x_ref,
                                                           double f_ref, double g_ref) {
  if (curvatures.size() != breakpoints.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "need exactly one more curvature than breakpoints");
  const auto home = static_cast<std::size_t>(
      std::upper_bound(breakpoints.begin(), breakpoints.end(), x_ref) - breakpoints.begin());
  std::vector<QuadraticPiece> pieces(curvatures.size());
  pieces[home] = {curvatures[home], g_ref, f_ref, x_ref};
  for (std::size_t k = home + 1; k < pieces.size(); ++k) {
    const double b = breakpoints[k - 1];
    pieces[k] = {curvatures[k], pieces[k - 1].slope(b), pieces[k - 1].value(b), b};
  }
  for (std::size_t k = home; k-- > 0;) {
    const double b = breakpoints[k];
    pieces[k] = {curvatures[k], pieces[k + 1].slope(b), pieces[k + 1].value(b), b};
  }
  return PiecewiseQuadratic1D(std::move(breakpoints), std::move(pieces));
}

std::size_t PiecewiseQuadratic1D::piece_index(double x) const noexcept {
  return static_cast<std::size_t>(std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

double PiecewiseQuadratic1D::inverse_derivative(double g) const {
  if (!std::isfinite(g)) throw Error(ErrorCode::NonInvertibleDerivative, "target slope is not finite");
  std::vector<double> d(breakpoints_.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = pieces_[i].slope(breakpoints_[i]);
    if (i > 0 && d[i] < d[i - 1])
      throw Error(ErrorCode::NonInvertibleDerivative, "derivative is not monotone");
  }
  const auto k = static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), g) - d.begin());
  const QuadraticPiece& p = pieces_[k];
  if (!(p.c2 > 0.0))
    throw Error(ErrorCode::NonInvertibleDerivative,
                "slope " + format_double(g) + " falls on a piece with curvature " + format_double(p.c2));
  const double x = p.x_ref + (g - p.c1) / p.c2;
  // Clamp against rounding so the answer stays inside the piece it came from.
  if (k > 0 && x < breakpoints_[k - 1]) return breakpoints_[k - 1];
  if (k < breakpoints_.size() && x > breakpoints_[k]) return breakpoints_[k];
  return x;
}

double PiecewiseQuadratic1D::min_curvature() const noexcept {
  double m = kInf;
  for (const auto& p : pieces_) m = std::min(m, p.c2);
  return m;
}

double PiecewiseQuadratic1D::max_curvature() const noexcept {
  double m = -kInf;
  for (const auto& p : pieces_) m = std::max(m, p.c2);
  return m;
}

bool PiecewiseQuadratic1D::in_class(double mu, ExtReal L, double tol) const noexcept {
  return min_curvature() >= mu - tol && max_curvature() <= L.value() + tol;
}

double PiecewiseQuadratic1D::continuity_defect() const noexcept {
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); };
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double b = breakpoints_[i];
    worst = std::max(worst, rel(pieces_[i].value(b), pieces_[i + 1].value(b)));
    worst = std::max(worst, rel(pieces_[i].slope(b), pieces_[i + 1].slope(b)));
  }
  return worst;
}

}  // namespace dcatight
