#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcatight/ext_real.hpp"

namespace dcatight {

// c2/2 (x - x_ref)^2 + c1 (x - x_ref) + c0
struct QuadraticPiece {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double x_ref = 0.0;

  double value(double x) const noexcept {
    const double d = x - x_ref;
    return 0.5 * c2 * d * d + c1 * d + c0;
  }
  double slope(double x) const noexcept { return c2 * (x - x_ref) + c1; }
};

// Piece k lives on [b_{k-1}, b_k]; the first and last pieces are unbounded.
class PiecewiseQuadratic1D {
 public:
  PiecewiseQuadratic1D(std::vector<double> breakpoints, std::vector<QuadraticPiece> pieces);

  // Integrates the given curvatures from a reference point, so the result is C^1 by construction.
  static PiecewiseQuadratic1D from_curvatures(std::vector<double> breakpoints, const std::vector<double>& curvatures,
                                              double x_ref, double f_ref, double g_ref);

  std::size_t piece_index(double x) const noexcept;
  double value(double x) const noexcept { return pieces_[piece_index(x)].value(x); }
  double derivative(double x) const noexcept { return pieces_[piece_index(x)].slope(x); }
  // The unique x with derivative(x) = g. Requires strictly increasing derivative.
  double inverse_derivative(double g) const;

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const QuadraticPiece> pieces() const noexcept { return pieces_; }

  double min_curvature() const noexcept;
  double max_curvature() const noexcept;
  bool in_class(double mu, ExtReal L, double tol = 0.0) const noexcept;
  // Largest relative mismatch of value or slope between neighbouring pieces at a breakpoint.
  double continuity_defect() const noexcept;

 private:
  std::vector<double> breakpoints_;
  std::vector<QuadraticPiece> pieces_;
};

}  // namespace dcatight
