#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcatight/splitting.hpp"

namespace dcatight {

enum class Regime { P1, P2, P3, P4, P5, P6, Degenerate };

inline constexpr Regime kAllRegimes[] = {Regime::P1, Regime::P2, Regime::P3, Regime::P4,
                                         Regime::P5, Regime::P6, Regime::Degenerate};

std::string_view to_string(Regime r) noexcept;
std::optional<Regime> regime_from_string(std::string_view name) noexcept;

struct Coefficients {
  double sigma = 0.0;
  double sigma_plus = 0.0;
  double p() const noexcept { return sigma + sigma_plus; }
};

struct RegimeReport {
  Regime regime = Regime::Degenerate;
  double sigma = 0.0;
  double sigma_plus = 0.0;
  double p = 0.0;
  double B = 0.0;
  std::optional<double> E;  // only for mu2 < 0
  std::string description;
  bool concave_unbounded = false;
};

// 1/mu1 + 1/mu2 + 1/L2 with 1/0 = +inf.
double threshold_B(const Splitting& s) noexcept;
// Boundary quantity between p1 and p3; empty unless mu2 < 0.
std::optional<double> boundary_E(const Splitting& s) noexcept;

// Evaluates the regime's formulas regardless of whether s lies in its domain.
Coefficients regime_coefficients(Regime r, const Splitting& s) noexcept;

// Literal domain membership; tol widens every comparison.
bool in_domain(Regime r, const Splitting& s, double tol = 0.0) noexcept;

RegimeReport classify(const Splitting& s, double tol = 0.0);

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
  double at(std::size_t i) const noexcept;
};

struct ContourCell {
  double mu2 = 0.0;
  double L2 = 0.0;
  std::optional<Regime> regime;  // empty: infeasible cell
  double p = 0.0;
  double sigma = 0.0;
  double sigma_plus = 0.0;
};

// Row-major over (mu2, L2). Cells that are not valid splittings with the decrease
// property are returned with an empty regime.
std::vector<ContourCell> contour_grid(double mu1, ExtReal L1, const GridAxis& mu2, const GridAxis& L2,
                                      double tol = 0.0);
std::vector<ContourCell> contour_grid_serial(double mu1, ExtReal L1, const GridAxis& mu2,
                                             const GridAxis& L2, double tol = 0.0);

}  // namespace dcatight
