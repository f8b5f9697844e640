#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dcatight/regimes.hpp"

namespace dcatight {

struct RateBound {
  double p = 0.0;
  long N = 0;
  double bound_simple = 0.0;           // deltaF / (p N)
  std::optional<double> bound_flo;     // (F(x0) - F_lo) / (p N + 1/(L1 - mu2))
};

RateBound rate_bound(const Splitting& s, long N, double deltaF, std::optional<double> flo_gap = std::nullopt);

// All four curvatures decreased by lambda; validity is re-checked.
Splitting shifted_splitting(const Splitting& s, double lambda, DecreaseCheck check = DecreaseCheck::Enforce);

struct ShiftSearch {
  std::optional<double> lambda_lo;  // default: mu2 - 10 max(1, |mu1|, |mu2|)
  std::optional<double> lambda_hi;  // caps the feasible interval; the cap itself is included
  std::size_t grid_points = 4096;
  double refine_tol = 1e-10;
  bool keep_profile = false;
};

struct ShiftInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_included = false;
};

struct ProfilePoint {
  double lambda = 0.0;
  double p = 0.0;
  Regime regime = Regime::Degenerate;
};

struct RegimeTransition {
  double lambda_left = 0.0;
  double lambda_right = 0.0;
  Regime from = Regime::Degenerate;
  Regime to = Regime::Degenerate;
};

struct ShiftResult {
  double lambda_star = 0.0;
  double p_star = 0.0;
  Regime regime_at_star = Regime::Degenerate;
  double lambda_max = 0.0;  // (mu1 + min(mu1, mu2)) / 2
  ShiftInterval interval;
  std::vector<ProfilePoint> profile;
  std::vector<RegimeTransition> transitions;
};

ShiftInterval feasible_shift_interval(const Splitting& s, const ShiftSearch& search = {});

// p of the shifted splitting; throws when lambda is not a feasible shift.
ProfilePoint shifted_rate(const Splitting& s, double lambda);

std::vector<ProfilePoint> shift_profile(const Splitting& s, const std::vector<double>& lambdas);
std::vector<ProfilePoint> shift_profile_serial(const Splitting& s, const std::vector<double>& lambdas);

ShiftResult optimize_shift(const Splitting& s, const ShiftSearch& search = {});

}  // namespace dcatight
