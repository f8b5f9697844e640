#include "dcatight/rates_shift.hpp"

#include <algorithm>
#include <cmath>

#include "dcatight/error.hpp"

namespace dcatight {

RateBound rate_bound(const Splitting& s, long N, double deltaF, std::optional<double> flo_gap) {
  if (N < 1) throw Error(ErrorCode::InvalidN, "N must be at least 1");
  if (!(deltaF >= 0.0)) throw Error(ErrorCode::InvalidArgument, "deltaF must be nonnegative");
  if (flo_gap && !(*flo_gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "F(x0) - F_lo must be nonnegative");

  RateBound out;
  out.p = classify(s).p;
  out.N = N;
  const double pN = out.p * static_cast<double>(N);
  out.bound_simple = deltaF / pN;
  if (flo_gap && s.L1() > s.mu2()) out.bound_flo = *flo_gap / (pN + rcp((s.L1() - s.mu2()).value()));
  return out;
}

Splitting shifted_splitting(const Splitting& s, double lambda, DecreaseCheck check) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "shift must be finite");
  return validate_splitting(s.mu1() - lambda, s.L1() - lambda, s.mu2() - lambda, s.L2() - lambda, check);
}

ShiftInterval feasible_shift_interval(const Splitting& s, const ShiftSearch& search) {
  const double mu1 = s.mu1();
  const double mu2 = s.mu2();
  ShiftInterval iv;
  iv.lo = search.lambda_lo.value_or(mu2 - 10.0 * std::max({1.0, std::abs(mu1), std::abs(mu2)}));
  iv.hi = std::min(mu1, 0.5 * (mu1 + mu2));
  // lambda = mu1 leaves mu1' = 0, which is fine only when mu2' >= 0 as well.
  iv.hi_included = mu2 >= mu1;
  if (search.lambda_hi && *search.lambda_hi < iv.hi) {
    iv.hi = *search.lambda_hi;
    iv.hi_included = true;
  }
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi || (iv.lo == iv.hi && !iv.hi_included))
    throw Error(ErrorCode::InfeasibleRange, "requested shift range [" + format_double(iv.lo) + ", " +
                                                format_double(iv.hi) + "] contains no feasible shift");
  return iv;
}

ProfilePoint shifted_rate(const Splitting& s, double lambda) {
  const RegimeReport rep = classify(shifted_splitting(s, lambda));
  return {lambda, rep.p, rep.regime};
}

namespace {

ProfilePoint profile_point(const Splitting& s, double lambda) {
  try {
    return shifted_rate(s, lambda);
  } catch (const Error&) {
    return {lambda, -kInf, Regime::Degenerate};
  }
}

}  // namespace

std::vector<ProfilePoint> shift_profile(const Splitting& s, const std::vector<double>& lambdas) {
  std::vector<ProfilePoint> out(lambdas.size());
  const auto n = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = profile_point(s, lambdas[i]);
  return out;
}

std::vector<ProfilePoint> shift_profile_serial(const Splitting& s, const std::vector<double>& lambdas) {
  std::vector<ProfilePoint> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back(profile_point(s, l));
  return out;
}

ShiftResult optimize_shift(const Splitting& s, const ShiftSearch& search) {
  if (search.grid_points < 2) throw Error(ErrorCode::InvalidArgument, "grid_points must be at least 2");
  if (!(search.refine_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "refine_tol must be positive");

  ShiftResult res;
  res.interval = feasible_shift_interval(s, search);
  res.lambda_max = 0.5 * (s.mu1() + std::min(s.mu1(), s.mu2()));
  const double lo = res.interval.lo;
  const double hi = res.interval.hi;

  std::vector<double> grid;
  if (lo == hi) {
    grid.push_back(lo);
  } else {
    const GridAxis axis{lo, hi, search.grid_points};
    grid.reserve(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) grid.push_back(axis.at(i));
    if (!res.interval.hi_included) grid.pop_back();
  }

  const std::vector<ProfilePoint> prof = shift_profile(s, grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < prof.size(); ++i)
    if (prof[i].p > prof[best].p) best = i;
  if (!(prof[best].p > -kInf))
    throw Error(ErrorCode::InfeasibleRange, "no feasible shift found in the search range");

  for (std::size_t i = 1; i < prof.size(); ++i)
    if (prof[i].regime != prof[i - 1].regime && prof[i].p > -kInf && prof[i - 1].p > -kInf)
      res.transitions.push_back({prof[i - 1].lambda, prof[i].lambda, prof[i - 1].regime, prof[i].regime});

  ProfilePoint star = prof[best];
  if (grid.size() > 1) {
    // Golden-section search on the bracket around the best grid node. Interior
    // points only, so an excluded right endpoint is never evaluated.
    double a = grid[best == 0 ? 0 : best - 1];
    double b = best + 1 < grid.size() ? grid[best + 1] : hi;
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    ProfilePoint pc = profile_point(s, c);
    ProfilePoint pd = profile_point(s, d);
    while (b - a > search.refine_tol) {
      if (pc.p >= pd.p) {
        b = d;
        d = c;
        pd = pc;
        c = b - invphi * (b - a);
        pc = profile_point(s, c);
      } else {
        a = c;
        c = d;
        pc = pd;
        d = a + invphi * (b - a);
        pd = profile_point(s, d);
      }
      if (c >= d) break;
    }
    for (const ProfilePoint& cand : {pc, pd})
      if (cand.p > star.p) star = cand;
  }

  res.lambda_star = star.lambda;
  res.p_star = star.p;
  res.regime_at_star = star.regime;
  if (search.keep_profile) res.profile = prof;
  return res;
}

}  // namespace dcatight
