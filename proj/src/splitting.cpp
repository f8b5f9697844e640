#include "dcatight/splitting.hpp"

#include <cmath>

#include "dcatight/error.hpp"

namespace dcatight {

Splitting validate_splitting(double mu1, ExtReal L1, double mu2, ExtReal L2, DecreaseCheck check) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2))
    throw Error(ErrorCode::InvalidArgument, "mu1 and mu2 must be finite");
  if (mu1 < 0.0) throw Error(ErrorCode::NegativeMu1, "mu1 = " + format_double(mu1) + " < 0");
  if (!(mu1 < L1))
    throw Error(ErrorCode::CurvatureOrder,
                "need mu1 < L1, got mu1 = " + format_double(mu1) + ", L1 = " + format_ext_real(L1));
  if (!(mu2 < L2))
    throw Error(ErrorCode::CurvatureOrder,
                "need mu2 < L2, got mu2 = " + format_double(mu2) + ", L2 = " + format_ext_real(L2));

  Splitting s(mu1, L1, mu2, L2);
  if (check == DecreaseCheck::Enforce && !s.decrease_guaranteed())
    throw Error(ErrorCode::NoDecreaseGuarantee,
                "mu1 + mu2 = " + format_double(mu1 + mu2) + " <= 0 (pass an override to explore anyway)");
  return s;
}

ObjectiveCurvatures objective_curvatures(const Splitting& s) {
  ObjectiveCurvatures out;
  if (s.L2().is_finite()) out.mu_F = s.mu1() - s.L2().value();
  out.L_F = s.L1() - s.mu2();
  out.nonconvex = s.L2() > s.mu1();
  out.nonconcave = s.L1() > s.mu2();
  return out;
}

}  // namespace dcatight
