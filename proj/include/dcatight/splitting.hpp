#pragma once

#include <optional>

#include "dcatight/ext_real.hpp"

namespace dcatight {

enum class DecreaseCheck { Enforce, Allow };

// Curvature classes of F = f1 - f2 with f1 in F_{mu1,L1} and f2 in F_{mu2,L2}.
// Only obtainable through validate_splitting.
class Splitting {
 public:
  double mu1() const noexcept { return mu1_; }
  ExtReal L1() const noexcept { return L1_; }
  double mu2() const noexcept { return mu2_; }
  ExtReal L2() const noexcept { return L2_; }

  bool degenerate() const noexcept { return mu1_ == 0.0 && mu2_ == 0.0; }
  bool decrease_guaranteed() const noexcept { return mu1_ + mu2_ > 0.0 || degenerate(); }

  friend bool operator==(const Splitting&, const Splitting&) = default;

 private:
  friend Splitting validate_splitting(double, ExtReal, double, ExtReal, DecreaseCheck);
  Splitting(double mu1, ExtReal L1, double mu2, ExtReal L2) : mu1_(mu1), L1_(L1), mu2_(mu2), L2_(L2) {}

  double mu1_;
  ExtReal L1_;
  double mu2_;
  ExtReal L2_;
};

Splitting validate_splitting(double mu1, ExtReal L1, double mu2, ExtReal L2,
                             DecreaseCheck check = DecreaseCheck::Enforce);

struct ObjectiveCurvatures {
  std::optional<double> mu_F;  // empty: F is unbounded below in curvature (L2 = inf)
  ExtReal L_F;
  bool nonconvex = false;
  bool nonconcave = false;
};

ObjectiveCurvatures objective_curvatures(const Splitting& s);

}  // namespace dcatight
