#pragma once

#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace dcatight {

// A real number or +inf. -inf and NaN are rejected at construction.
class ExtReal {
 public:
  constexpr ExtReal() noexcept = default;
  ExtReal(double v);  // NOLINT: implicit on purpose, doubles are the common case

  static ExtReal infinity() noexcept;

  bool is_inf() const noexcept { return v_ == std::numeric_limits<double>::infinity(); }
  bool is_finite() const noexcept { return !is_inf(); }
  double value() const noexcept { return v_; }

  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) noexcept { return a.v_ <=> b.v_; }
  friend bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }

 private:
  struct Raw {};
  constexpr ExtReal(double v, Raw) noexcept : v_(v) {}
  double v_ = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// inv(0) = +inf, inv(+inf) = 0.
ExtReal inv(ExtReal x) noexcept;
// Same convention on raw doubles; used inside formulas.
inline double rcp(double x) noexcept { return x == 0.0 ? kInf : 1.0 / x; }

// inf - finite = inf; the shift never makes a finite bound infinite.
ExtReal operator-(ExtReal a, double b) noexcept;
ExtReal operator+(ExtReal a, double b) noexcept;

ExtReal parse_ext_real(std::string_view text);
std::string format_double(double v);
inline std::string format_ext_real(ExtReal v) { return format_double(v.value()); }

}  // namespace dcatight
