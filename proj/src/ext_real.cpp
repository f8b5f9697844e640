#include "dcatight/ext_real.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "dcatight/error.hpp"

namespace dcatight {

ExtReal::ExtReal(double v) : v_(v) {
  if (std::isnan(v) || v == -kInf)
    throw Error(ErrorCode::InvalidArgument, "extended real must be finite or +inf");
}

ExtReal ExtReal::infinity() noexcept { return ExtReal(kInf, Raw{}); }

ExtReal inv(ExtReal x) noexcept {
  if (x.value() == 0.0) return ExtReal::infinity();
  return ExtReal(1.0 / x.value());
}

ExtReal operator-(ExtReal a, double b) noexcept {
  return a.is_inf() ? a : ExtReal(a.value() - b);
}

ExtReal operator+(ExtReal a, double b) noexcept {
  return a.is_inf() ? a : ExtReal(a.value() + b);
}

ExtReal parse_ext_real(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity")
    return ExtReal::infinity();

  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "cannot parse '" + std::string(text) + "' as a number or inf");
  return ExtReal(v);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace dcatight
