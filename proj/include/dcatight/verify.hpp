#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcatight {

// A metric passes when worst >= threshold (lower_is_worse) or worst <= threshold otherwise.
struct SuiteMetric {
  std::string name;
  double worst = 0.0;
  double threshold = 0.0;
  bool lower_is_worse = false;
  bool passed() const noexcept { return lower_is_worse ? worst >= threshold : worst <= threshold; }
};

struct SuiteResult {
  std::string suite;
  std::size_t samples = 0;
  std::vector<SuiteMetric> metrics;
  bool complete = true;  // false if a sampler could not produce the requested number of points
  bool passed() const noexcept;
};

// One-step decrease bound and the two-sided step-size bounds on random in-class 1-D instances.
SuiteResult verify_bounds(std::size_t samples, std::uint64_t seed);
// Agreement of neighbouring regime formulas on B = 0, E = 0, L1 = L2 and L2 = mu1.
SuiteResult verify_boundaries(std::size_t samples, std::uint64_t seed);
// p1 <-> p2 under (mu1, L1) <-> (mu2, L2).
SuiteResult verify_swap(std::size_t samples, std::uint64_t seed);
// PGD and its DCA form produce the same iterates and residuals.
SuiteResult verify_pgd_equiv(std::size_t samples, std::uint64_t seed);

inline constexpr std::string_view kSuiteNames[] = {"bounds", "boundaries", "swap", "pgd-equiv"};

// suite is one of kSuiteNames or "all".
std::vector<SuiteResult> run_verify(std::string_view suite, std::size_t samples, std::uint64_t seed);

}  // namespace dcatight
