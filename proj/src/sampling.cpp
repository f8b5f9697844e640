#include "dcatight/sampling.hpp"

#include <algorithm>

namespace dcatight {

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Splitting random_splitting(Rng& rng) {
  const double kind = uniform(rng, 0.0, 1.0);
  if (kind < 0.02) {
    const ExtReal L1 = uniform(rng, 0.0, 1.0) < 0.2 ? ExtReal::infinity() : ExtReal(uniform(rng, 0.05, 5.0));
    const ExtReal L2 = L1.is_inf() ? ExtReal(uniform(rng, 0.05, 5.0)) : ExtReal(uniform(rng, 0.05, 5.0));
    return validate_splitting(0.0, L1, 0.0, L2);
  }
  const double mu1 = kind < 0.07 ? 0.0 : uniform(rng, 0.01, 3.0);
  const double mu2 = mu1 > 0.0 ? -mu1 + (mu1 + 3.0) * uniform(rng, 1e-3, 1.0) : uniform(rng, 0.01, 3.0);
  const bool L1_inf = uniform(rng, 0.0, 1.0) < 0.1;
  const bool L2_inf = !L1_inf && uniform(rng, 0.0, 1.0) < 0.1;
  const ExtReal L1 = L1_inf ? ExtReal::infinity() : ExtReal(mu1 + uniform(rng, 0.01, 5.0));
  const ExtReal L2 = L2_inf ? ExtReal::infinity() : ExtReal(mu2 + uniform(rng, 0.01, 5.0));
  return validate_splitting(mu1, L1, mu2, L2);
}

std::optional<Splitting> random_splitting_in(Regime r, Rng& rng, int max_tries) {
  for (int i = 0; i < max_tries; ++i) {
    const Splitting s = random_splitting(rng);
    if (classify(s).regime == r) return s;
  }
  return std::nullopt;
}

Splitting random_p1_generator_splitting(Rng& rng) {
  for (;;) {
    const double mu1 = uniform(rng, 0.05, 2.0);
    const double L2 = mu1 + uniform(rng, 0.0, 3.0);
    const double L1 = L2 + uniform(rng, 0.01, 3.0);
    // Half the draws use a weakly convex f2; those are kept only when E <= 0.
    const double mu2 = uniform(rng, 0.0, 1.0) < 0.5 ? uniform(rng, 0.0, std::min(L2, L1) * 0.99)
                                                     : -mu1 * uniform(rng, 0.01, 0.99);
    const Splitting s = validate_splitting(mu1, L1, mu2, L2);
    if (in_domain(Regime::P1, s)) return s;
  }
}

Splitting random_p2_generator_splitting(Rng& rng) {
  const double mu1 = uniform(rng, 0.0, 2.0);
  const double mu2 = uniform(rng, 0.0, 2.0);
  const double L1 = std::max(mu1, mu2) + uniform(rng, 0.05, 3.0);
  const double L2 = L1 + uniform(rng, 0.05, 3.0);
  return validate_splitting(mu1, L1, mu2, L2);
}

}  // namespace dcatight
