#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "dcatight/regimes.hpp"

namespace dcatight {

using Rng = std::mt19937_64;

// Independent stream per sample index, so parallel loops draw the same numbers as serial ones.
Rng sample_rng(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);

// A valid splitting with the decrease property; mixes infinite L, zero mu, negative mu2 and L2 <= 0.
Splitting random_splitting(Rng& rng);

// Rejection sampling from random_splitting; empty if no hit within max_tries.
std::optional<Splitting> random_splitting_in(Regime r, Rng& rng, int max_tries = 10000);

// Parameters accepted by the worst-case generators (finite L, mu1 > 0 for p1).
Splitting random_p1_generator_splitting(Rng& rng);
Splitting random_p2_generator_splitting(Rng& rng);

}  // namespace dcatight
