#pragma once

#include <cstdint>

#include "crlink/link.hpp"
#include "crlink/rng.hpp"

namespace crlink {

struct TrialConfig {
  std::uint64_t trials;
  std::uint64_t master_seed;

  TrialConfig(std::uint64_t trials, std::uint64_t master_seed);
};

struct McEstimate {
  double mean;
  double std_error;  // sample std / sqrt(trials)
  std::uint64_t trials;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// One draw of the time a subchannel stays free within a frame, using the
/// caller's stream. Markov: whole slots until the chain first leaves the
/// free state. Poisson: min(exponential arrival, data horizon).
double sample_available_time(const SubchannelProfile& profile, const FramePlan& frame,
                             SplitMix64& rng);

/// Same draw from a fresh stream seeded with `seed`.
double simulate_available_time(const SubchannelProfile& profile, const FramePlan& frame,
                               std::uint64_t seed);

/// Empirical Pr(total delivered packets >= needed). Trial t draws from the
/// substream derive_seed(master_seed, t), so the estimate is independent of
/// execution order; successes aggregate as integer counts.
McEstimate estimate_success(const LinkSpec& link, const FramePlan& frame,
                            std::uint64_t needed, const TrialConfig& cfg);

/// |analytic - mean| <= k_sigma * max(std_error, 1e-6); the floor guards
/// zero-variance estimates.
bool agreement_check(double analytic, const McEstimate& estimate, double k_sigma);

}  // namespace crlink
