#pragma once

#include <cstdint>
#include <vector>

#include "crlink/errors.hpp"

namespace crlink {

/// Two-state (free/busy) primary-occupancy chain sampled once per slot.
/// p_stay is the free->free transition probability; gamma is the prior that
/// the subchannel is genuinely free when it is picked at sensing time.
/// The busy->free return probabilities never enter the availability law:
/// once the primary claims the subchannel the frame is lost.
struct MarkovChainParams {
  double p_stay;
  double gamma;

  MarkovChainParams(double p_stay, double gamma);

  double p_leave() const { return 1.0 - p_stay; }
  /// Initial state distribution (free, busy) implied by the sensing prior.
  std::pair<double, double> initial_distribution() const { return {gamma, 1.0 - gamma}; }

  friend bool operator==(const MarkovChainParams&, const MarkovChainParams&) = default;
};

/// Poisson primary arrivals: the first reclaim happens after an
/// exponential(lambda) delay. lambda == 0 means the primary never arrives
/// within any finite horizon.
struct PoissonParams {
  double lambda;

  explicit PoissonParams(double lambda);

  friend bool operator==(const PoissonParams&, const PoissonParams&) = default;
};

/// TDMA frame timing: a sensing phase followed by `slots` equal data slots.
struct FramePlan {
  double frame_s;
  double sensing_s;
  std::uint32_t slots;
  double slot_s;  // (frame_s - sensing_s) / slots

  FramePlan(double frame_s, double sensing_s, std::uint32_t slots);

  /// Usable transmission time per frame: slots * slot_s.
  double data_horizon_s() const { return slots * slot_s; }

  friend bool operator==(const FramePlan&, const FramePlan&) = default;
};

/// Distribution of the number of data slots left free by the primary,
/// masses[m] = Pr(available time = m * slot_s), m in 0..slots.
struct AvailabilityPmf {
  std::vector<double> masses;

  double total() const;
};

/// Range-checks the chain parameters (same contract as the constructor).
MarkovChainParams validate_markov(double p_stay, double gamma);

/// Closed-form availability law of the slotted chain:
///   masses[0] = gamma*(1-p_stay) + (1-gamma)
///   masses[m] = gamma * p_stay^m * (1-p_stay)    for 1 <= m <= M-1
///   masses[M] = gamma * p_stay^M
AvailabilityPmf markov_availability_pmf(const MarkovChainParams& chain, const FramePlan& frame);

/// Pr(first arrival <= t) = 1 - exp(-lambda t). Callers clamp at the frame
/// boundary; the survival mass exp(-lambda T) sits at the full horizon.
double poisson_availability_cdf(const PoissonParams& params, double t_s);

}  // namespace crlink
