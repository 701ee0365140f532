#include "crlink/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace crlink {

TrialConfig::TrialConfig(std::uint64_t trials, std::uint64_t master_seed)
    : trials(trials), master_seed(master_seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
}

double sample_available_time(const SubchannelProfile& profile, const FramePlan& frame,
                             SplitMix64& rng) {
  if (const auto* chain = std::get_if<MarkovChainParams>(&profile.model)) {
    if (rng.next_double() >= chain->gamma) return 0.0;  // busy at sensing
    std::uint32_t free_slots = 0;
    for (std::uint32_t i = 0; i < frame.slots; ++i) {
      if (rng.next_double() < chain->p_stay) {
        ++free_slots;
      } else {
        break;  // the primary keeps the subchannel for the rest of the frame
      }
    }
    return free_slots * frame.slot_s;
  }
  const auto& poisson = std::get<PoissonParams>(profile.model);
  const double horizon = frame.data_horizon_s();
  if (poisson.lambda == 0.0) return horizon;
  return std::min(rng.next_exponential(poisson.lambda), horizon);
}

double simulate_available_time(const SubchannelProfile& profile, const FramePlan& frame,
                               std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_available_time(profile, frame, rng);
}

McEstimate estimate_success(const LinkSpec& link, const FramePlan& frame,
                            std::uint64_t needed, const TrialConfig& cfg) {
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(derive_seed(cfg.master_seed, t));
    std::uint64_t delivered = 0;
    for (const SubchannelProfile& profile : link.profiles) {
      const double available = sample_available_time(profile, frame, rng);
      delivered += packets_for_time(packet_rate(profile, link), available);
    }
    if (delivered >= needed) ++successes;
  }
  const double mean = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  double std_error = 0.0;
  if (cfg.trials > 1) {
    // Bernoulli sample variance with Bessel's correction
    std_error = std::sqrt(mean * (1.0 - mean) / static_cast<double>(cfg.trials - 1));
  }
  return McEstimate{mean, std_error, cfg.trials};
}

bool agreement_check(double analytic, const McEstimate& estimate, double k_sigma) {
  if (!(k_sigma > 0.0)) throw ValidationError("k_sigma must be > 0");
  constexpr double kErrorFloor = 1e-6;
  const double scale = std::max(estimate.std_error, kErrorFloor);
  return std::abs(analytic - estimate.mean) <= k_sigma * scale;
}

}  // namespace crlink
