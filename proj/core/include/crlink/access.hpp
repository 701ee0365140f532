#pragma once

#include <cstdint>

#include "crlink/errors.hpp"

namespace crlink {

/// Opportunistic TDMA access parameters. Every user transmits in its own
/// slot with probability q and in each of the other M-1 slots with
/// probability p; degree is the receiver's secondary neighbor count and
/// links the number of disjoint secondary user links formed.
struct AccessParams {
  double p;
  double q;
  std::uint32_t slots;   // M
  std::uint32_t degree;  // Deg_v, >= 1 (the exponent degree-1 is undefined at 0)
  std::uint32_t links;   // N_sul

  AccessParams(double p, double q, std::uint32_t slots, std::uint32_t degree,
               std::uint32_t links);

  AccessParams with_p(double new_p) const;

  friend bool operator==(const AccessParams&, const AccessParams&) = default;
};

/// Everything the spectral-efficiency metric needs besides the two
/// probabilities it composes.
struct EfficiencyInputs {
  double dep;                 // decoding error probability of the code
  std::uint64_t gop_packets;  // K
  std::uint64_t packet_bits;  // L
  std::uint32_t subchannels;  // S
  double bandwidth_hz;        // W
  double frame_s;             // T

  EfficiencyInputs(double dep, std::uint64_t gop_packets, std::uint64_t packet_bits,
                   std::uint32_t subchannels, double bandwidth_hz, double frame_s);
};

/// Average collision probability over the secondary user links:
///   h = [q(1-p) + (M-1) p (2-p-q)] / M * (1-p)^(degree-1)
///   P_collision = (1 - h)^links
/// The formula stays inside [0,1] for all valid inputs; no clamping.
double collision_probability(const AccessParams& a);

/// P_success * (1 - P_collision): primary interruptions and secondary
/// collisions are independent.
double end_to_end_success(double p_success, double p_collision);

/// (1-dep) * (1-P_collision) * P_success * K * L / (S * W * T), bits/s/Hz.
double spectral_efficiency(const EfficiencyInputs& e, double p_success, double p_collision);

struct OptimizeResult {
  double p_star;
  double value;  // maximal 1 - P_collision
};

/// Grid search of 1 - collision_probability over p in {0, step, 2 step, ..., 1};
/// ties break toward the smaller p. The other efficiency factors do not
/// depend on p, so this argmax also maximizes spectral efficiency.
OptimizeResult optimize_p(const AccessParams& base, double grid_step);

}  // namespace crlink
