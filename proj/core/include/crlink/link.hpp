#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "crlink/traffic.hpp"

namespace crlink {

/// One subchannel: its primary-traffic law plus the fading/noise loss
/// fraction. The loss thins the nominal capacity, it does not shorten the
/// available time.
struct SubchannelProfile {
  std::variant<MarkovChainParams, PoissonParams> model;
  double loss;

  SubchannelProfile(MarkovChainParams markov, double loss);
  SubchannelProfile(PoissonParams poisson, double loss);

  bool is_markov() const { return std::holds_alternative<MarkovChainParams>(model); }

  friend bool operator==(const SubchannelProfile&, const SubchannelProfile&) = default;
};

/// The composed secondary link: S subchannels sharing a common capacity,
/// packet size and bandwidth.
struct LinkSpec {
  std::vector<SubchannelProfile> profiles;
  double capacity_bps;       // R_0, common to all subchannels
  std::uint64_t packet_bits; // L
  double bandwidth_hz;       // W, per subchannel

  LinkSpec(std::vector<SubchannelProfile> profiles, double capacity_bps,
           std::uint64_t packet_bits, double bandwidth_hz);
};

/// Discrete distribution over delivered-packet counts 0..k_max.
struct PacketPmf {
  std::vector<double> masses;

  std::uint64_t k_max() const { return masses.empty() ? 0 : masses.size() - 1; }
  double total() const;
  double mean() const;

  static PacketPmf delta(std::uint64_t k);
};

/// Post-loss packet rate of a subchannel: (1 - loss) * R_0 / L packets/s.
double packet_rate(const SubchannelProfile& profile, const LinkSpec& link);

/// Whole packets deliverable in t seconds at the given rate: floor(rate*t).
/// A partially transmitted packet is not received.
std::uint64_t packets_for_time(double rate_pkts_per_s, double t_s);

/// Maximum packets one subchannel can carry in one frame.
std::uint64_t packet_capacity(const SubchannelProfile& profile, const FramePlan& frame,
                              const LinkSpec& link);

/// Delivered-packet distribution of one subchannel over one frame.
/// Markov: the availability masses land on floor(rate * m * slot_s).
/// Poisson: exact binning of the exponential arrival time; the top bin
/// collects the survival mass at the full data horizon.
PacketPmf packets_pmf(const SubchannelProfile& profile, const FramePlan& frame,
                      const LinkSpec& link);

/// Distribution of the sum of two independent packet counts.
PacketPmf convolve(const PacketPmf& a, const PacketPmf& b);

/// Left fold of convolve over the per-subchannel distributions, in profile
/// order (fixed order keeps results bit-stable).
PacketPmf link_pmf(const LinkSpec& link, const FramePlan& frame);

/// Pr(delivered >= needed).
double success_probability(const PacketPmf& pmf, std::uint64_t needed);

/// Encoded packets required to recover a K-packet group: ceil(1.05 * K),
/// evaluated in exact integer arithmetic (21K/20).
std::uint64_t required_packets(std::uint64_t gop_packets);

}  // namespace crlink
