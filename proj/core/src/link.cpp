#include "crlink/link.hpp"

#include <cmath>
#include <string>

namespace crlink {

namespace {

void check_loss(double loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw ValidationError("loss out of [0,1]: " + std::to_string(loss));
  }
}

}  // namespace

SubchannelProfile::SubchannelProfile(MarkovChainParams markov, double loss)
    : model(markov), loss(loss) {
  check_loss(loss);
}

SubchannelProfile::SubchannelProfile(PoissonParams poisson, double loss)
    : model(poisson), loss(loss) {
  check_loss(loss);
}

LinkSpec::LinkSpec(std::vector<SubchannelProfile> profiles, double capacity_bps,
                   std::uint64_t packet_bits, double bandwidth_hz)
    : profiles(std::move(profiles)), capacity_bps(capacity_bps),
      packet_bits(packet_bits), bandwidth_hz(bandwidth_hz) {
  if (this->profiles.empty()) throw ValidationError("link needs at least one subchannel");
  if (!(capacity_bps > 0.0)) throw ValidationError("capacity_bps must be > 0");
  if (packet_bits < 1) throw ValidationError("packet_bits must be >= 1");
  if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth_hz must be > 0");
}

double PacketPmf::total() const {
  double sum = 0.0;
  for (double m : masses) sum += m;
  return sum;
}

double PacketPmf::mean() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) acc += static_cast<double>(k) * masses[k];
  return acc;
}

PacketPmf PacketPmf::delta(std::uint64_t k) {
  std::vector<double> masses(k + 1, 0.0);
  masses[k] = 1.0;
  return PacketPmf{std::move(masses)};
}

double packet_rate(const SubchannelProfile& profile, const LinkSpec& link) {
  return (1.0 - profile.loss) * link.capacity_bps / static_cast<double>(link.packet_bits);
}

std::uint64_t packets_for_time(double rate_pkts_per_s, double t_s) {
  return static_cast<std::uint64_t>(std::floor(rate_pkts_per_s * t_s));
}

std::uint64_t packet_capacity(const SubchannelProfile& profile, const FramePlan& frame,
                              const LinkSpec& link) {
  return packets_for_time(packet_rate(profile, link), frame.data_horizon_s());
}

namespace {

PacketPmf markov_packets_pmf(const MarkovChainParams& chain, double rate,
                             const FramePlan& frame) {
  const AvailabilityPmf avail = markov_availability_pmf(chain, frame);
  const std::uint64_t k_cap = packets_for_time(rate, frame.slots * frame.slot_s);
  std::vector<double> masses(k_cap + 1, 0.0);
  for (std::uint32_t m = 0; m < avail.masses.size(); ++m) {
    const std::uint64_t k = packets_for_time(rate, m * frame.slot_s);
    masses[k] += avail.masses[m];  // distinct m can land on the same k
  }
  return PacketPmf{std::move(masses)};
}

PacketPmf poisson_packets_pmf(const PoissonParams& poisson, double rate,
                              const FramePlan& frame) {
  const double horizon = frame.data_horizon_s();
  const std::uint64_t k_full = packets_for_time(rate, horizon);
  std::vector<double> masses(k_full + 1, 0.0);
  if (poisson.lambda == 0.0) {
    masses[k_full] = 1.0;  // primary never arrives, full horizon available
    return PacketPmf{std::move(masses)};
  }
  // Pr(k) = Pr(k/rate <= tau < (k+1)/rate); the top bin keeps everything
  // from k_full/rate on, including the survival mass beyond the horizon.
  double upper = 1.0;  // exp(-lambda * k / rate) at k = 0
  for (std::uint64_t k = 0; k < k_full; ++k) {
    const double next = std::exp(-poisson.lambda * static_cast<double>(k + 1) / rate);
    masses[k] = upper - next;
    upper = next;
  }
  masses[k_full] = upper;
  return PacketPmf{std::move(masses)};
}

}  // namespace

PacketPmf packets_pmf(const SubchannelProfile& profile, const FramePlan& frame,
                      const LinkSpec& link) {
  const double rate = packet_rate(profile, link);
  if (rate <= 0.0) return PacketPmf::delta(0);  // full loss delivers nothing
  if (const auto* chain = std::get_if<MarkovChainParams>(&profile.model)) {
    return markov_packets_pmf(*chain, rate, frame);
  }
  return poisson_packets_pmf(std::get<PoissonParams>(profile.model), rate, frame);
}

PacketPmf convolve(const PacketPmf& a, const PacketPmf& b) {
  if (a.masses.empty() || b.masses.empty()) {
    throw ValidationError("convolve requires non-empty distributions");
  }
  std::vector<double> out(a.masses.size() + b.masses.size() - 1, 0.0);
  for (std::size_t j = 0; j < a.masses.size(); ++j) {
    const double aj = a.masses[j];
    if (aj == 0.0) continue;
    for (std::size_t i = 0; i < b.masses.size(); ++i) {
      out[j + i] += aj * b.masses[i];
    }
  }
  return PacketPmf{std::move(out)};
}

PacketPmf link_pmf(const LinkSpec& link, const FramePlan& frame) {
  PacketPmf acc = packets_pmf(link.profiles.front(), frame, link);
  for (std::size_t s = 1; s < link.profiles.size(); ++s) {
    acc = convolve(acc, packets_pmf(link.profiles[s], frame, link));
  }
  return acc;
}

double success_probability(const PacketPmf& pmf, std::uint64_t needed) {
  if (needed >= pmf.masses.size()) return 0.0;
  double tail = 0.0;
  for (std::size_t k = pmf.masses.size(); k-- > needed;) tail += pmf.masses[k];
  return tail < 0.0 ? 0.0 : (tail > 1.0 ? 1.0 : tail);
}

std::uint64_t required_packets(std::uint64_t gop_packets) {
  if (gop_packets == 0) throw ValidationError("gop_packets must be >= 1");
  // ceil(1.05 K) = ceil(21K / 20) without floating-point rounding
  return (21 * gop_packets + 19) / 20;
}

}  // namespace crlink
