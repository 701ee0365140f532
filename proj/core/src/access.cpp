#include "crlink/access.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace crlink {

namespace {

void check_probability(double value, const char* field) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(std::string(field) + " out of [0,1]: " + std::to_string(value));
  }
}

}  // namespace

AccessParams::AccessParams(double p, double q, std::uint32_t slots, std::uint32_t degree,
                           std::uint32_t links)
    : p(p), q(q), slots(slots), degree(degree), links(links) {
  check_probability(p, "p");
  check_probability(q, "q");
  if (slots < 1) throw ValidationError("slots must be >= 1");
  if (degree < 1) throw ValidationError("degree must be >= 1");
  if (links < 1) throw ValidationError("links must be >= 1");
}

AccessParams AccessParams::with_p(double new_p) const {
  return AccessParams(new_p, q, slots, degree, links);
}

EfficiencyInputs::EfficiencyInputs(double dep, std::uint64_t gop_packets,
                                   std::uint64_t packet_bits, std::uint32_t subchannels,
                                   double bandwidth_hz, double frame_s)
    : dep(dep), gop_packets(gop_packets), packet_bits(packet_bits),
      subchannels(subchannels), bandwidth_hz(bandwidth_hz), frame_s(frame_s) {
  check_probability(dep, "dep");
  if (gop_packets < 1) throw ValidationError("gop_packets must be >= 1");
  if (packet_bits < 1) throw ValidationError("packet_bits must be >= 1");
  if (subchannels < 1) throw ValidationError("subchannels must be >= 1");
  if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth_hz must be > 0");
  if (!(frame_s > 0.0)) throw ValidationError("frame_s must be > 0");
}

double collision_probability(const AccessParams& a) {
  const double m = static_cast<double>(a.slots);
  const double own = a.q * (1.0 - a.p);
  const double foreign = (m - 1.0) * a.p * (2.0 - a.p - a.q);
  const double h = (own + foreign) / m *
                   std::pow(1.0 - a.p, static_cast<double>(a.degree) - 1.0);
  return std::pow(1.0 - h, static_cast<double>(a.links));
}

double end_to_end_success(double p_success, double p_collision) {
  check_probability(p_success, "p_success");
  check_probability(p_collision, "p_collision");
  return p_success * (1.0 - p_collision);
}

double spectral_efficiency(const EfficiencyInputs& e, double p_success, double p_collision) {
  check_probability(p_success, "p_success");
  check_probability(p_collision, "p_collision");
  const double payload_bits =
      static_cast<double>(e.gop_packets) * static_cast<double>(e.packet_bits);
  return (1.0 - e.dep) * (1.0 - p_collision) * p_success * payload_bits /
         (static_cast<double>(e.subchannels) * e.bandwidth_hz * e.frame_s);
}

OptimizeResult optimize_p(const AccessParams& base, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw ValidationError("grid_step out of (0, 0.5]: " + std::to_string(grid_step));
  }
  std::vector<double> grid;
  for (std::uint64_t i = 0;; ++i) {
    const double p = static_cast<double>(i) * grid_step;
    if (p >= 1.0) break;
    grid.push_back(p);
  }
  grid.push_back(1.0);

  double best_p = grid.front();
  double best_value = 1.0 - collision_probability(base.with_p(grid.front()));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double value = 1.0 - collision_probability(base.with_p(grid[i]));
    if (value > best_value) {  // strict: ties keep the smaller p
      best_value = value;
      best_p = grid[i];
    }
  }
  return OptimizeResult{best_p, best_value};
}

}  // namespace crlink
