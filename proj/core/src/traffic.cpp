#include "crlink/traffic.hpp"

#include <cmath>
#include <string>

namespace crlink {

namespace {

void check_probability(double value, const char* field) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(std::string(field) + " out of [0,1]: " + std::to_string(value));
  }
}

}  // namespace

MarkovChainParams::MarkovChainParams(double p_stay, double gamma)
    : p_stay(p_stay), gamma(gamma) {
  check_probability(p_stay, "p_stay");
  check_probability(gamma, "gamma");
}

PoissonParams::PoissonParams(double lambda) : lambda(lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be finite and >= 0: " + std::to_string(lambda));
  }
}

FramePlan::FramePlan(double frame_s, double sensing_s, std::uint32_t slots)
    : frame_s(frame_s), sensing_s(sensing_s), slots(slots),
      slot_s((frame_s - sensing_s) / slots) {
  if (!(frame_s > 0.0) || !std::isfinite(frame_s)) {
    throw ValidationError("frame_s must be finite and > 0: " + std::to_string(frame_s));
  }
  if (!(sensing_s >= 0.0 && sensing_s < frame_s)) {
    throw ValidationError("sensing_s must satisfy 0 <= sensing_s < frame_s: " +
                          std::to_string(sensing_s));
  }
  if (slots < 1) {
    throw ValidationError("slots must be >= 1");
  }
}

double AvailabilityPmf::total() const {
  double sum = 0.0;
  for (double m : masses) sum += m;
  return sum;
}

MarkovChainParams validate_markov(double p_stay, double gamma) {
  return MarkovChainParams(p_stay, gamma);
}

AvailabilityPmf markov_availability_pmf(const MarkovChainParams& chain, const FramePlan& frame) {
  const std::uint32_t m_max = frame.slots;
  const double g = chain.gamma;
  const double p = chain.p_stay;

  std::vector<double> masses(m_max + 1, 0.0);
  masses[0] = g * (1.0 - p) + (1.0 - g);
  double p_pow = p;  // p^m
  for (std::uint32_t m = 1; m < m_max; ++m) {
    masses[m] = g * p_pow * (1.0 - p);
    p_pow *= p;
  }
  masses[m_max] = g * p_pow;
  return AvailabilityPmf{std::move(masses)};
}

double poisson_availability_cdf(const PoissonParams& params, double t_s) {
  if (!(t_s >= 0.0)) {
    throw ValidationError("t must be >= 0: " + std::to_string(t_s));
  }
  return -std::expm1(-params.lambda * t_s);
}

}  // namespace crlink
