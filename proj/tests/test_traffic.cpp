#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "crlink/rng.hpp"
#include "crlink/traffic.hpp"

using namespace crlink;

namespace {

// Brute-force oracle: enumerate every trajectory X_0..X_M of the full
// two-state chain (including explicit busy->free return probabilities) and
// accumulate the law of the initial free-slot run. The availability PMF
// must not depend on p_return.
std::vector<double> enumerate_prefix_law(double p_stay, double gamma, double p_return,
                                         int slots) {
  const int states = slots + 1;  // X_0 (sensing) .. X_slots
  std::vector<double> law(slots + 1, 0.0);
  for (std::uint64_t bits = 0; bits < (1ull << states); ++bits) {
    // bit i set means "busy at index i"
    double prob = (bits & 1) ? (1.0 - gamma) : gamma;
    for (int i = 1; i < states && prob != 0.0; ++i) {
      const bool prev_busy = bits & (1ull << (i - 1));
      const bool cur_busy = bits & (1ull << i);
      prob *= prev_busy ? (cur_busy ? 1.0 - p_return : p_return)
                        : (cur_busy ? 1.0 - p_stay : p_stay);
    }
    if (prob == 0.0) continue;
    int lead_free = 0;
    while (lead_free < states && !(bits & (1ull << lead_free))) ++lead_free;
    const int m = (lead_free == states) ? slots : (lead_free == 0 ? 0 : lead_free - 1);
    law[m] += prob;
  }
  return law;
}

// exp(-x) for x >= 0 via the positive Taylor series of exp(x)
double exp_neg_series(double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; term > 1e-20 * sum; ++n) {
    term *= x / n;
    sum += term;
  }
  return 1.0 / sum;
}

template <typename Fn>
void check_validation_error(Fn&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected ValidationError mentioning '" << needle << "'");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("markov parameter validation") {
  const MarkovChainParams params = validate_markov(0.9, 1.0);
  CHECK(params.p_stay == 0.9);
  CHECK(params.initial_distribution().first == 1.0);
  CHECK(params.initial_distribution().second == 0.0);
  CHECK(params.p_leave() == doctest::Approx(0.1));

  check_validation_error([] { validate_markov(1.1, 0.5); }, "p_stay");
  check_validation_error([] { validate_markov(0.5, -0.1); }, "gamma");
  check_validation_error([] { validate_markov(std::nan(""), 0.5); }, "p_stay");
}

TEST_CASE("frame plan validation and slot arithmetic") {
  const FramePlan frame(1.0, 0.005, 10);
  CHECK(frame.slot_s == doctest::Approx(0.0995).epsilon(1e-12));
  CHECK(frame.data_horizon_s() == doctest::Approx(0.995).epsilon(1e-12));

  check_validation_error([] { FramePlan(1.0, 1.0, 10); }, "sensing_s");
  check_validation_error([] { FramePlan(1.0, -0.1, 10); }, "sensing_s");
  check_validation_error([] { FramePlan(1.0, 0.1, 0); }, "slots");
  check_validation_error([] { FramePlan(0.0, 0.0, 1); }, "frame_s");
}

TEST_CASE("markov availability closed form") {
  const FramePlan frame(1.0, 0.005, 10);

  const auto pmf = markov_availability_pmf(validate_markov(0.9, 1.0), frame);
  REQUIRE(pmf.masses.size() == 11);
  CHECK(pmf.masses[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(pmf.masses[1] == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(pmf.masses[10] == doctest::Approx(0.3486784401).epsilon(1e-12));

  const auto busy = markov_availability_pmf(validate_markov(0.8, 0.0), frame);
  CHECK(busy.masses[0] == 1.0);
  for (std::size_t m = 1; m < busy.masses.size(); ++m) CHECK(busy.masses[m] == 0.0);

  const auto absorbing = markov_availability_pmf(validate_markov(1.0, 1.0), frame);
  CHECK(absorbing.masses[10] == 1.0);
  CHECK(absorbing.masses[0] == 0.0);
}

TEST_CASE("markov availability equals exhaustive trajectory enumeration") {
  SplitMix64 rng(0x7261666669636572ull);
  for (int slots = 1; slots <= 12; ++slots) {
    for (int rep = 0; rep < 12; ++rep) {
      const double p_stay = rng.next_double();
      const double gamma = rng.next_double();
      const FramePlan frame(1.0, 0.0, static_cast<std::uint32_t>(slots));
      const auto pmf = markov_availability_pmf(validate_markov(p_stay, gamma), frame);
      for (const double p_return : {0.0, 0.37, 1.0}) {
        const auto oracle = enumerate_prefix_law(p_stay, gamma, p_return, slots);
        REQUIRE(oracle.size() == pmf.masses.size());
        for (std::size_t m = 0; m < oracle.size(); ++m) {
          CHECK(std::abs(pmf.masses[m] - oracle[m]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("markov availability normalizes for random parameters") {
  SplitMix64 rng(0x6e6f726d616c697aull);
  for (int rep = 0; rep < 1000; ++rep) {
    const double p_stay = rng.next_double();
    const double gamma = rng.next_double();
    const auto slots = static_cast<std::uint32_t>(1 + rng.next_below(64));
    const FramePlan frame(2.0, 0.25, slots);
    const auto pmf = markov_availability_pmf(validate_markov(p_stay, gamma), frame);
    CHECK(std::abs(pmf.total() - 1.0) <= 1e-12);
    for (const double m : pmf.masses) CHECK(m >= 0.0);
  }
}

TEST_CASE("full-survival mass is monotone in p_stay and gamma") {
  const FramePlan frame(1.0, 0.005, 10);
  SplitMix64 rng(0x6d6f6e6f746f6e65ull);
  for (int rep = 0; rep < 200; ++rep) {
    double a = rng.next_double(), b = rng.next_double();
    if (a > b) std::swap(a, b);
    const double gamma = rng.next_double();
    const auto low = markov_availability_pmf(validate_markov(a, gamma), frame);
    const auto high = markov_availability_pmf(validate_markov(b, gamma), frame);
    CHECK(high.masses.back() >= low.masses.back());

    const double p_stay = rng.next_double();
    const auto g_low = markov_availability_pmf(validate_markov(p_stay, a), frame);
    const auto g_high = markov_availability_pmf(validate_markov(p_stay, b), frame);
    CHECK(g_high.masses.back() >= g_low.masses.back());
  }
}

TEST_CASE("poisson availability cdf") {
  const PoissonParams arrivals(3.0);
  const double at_one = poisson_availability_cdf(arrivals, 1.0);
  CHECK(at_one == doctest::Approx(1.0 - exp_neg_series(3.0)).epsilon(1e-14));
  CHECK(at_one == doctest::Approx(0.950212931632136).epsilon(1e-12));

  CHECK(poisson_availability_cdf(PoissonParams(0.0), 123.0) == 0.0);
  CHECK(poisson_availability_cdf(arrivals, 0.0) == 0.0);
  CHECK(poisson_availability_cdf(arrivals, 1e6) == doctest::Approx(1.0).epsilon(1e-15));

  check_validation_error([&] { poisson_availability_cdf(arrivals, -1.0); }, ">= 0");
  check_validation_error([] { PoissonParams(-0.5); }, "lambda");

  // non-decreasing in t
  SplitMix64 rng(0x636466636466ull);
  for (int rep = 0; rep < 200; ++rep) {
    double t1 = rng.next_double() * 4.0, t2 = rng.next_double() * 4.0;
    if (t1 > t2) std::swap(t1, t2);
    CHECK(poisson_availability_cdf(arrivals, t1) <= poisson_availability_cdf(arrivals, t2));
  }
}
