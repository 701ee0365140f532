#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crlink/montecarlo.hpp"
#include "crlink/scenario.hpp"

namespace crlink {

struct SweepRow {
  double sweep_var;  // S for subchannel sweeps, p for access sweeps
  TrafficModel model;
  double p_success;
  double p_collision;
  double se;
  double mc_mean;
  double mc_stderr;
};

/// Per-model argmax of the p sweeps.
struct PSweepPeak {
  TrafficModel model;
  double p_star;
  double se_max;
};

struct SweepResult {
  std::vector<SweepRow> rows;     // ordered by (sweep value, model)
  std::vector<PSweepPeak> peaks;  // filled by sweep_p only
};

struct SweepOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  double grid_step = 0.005;
  std::optional<std::uint32_t> subchannels;  // p sweeps: S (default: full pool)
};

/// Arrival-rate vectors of the three reference experiments.
const std::vector<double>& lambda_low();       // fig5 / fig8
const std::vector<double>& lambda_high();      // fig6 / fig9
const std::vector<double>& lambda_moderate();  // fig7

/// Success probability versus link size. For each S in [s_min, s_max] and
/// each traffic model: analytic P_success over the first S pool entries,
/// a seeded Monte-Carlo estimate of the same quantity, the collision
/// probability at the scenario's access point, and the spectral efficiency.
SweepResult sweep_subchannels(const Scenario& scenario, const std::vector<double>& lambdas,
                              std::uint32_t s_min, std::uint32_t s_max,
                              const SweepOptions& options);

/// Spectral efficiency versus the foreign-slot transmit probability p on
/// the grid {0, step, ..., 1}. P_success does not depend on p and is
/// computed once per model (as is its Monte-Carlo estimate).
SweepResult sweep_p(const Scenario& scenario, const std::vector<double>& lambdas,
                    const SweepOptions& options);

/// Exact output schema: header
///   sweep_var,model,p_success,p_collision,se,mc_mean,mc_stderr
/// then one row per entry, 12 significant digits, LF line endings.
std::string to_csv(const SweepResult& result);

void emit_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace crlink
