// crlink: success probability and spectral efficiency of a secondary
// link under Markov or Poisson primary traffic, with seeded Monte-Carlo
// cross-checks. Results land in CSV files; all randomness is governed by
// --seed, so identical invocations produce identical bytes.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crlink/rng.hpp"
#include "crlink/scenario.hpp"
#include "crlink/sweep.hpp"

namespace {

struct CliOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  std::string out;
  std::optional<std::uint32_t> subchannels;
  double grid_step = 0.005;
  std::string scenario_path;
};

void add_common_flags(CLI::App* cmd, CliOptions& opts, bool with_grid) {
  cmd->add_option("--trials", opts.trials, "Monte-Carlo trials per point")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "master seed for all randomness")
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "output CSV path (default: <command>.csv)");
  cmd->add_option("--subchannels", opts.subchannels, "link size S (default: full pool)")
      ->check(CLI::Range(1u, 9u));
  if (with_grid) {
    cmd->add_option("--grid-step", opts.grid_step, "p grid step")
        ->capture_default_str()
        ->check(CLI::Range(1e-6, 0.5));
  }
}

crlink::SweepOptions sweep_options(const CliOptions& opts) {
  crlink::SweepOptions so;
  so.trials = opts.trials;
  so.seed = opts.seed;
  so.grid_step = opts.grid_step;
  so.subchannels = opts.subchannels;
  return so;
}

void print_metadata(const std::string& command, const CliOptions& opts) {
  std::printf("# crlink %s rng=%s seed=%llu trials=%llu\n", command.c_str(),
              crlink::kRngId, static_cast<unsigned long long>(opts.seed),
              static_cast<unsigned long long>(opts.trials));
}

void write_result(const crlink::SweepResult& result, const std::string& command,
                  const CliOptions& opts) {
  const std::string path = opts.out.empty() ? command + ".csv" : opts.out;
  crlink::emit_csv(result, path);
  for (const auto& peak : result.peaks) {
    std::printf("# peak %s: p*=%g se=%.6g\n", crlink::to_string(peak.model), peak.p_star,
                peak.se_max);
  }
  std::printf("# wrote %s (%zu rows)\n", path.c_str(), result.rows.size());
}

void run_subchannel_sweep(const std::string& command, const std::vector<double>& lambdas,
                          const CliOptions& opts) {
  print_metadata(command, opts);
  const crlink::Scenario scenario = crlink::baseline_scenario();
  const auto s_max =
      opts.subchannels.value_or(static_cast<std::uint32_t>(scenario.pool.size()));
  const auto result = crlink::sweep_subchannels(scenario, lambdas, 1, s_max,
                                                sweep_options(opts));
  write_result(result, command, opts);
}

void run_p_sweep(const std::string& command, const std::vector<double>& lambdas,
                 const CliOptions& opts) {
  print_metadata(command, opts);
  const auto result =
      crlink::sweep_p(crlink::baseline_scenario(), lambdas, sweep_options(opts));
  write_result(result, command, opts);
}

void run_scenario(const CliOptions& opts) {
  print_metadata("run", opts);
  const crlink::Scenario scenario = crlink::load_scenario(opts.scenario_path);
  const auto s =
      opts.subchannels.value_or(static_cast<std::uint32_t>(scenario.pool.size()));
  const std::uint64_t needed = crlink::required_packets(scenario.coding.gop_packets);
  std::printf("# scenario %s: S=%u, N=%llu packets needed\n", opts.scenario_path.c_str(),
              s, static_cast<unsigned long long>(needed));

  // single-point "sweep" at the scenario's own pool rates
  std::vector<double> lambdas;
  for (const auto& entry : scenario.pool) lambdas.push_back(entry.lambda);
  const auto result =
      crlink::sweep_subchannels(scenario, lambdas, s, s, sweep_options(opts));
  for (const auto& row : result.rows) {
    std::printf("%-8s P_success=%.9f P_collision=%.9f SE=%.6f mc=%.6f+-%.6f\n",
                crlink::to_string(row.model), row.p_success, row.p_collision, row.se,
                row.mc_mean, row.mc_stderr);
  }
  write_result(result, "run", opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secondary-link performance under Markov/Poisson primary traffic"};
  app.require_subcommand(1);

  CliOptions opts;

  CLI::App* run = app.add_subcommand("run", "evaluate a scenario file at its pool size");
  run->add_option("scenario", opts.scenario_path, "scenario JSON file")->required();
  add_common_flags(run, opts, false);

  struct Preset {
    const char* name;
    const char* help;
    const std::vector<double>* lambdas;
    bool p_sweep;
  };
  const Preset presets[] = {
      {"fig5", "P_success vs S, low arrival rates", &crlink::lambda_low(), false},
      {"fig6", "P_success vs S, high arrival rates", &crlink::lambda_high(), false},
      {"fig7", "P_success vs S, moderate arrival rates", &crlink::lambda_moderate(), false},
      {"fig8", "spectral efficiency vs p, low arrival rates", &crlink::lambda_low(), true},
      {"fig9", "spectral efficiency vs p, high arrival rates", &crlink::lambda_high(), true},
  };
  for (const Preset& preset : presets) {
    CLI::App* cmd = app.add_subcommand(preset.name, preset.help);
    add_common_flags(cmd, opts, preset.p_sweep);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      run_scenario(opts);
    } else {
      for (const Preset& preset : presets) {
        if (!app.get_subcommand(preset.name)->parsed()) continue;
        if (preset.p_sweep) {
          run_p_sweep(preset.name, *preset.lambdas, opts);
        } else {
          run_subchannel_sweep(preset.name, *preset.lambdas, opts);
        }
      }
    }
  } catch (const crlink::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const crlink::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
