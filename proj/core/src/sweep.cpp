#include "crlink/sweep.hpp"

#include <cstdio>
#include <fstream>

namespace crlink {

const std::vector<double>& lambda_low() {
  static const std::vector<double> v{3.0, 2.0, 1.0, 2.5, 3.6, 4.0, 6.0, 2.4, 3.2};
  return v;
}

const std::vector<double>& lambda_high() {
  static const std::vector<double> v{30.0, 20.0, 10.0, 25.0, 36.0, 40.0, 60.0, 24.0, 32.0};
  return v;
}

const std::vector<double>& lambda_moderate() {
  static const std::vector<double> v{18.0, 12.0, 6.0, 15.0, 21.6, 24.0, 36.0, 14.4, 19.2};
  return v;
}

namespace {

constexpr TrafficModel kModels[] = {TrafficModel::markov, TrafficModel::poisson};

std::uint64_t row_seed(std::uint64_t master, TrafficModel model, std::uint32_t s) {
  const std::uint64_t stream =
      (static_cast<std::uint64_t>(model == TrafficModel::poisson) << 32) | s;
  return derive_seed(master, stream);
}

EfficiencyInputs efficiency_inputs(const Scenario& scenario, std::uint32_t subchannels) {
  return EfficiencyInputs(scenario.coding.dep_target, scenario.coding.gop_packets,
                          scenario.link.packet_bits, subchannels,
                          scenario.link.bandwidth_hz, scenario.frame.frame_s);
}

}  // namespace

SweepResult sweep_subchannels(const Scenario& scenario, const std::vector<double>& lambdas,
                              std::uint32_t s_min, std::uint32_t s_max,
                              const SweepOptions& options) {
  if (s_min < 1) throw ValidationError("S >= 1 required");
  if (s_max < s_min) throw ValidationError("empty subchannel range");
  if (s_max > scenario.pool.size()) {
    throw ValidationError("S exceeds pool size: " + std::to_string(s_max));
  }
  const std::uint64_t needed = required_packets(scenario.coding.gop_packets);
  const double p_coll = collision_probability(scenario.access);

  // per (model, S) analytic success via an incremental convolution fold
  std::vector<std::vector<SweepRow>> per_model(2);
  for (int mi = 0; mi < 2; ++mi) {
    const TrafficModel model = kModels[mi];
    const LinkSpec full = scenario.link_spec(model, s_max, lambdas);
    PacketPmf acc;
    for (std::uint32_t s = 1; s <= s_max; ++s) {
      const PacketPmf next = packets_pmf(full.profiles[s - 1], scenario.frame, full);
      acc = (s == 1) ? next : convolve(acc, next);
      if (s < s_min) continue;

      const double p_success = success_probability(acc, needed);
      const LinkSpec sub = scenario.link_spec(model, s, lambdas);
      const McEstimate mc = estimate_success(
          sub, scenario.frame, needed,
          TrialConfig(options.trials, row_seed(options.seed, model, s)));
      const double se = spectral_efficiency(efficiency_inputs(scenario, s), p_success, p_coll);
      per_model[mi].push_back(SweepRow{static_cast<double>(s), model, p_success, p_coll,
                                       se, mc.mean, mc.std_error});
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < per_model[0].size(); ++i) {
    result.rows.push_back(per_model[0][i]);
    result.rows.push_back(per_model[1][i]);
  }
  return result;
}

SweepResult sweep_p(const Scenario& scenario, const std::vector<double>& lambdas,
                    const SweepOptions& options) {
  if (!(options.grid_step > 0.0 && options.grid_step <= 0.5)) {
    throw ValidationError("grid_step out of (0, 0.5]: " + std::to_string(options.grid_step));
  }
  const auto subchannels =
      options.subchannels.value_or(static_cast<std::uint32_t>(scenario.pool.size()));
  const std::uint64_t needed = required_packets(scenario.coding.gop_packets);
  const EfficiencyInputs eff = efficiency_inputs(scenario, subchannels);

  std::vector<double> grid;
  for (std::uint64_t i = 0;; ++i) {
    const double p = static_cast<double>(i) * options.grid_step;
    if (p >= 1.0) break;
    grid.push_back(p);
  }
  grid.push_back(1.0);

  double p_success[2];
  McEstimate mc[2] = {{0, 0, 0}, {0, 0, 0}};
  for (int mi = 0; mi < 2; ++mi) {
    const TrafficModel model = kModels[mi];
    const LinkSpec link = scenario.link_spec(model, subchannels, lambdas);
    p_success[mi] = success_probability(link_pmf(link, scenario.frame), needed);
    mc[mi] = estimate_success(link, scenario.frame, needed,
                              TrialConfig(options.trials,
                                          row_seed(options.seed, model, subchannels)));
  }

  SweepResult result;
  PSweepPeak peaks[2] = {{TrafficModel::markov, grid.front(), -1.0},
                         {TrafficModel::poisson, grid.front(), -1.0}};
  for (const double p : grid) {
    const double p_coll = collision_probability(scenario.access.with_p(p));
    for (int mi = 0; mi < 2; ++mi) {
      const double se = spectral_efficiency(eff, p_success[mi], p_coll);
      result.rows.push_back(SweepRow{p, kModels[mi], p_success[mi], p_coll, se,
                                     mc[mi].mean, mc[mi].std_error});
      if (se > peaks[mi].se_max) {  // strict: ties keep the smaller p
        peaks[mi].se_max = se;
        peaks[mi].p_star = p;
      }
    }
  }
  result.peaks.assign(peaks, peaks + 2);
  return result;
}

namespace {

void append_sig(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  out += buf;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out = "sweep_var,model,p_success,p_collision,se,mc_mean,mc_stderr\n";
  for (const SweepRow& row : result.rows) {
    append_sig(out, row.sweep_var);
    out += ',';
    out += to_string(row.model);
    out += ',';
    append_sig(out, row.p_success);
    out += ',';
    append_sig(out, row.p_collision);
    out += ',';
    append_sig(out, row.se);
    out += ',';
    append_sig(out, row.mc_mean);
    out += ',';
    append_sig(out, row.mc_stderr);
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << to_csv(result);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace crlink
