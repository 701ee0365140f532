#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crlink/access.hpp"
#include "crlink/link.hpp"
#include "crlink/traffic.hpp"

namespace crlink {

enum class TrafficModel { markov, poisson };

const char* to_string(TrafficModel model);

/// One subchannel of the scenario pool. Both primary-traffic laws are
/// parameterized so the same pool can be evaluated under either model;
/// loss and gamma are shared between them.
struct PoolEntry {
  double p_stay;
  double lambda;
  double loss;
  double gamma;

  friend bool operator==(const PoolEntry&, const PoolEntry&) = default;
};

struct CodingParams {
  std::uint64_t gop_packets;  // K
  double c;
  double delta;
  double dep_target;

  friend bool operator==(const CodingParams&, const CodingParams&) = default;
};

struct LinkConstants {
  double capacity_bps;        // R_0
  std::uint64_t packet_bits;  // L
  double bandwidth_hz;        // W

  friend bool operator==(const LinkConstants&, const LinkConstants&) = default;
};

/// A full experiment description. access.slots always mirrors frame.slots;
/// the JSON form carries the slot count once, under "frame".
struct Scenario {
  std::vector<PoolEntry> pool;  // 1..9 entries, evaluated in listed order
  FramePlan frame;
  AccessParams access;
  CodingParams coding;
  LinkConstants link;

  /// Link over the first `subchannels` pool entries. For the Poisson model
  /// a non-empty lambda_override replaces the pool's per-entry rates.
  LinkSpec link_spec(TrafficModel model, std::uint32_t subchannels,
                     const std::vector<double>& lambda_override = {}) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// The nine-subchannel reference setup the figure presets run on.
Scenario baseline_scenario();

/// Parses and validates a scenario file. Unknown fields are rejected;
/// every violation names the offending field and value. Missing or
/// unreadable files raise IoError, malformed content ValidationError.
Scenario load_scenario(const std::filesystem::path& path);

std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace crlink
