#include "crlink/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace crlink {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(TrafficModel model) {
  return model == TrafficModel::markov ? "markov" : "poisson";
}

LinkSpec Scenario::link_spec(TrafficModel model, std::uint32_t subchannels,
                             const std::vector<double>& lambda_override) const {
  if (subchannels < 1) throw ValidationError("S >= 1 required");
  if (subchannels > pool.size()) {
    throw ValidationError("S exceeds pool size: " + std::to_string(subchannels));
  }
  if (!lambda_override.empty() && lambda_override.size() < subchannels) {
    throw ValidationError("lambda override shorter than S");
  }
  std::vector<SubchannelProfile> profiles;
  profiles.reserve(subchannels);
  for (std::uint32_t s = 0; s < subchannels; ++s) {
    const PoolEntry& entry = pool[s];
    if (model == TrafficModel::markov) {
      profiles.emplace_back(MarkovChainParams(entry.p_stay, entry.gamma), entry.loss);
    } else {
      const double lambda = lambda_override.empty() ? entry.lambda : lambda_override[s];
      profiles.emplace_back(PoissonParams(lambda), entry.loss);
    }
  }
  return LinkSpec(std::move(profiles), link.capacity_bps, link.packet_bits,
                  link.bandwidth_hz);
}

Scenario baseline_scenario() {
  const double p_stay[] = {0.9, 0.7, 0.76, 0.8, 0.68, 0.82, 0.77, 0.65, 0.45};
  const double lambda[] = {3.0, 2.0, 1.0, 2.5, 3.6, 4.0, 6.0, 2.4, 3.2};
  const double loss[] = {0.03, 0.04, 0.01, 0.02, 0.05, 0.025, 0.06, 0.01, 0.03};

  Scenario scenario{
      {},
      FramePlan(1.0, 0.005, 10),
      AccessParams(0.2, 0.9, 10, 3, 5),
      CodingParams{3000, 0.1, 0.5, 0.01},
      LinkConstants{1.0e7, 1000, 1.0e5},
  };
  for (int s = 0; s < 9; ++s) {
    scenario.pool.push_back(PoolEntry{p_stay[s], lambda[s], loss[s], 1.0});
  }
  return scenario;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + " " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "is missing");
  return obj.at(key);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ValidationError("unknown field: " + path + "." + item.key());
  }
}

double get_number(const json& obj, const std::string& path, const char* key) {
  const json& value = member(obj, path, key);
  if (!value.is_number()) fail(path + "." + key, "must be a number");
  return value.get<double>();
}

double get_probability(const json& obj, const std::string& path, const char* key) {
  const double v = get_number(obj, path, key);
  if (!(v >= 0.0 && v <= 1.0)) {
    fail(path + "." + key, "out of [0,1]: " + std::to_string(v));
  }
  return v;
}

std::uint64_t get_count(const json& obj, const std::string& path, const char* key,
                        std::uint64_t min_value) {
  const json& value = member(obj, path, key);
  if (!value.is_number_integer() || (value.is_number_integer() && value.get<std::int64_t>() < 0)) {
    fail(path + "." + key, "must be a non-negative integer");
  }
  const std::uint64_t v = value.get<std::uint64_t>();
  if (v < min_value) {
    fail(path + "." + key, "must be >= " + std::to_string(min_value));
  }
  return v;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path.string());

  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("scenario parse error in " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario root must be an object");
  reject_unknown(doc, "scenario", {"pool", "frame", "access", "coding", "link"});

  const json& pool = member(doc, "scenario", "pool");
  if (!pool.is_array() || pool.empty() || pool.size() > 9) {
    fail("scenario.pool", "must be an array of 1..9 entries");
  }
  std::vector<PoolEntry> entries;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::string epath = "pool[" + std::to_string(i) + "]";
    const json& e = pool[i];
    if (!e.is_object()) fail(epath, "must be an object");
    reject_unknown(e, epath, {"p_stay", "lambda", "loss", "gamma"});
    PoolEntry entry{};
    entry.p_stay = get_probability(e, epath, "p_stay");
    entry.lambda = get_number(e, epath, "lambda");
    if (!(entry.lambda >= 0.0)) fail(epath + ".lambda", "must be >= 0");
    entry.loss = get_probability(e, epath, "loss");
    entry.gamma = get_probability(e, epath, "gamma");
    entries.push_back(entry);
  }

  const json& frame = member(doc, "scenario", "frame");
  reject_unknown(frame, "frame", {"frame_s", "sensing_s", "slots"});
  const double frame_s = get_number(frame, "frame", "frame_s");
  const double sensing_s = get_number(frame, "frame", "sensing_s");
  const auto slots = static_cast<std::uint32_t>(get_count(frame, "frame", "slots", 1));
  if (!(frame_s > 0.0)) fail("frame.frame_s", "must be > 0");
  if (!(sensing_s >= 0.0 && sensing_s < frame_s)) {
    fail("frame.sensing_s", "must satisfy 0 <= sensing_s < frame_s");
  }

  const json& access = member(doc, "scenario", "access");
  reject_unknown(access, "access", {"p", "q", "degree", "links"});
  const double p = get_probability(access, "access", "p");
  const double q = get_probability(access, "access", "q");
  const auto degree = static_cast<std::uint32_t>(get_count(access, "access", "degree", 1));
  const auto links = static_cast<std::uint32_t>(get_count(access, "access", "links", 1));

  const json& coding = member(doc, "scenario", "coding");
  reject_unknown(coding, "coding", {"K", "c", "delta", "dep_target"});
  const std::uint64_t gop = get_count(coding, "coding", "K", 1);
  const double c = get_number(coding, "coding", "c");
  if (!(c > 0.0)) fail("coding.c", "must be > 0");
  const double delta = get_number(coding, "coding", "delta");
  if (!(delta > 0.0 && delta < 1.0)) fail("coding.delta", "out of (0,1)");
  const double dep_target = get_probability(coding, "coding", "dep_target");

  const json& link = member(doc, "scenario", "link");
  reject_unknown(link, "link", {"R_0", "L", "W"});
  const double capacity = get_number(link, "link", "R_0");
  if (!(capacity > 0.0)) fail("link.R_0", "must be > 0");
  const std::uint64_t packet_bits = get_count(link, "link", "L", 1);
  const double bandwidth = get_number(link, "link", "W");
  if (!(bandwidth > 0.0)) fail("link.W", "must be > 0");

  return Scenario{std::move(entries),
                  FramePlan(frame_s, sensing_s, slots),
                  AccessParams(p, q, slots, degree, links),
                  CodingParams{gop, c, delta, dep_target},
                  LinkConstants{capacity, packet_bits, bandwidth}};
}

std::string scenario_to_json(const Scenario& scenario) {
  ordered_json doc;
  doc["pool"] = ordered_json::array();
  for (const PoolEntry& entry : scenario.pool) {
    doc["pool"].push_back(ordered_json{{"p_stay", entry.p_stay},
                                       {"lambda", entry.lambda},
                                       {"loss", entry.loss},
                                       {"gamma", entry.gamma}});
  }
  doc["frame"] = ordered_json{{"frame_s", scenario.frame.frame_s},
                              {"sensing_s", scenario.frame.sensing_s},
                              {"slots", scenario.frame.slots}};
  doc["access"] = ordered_json{{"p", scenario.access.p},
                               {"q", scenario.access.q},
                               {"degree", scenario.access.degree},
                               {"links", scenario.access.links}};
  doc["coding"] = ordered_json{{"K", scenario.coding.gop_packets},
                               {"c", scenario.coding.c},
                               {"delta", scenario.coding.delta},
                               {"dep_target", scenario.coding.dep_target}};
  doc["link"] = ordered_json{{"R_0", scenario.link.capacity_bps},
                             {"L", scenario.link.packet_bits},
                             {"W", scenario.link.bandwidth_hz}};
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << scenario_to_json(scenario);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace crlink
