#include "crlink/fountain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <string>

#include "crlink/rng.hpp"
#include "json.hpp"

namespace crlink {

SolitonParams::SolitonParams(std::uint32_t k, double c, double delta)
    : k(k), c(c), delta(delta) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("c must be finite and > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta out of (0,1)");
}

std::vector<double> ideal_soliton(std::uint32_t k) {
  if (k < 1) throw ValidationError("k must be >= 1");
  std::vector<double> rho(k, 0.0);
  rho[0] = 1.0 / static_cast<double>(k);
  for (std::uint32_t d = 2; d <= k; ++d) {
    rho[d - 1] = 1.0 / (static_cast<double>(d) * (static_cast<double>(d) - 1.0));
  }
  return rho;
}

std::vector<double> robust_soliton(const SolitonParams& params) {
  const std::uint32_t k = params.k;
  if (k == 1) return {1.0};

  std::vector<double> mu = ideal_soliton(k);
  const double r = params.c * std::log(static_cast<double>(k) / params.delta) *
                   std::sqrt(static_cast<double>(k));
  if (r > 0.0) {
    std::uint32_t spike = static_cast<std::uint32_t>(
        std::clamp(std::floor(static_cast<double>(k) / r), 1.0, static_cast<double>(k)));
    for (std::uint32_t d = 1; d < spike; ++d) {
      mu[d - 1] += r / (static_cast<double>(d) * static_cast<double>(k));
    }
    // the spike weight goes negative for tiny k (R < delta); floor at zero
    mu[spike - 1] += std::max(0.0, r * std::log(r / params.delta) / static_cast<double>(k));
  }

  double z = 0.0;
  for (double v : mu) z += v;
  for (double& v : mu) v /= z;
  return mu;
}

LtCodec::LtCodec(SolitonParams params)
    : params_(params), mu_(robust_soliton(params)) {
  cdf_.resize(mu_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    acc += mu_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;  // close the inverse-CDF range
}

void LtCodec::sample_structure(std::uint64_t packet_seed, std::uint32_t& degree,
                               std::vector<std::uint32_t>& neighbors) const {
  SplitMix64 rng(packet_seed);
  const double u = rng.next_double();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  degree = static_cast<std::uint32_t>(std::distance(cdf_.begin(), it)) + 1;
  if (degree > params_.k) degree = params_.k;

  // Floyd's sampling: degree distinct indices in [0, k)
  neighbors.clear();
  neighbors.reserve(degree);
  for (std::uint64_t j = params_.k - degree; j < params_.k; ++j) {
    const std::uint32_t t = static_cast<std::uint32_t>(rng.next_below(j + 1));
    if (std::find(neighbors.begin(), neighbors.end(), t) != neighbors.end()) {
      neighbors.push_back(static_cast<std::uint32_t>(j));
    } else {
      neighbors.push_back(t);
    }
  }
  std::sort(neighbors.begin(), neighbors.end());
}

EncodedPacket LtCodec::make_packet(const std::vector<std::vector<std::uint8_t>>& source,
                                   std::uint64_t packet_seed) const {
  if (source.size() != params_.k) {
    throw ValidationError("source size does not match k");
  }
  EncodedPacket packet;
  packet.packet_seed = packet_seed;
  sample_structure(packet_seed, packet.degree, packet.neighbors);
  packet.payload.assign(source[packet.neighbors.front()].begin(),
                        source[packet.neighbors.front()].end());
  for (std::size_t i = 1; i < packet.neighbors.size(); ++i) {
    const auto& block = source[packet.neighbors[i]];
    if (block.size() != packet.payload.size()) {
      throw ValidationError("source packets must all have the same length");
    }
    for (std::size_t b = 0; b < block.size(); ++b) packet.payload[b] ^= block[b];
  }
  return packet;
}

std::vector<EncodedPacket> LtCodec::encode(
    const std::vector<std::vector<std::uint8_t>>& source, std::size_t count,
    std::uint64_t seed) const {
  if (source.empty()) throw ValidationError("source must not be empty");
  for (const auto& block : source) {
    if (block.size() != source.front().size()) {
      throw ValidationError("source packets must all have the same length");
    }
  }
  std::vector<EncodedPacket> packets;
  packets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    packets.push_back(make_packet(source, derive_seed(seed, i)));
  }
  return packets;
}

EncodedPacket LtCodec::reconstruct(std::uint64_t packet_seed,
                                   std::vector<std::uint8_t> payload) const {
  EncodedPacket packet;
  packet.packet_seed = packet_seed;
  sample_structure(packet_seed, packet.degree, packet.neighbors);
  packet.payload = std::move(payload);
  return packet;
}

DecodeResult LtCodec::decode(const std::vector<EncodedPacket>& packets) const {
  const std::uint32_t k = params_.k;
  if (!packets.empty()) {
    for (const auto& p : packets) {
      if (p.payload.size() != packets.front().payload.size()) {
        throw ValidationError("encoded packets must all have the same payload length");
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> pending(packets.size());
  std::vector<std::vector<std::uint8_t>> residual(packets.size());
  std::vector<std::vector<std::uint32_t>> uses(k);  // source -> packet ids
  std::deque<std::uint32_t> ready;
  for (std::uint32_t pid = 0; pid < packets.size(); ++pid) {
    pending[pid] = packets[pid].neighbors;
    residual[pid] = packets[pid].payload;
    for (std::uint32_t s : pending[pid]) {
      if (s >= k) throw ValidationError("neighbor index out of range");
      uses[s].push_back(pid);
    }
    if (pending[pid].size() == 1) ready.push_back(pid);
  }

  DecodeResult result;
  result.success = false;
  result.recovered = 0;
  result.source.assign(k, {});
  std::vector<char> have(k, 0);

  while (!ready.empty()) {
    const std::uint32_t pid = ready.front();
    ready.pop_front();
    if (pending[pid].size() != 1) continue;  // stale queue entry
    const std::uint32_t s = pending[pid].front();
    pending[pid].clear();
    if (have[s]) continue;
    have[s] = 1;
    result.source[s] = std::move(residual[pid]);
    ++result.recovered;

    for (const std::uint32_t q : uses[s]) {
      auto& nb = pending[q];
      const auto it = std::find(nb.begin(), nb.end(), s);
      if (it == nb.end()) continue;
      nb.erase(it);
      auto& pay = residual[q];
      const auto& known = result.source[s];
      for (std::size_t b = 0; b < pay.size(); ++b) pay[b] ^= known[b];
      if (nb.size() == 1) ready.push_back(q);
    }
  }

  result.success = (result.recovered == k);
  return result;
}

double measure_dep(const SolitonParams& params, double overhead, std::uint64_t trials,
                   std::uint64_t seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (!(overhead > -1.0) || !std::isfinite(overhead)) {
    throw ValidationError("overhead must be a finite value > -1");
  }
  const LtCodec codec(params);
  const std::uint32_t k = params.k;
  // exact-arithmetic ceil; the epsilon absorbs binary rounding of (1+overhead)*k
  const std::uint64_t count = static_cast<std::uint64_t>(
      std::ceil((1.0 + overhead) * static_cast<double>(k) - 1e-9));

  constexpr std::size_t kTrialPayloadBytes = 8;  // DEP depends on structure only
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, t));
    std::vector<std::vector<std::uint8_t>> source(k);
    for (auto& block : source) {
      block.resize(kTrialPayloadBytes);
      for (auto& byte : block) byte = static_cast<std::uint8_t>(rng.next() & 0xFF);
    }
    if (count == 0) {
      ++failures;
      continue;
    }
    const auto coded = codec.encode(source, count, rng.next());
    if (!codec.decode(coded).success) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(trials);
}

void save_fixture(const std::filesystem::path& path, const FountainFixture& fixture) {
  if (fixture.packet_bits % 8 != 0) {
    throw ValidationError("packet_bits must be a multiple of 8");
  }
  const std::size_t payload_bytes = fixture.packet_bits / 8;

  std::ofstream bin(path, std::ios::binary | std::ios::trunc);
  if (!bin) throw IoError("cannot open for writing: " + path.string());
  for (const auto& packet : fixture.packets) {
    if (packet.payload.size() != payload_bytes) {
      throw ValidationError("payload length disagrees with packet_bits");
    }
    std::uint8_t header[8];
    for (int b = 0; b < 8; ++b) {
      header[b] = static_cast<std::uint8_t>(packet.packet_seed >> (8 * b));
    }
    bin.write(reinterpret_cast<const char*>(header), 8);
    bin.write(reinterpret_cast<const char*>(packet.payload.data()),
              static_cast<std::streamsize>(payload_bytes));
  }
  if (!bin) throw IoError("write failed: " + path.string());
  bin.close();

  nlohmann::ordered_json sidecar{{"k", fixture.params.k},
                                 {"c", fixture.params.c},
                                 {"delta", fixture.params.delta},
                                 {"L", fixture.packet_bits}};
  std::ofstream meta(path.string() + ".json", std::ios::trunc);
  if (!meta) throw IoError("cannot open for writing: " + path.string() + ".json");
  meta << sidecar.dump(2) << '\n';
  if (!meta) throw IoError("write failed: " + path.string() + ".json");
}

FountainFixture load_fixture(const std::filesystem::path& path) {
  std::ifstream meta(path.string() + ".json");
  if (!meta) throw IoError("cannot open: " + path.string() + ".json");
  nlohmann::json sidecar;
  try {
    meta >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("sidecar parse error: " + std::string(e.what()));
  }
  for (const auto& [key, value] : sidecar.items()) {
    if (key != "k" && key != "c" && key != "delta" && key != "L") {
      throw ValidationError("unknown sidecar field: " + key);
    }
  }
  const SolitonParams params(sidecar.at("k").get<std::uint32_t>(),
                             sidecar.at("c").get<double>(),
                             sidecar.at("delta").get<double>());
  const std::uint64_t packet_bits = sidecar.at("L").get<std::uint64_t>();
  if (packet_bits == 0 || packet_bits % 8 != 0) {
    throw ValidationError("L must be a positive multiple of 8");
  }
  const std::size_t payload_bytes = packet_bits / 8;

  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw IoError("cannot open: " + path.string());

  const LtCodec codec(params);
  FountainFixture fixture{params, packet_bits, {}};
  for (;;) {
    std::uint8_t header[8];
    bin.read(reinterpret_cast<char*>(header), 8);
    if (bin.gcount() == 0 && bin.eof()) break;
    if (bin.gcount() != 8) throw IoError("truncated record header: " + path.string());
    std::uint64_t packet_seed = 0;
    for (int b = 0; b < 8; ++b) packet_seed |= static_cast<std::uint64_t>(header[b]) << (8 * b);
    std::vector<std::uint8_t> payload(payload_bytes);
    bin.read(reinterpret_cast<char*>(payload.data()),
             static_cast<std::streamsize>(payload_bytes));
    if (static_cast<std::size_t>(bin.gcount()) != payload_bytes) {
      throw IoError("truncated record payload: " + path.string());
    }
    fixture.packets.push_back(codec.reconstruct(packet_seed, std::move(payload)));
  }
  return fixture;
}

}  // namespace crlink
