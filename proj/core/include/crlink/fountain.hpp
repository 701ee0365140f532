#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "crlink/errors.hpp"

namespace crlink {

/// Robust Soliton degree-distribution parameters for a k-packet source.
struct SolitonParams {
  std::uint32_t k;
  double c;
  double delta;

  SolitonParams(std::uint32_t k, double c, double delta);

  friend bool operator==(const SolitonParams&, const SolitonParams&) = default;
};

/// Ideal Soliton: rho(1) = 1/k, rho(d) = 1/(d(d-1)). Index d-1.
std::vector<double> ideal_soliton(std::uint32_t k);

/// Robust Soliton mu = (rho + tau)/Z with the spike at floor(k/R),
/// R = c * ln(k/delta) * sqrt(k). The spike position is clamped into
/// [1, k] and its weight floored at zero so mu stays a distribution for
/// tiny k; k = 1 degenerates to a point mass at degree 1. Index d-1.
std::vector<double> robust_soliton(const SolitonParams& params);

/// One LT-coded packet. degree and neighbors are a pure function of
/// packet_seed (given the code parameters), so the wire form only needs
/// (packet_seed, payload).
struct EncodedPacket {
  std::uint64_t packet_seed;
  std::uint32_t degree;
  std::vector<std::uint32_t> neighbors;  // distinct source indices, sorted
  std::vector<std::uint8_t> payload;     // XOR of the neighbor source packets

  friend bool operator==(const EncodedPacket&, const EncodedPacket&) = default;
};

struct DecodeResult {
  bool success;
  std::uint32_t recovered;                        // number of sources resolved
  std::vector<std::vector<std::uint8_t>> source;  // complete iff success
};

/// LT encoder/decoder over a fixed Robust Soliton distribution.
class LtCodec {
 public:
  explicit LtCodec(SolitonParams params);

  const SolitonParams& params() const { return params_; }
  const std::vector<double>& degree_distribution() const { return mu_; }

  /// Derives (degree, neighbors) from packet_seed and XORs the payload.
  EncodedPacket make_packet(const std::vector<std::vector<std::uint8_t>>& source,
                            std::uint64_t packet_seed) const;

  /// count packets; packet i uses packet_seed = derive_seed(seed, i).
  std::vector<EncodedPacket> encode(const std::vector<std::vector<std::uint8_t>>& source,
                                    std::size_t count, std::uint64_t seed) const;

  /// Rebuilds the structure of a stored packet around its payload.
  EncodedPacket reconstruct(std::uint64_t packet_seed,
                            std::vector<std::uint8_t> payload) const;

  /// Peeling decoder: repeatedly resolves degree-1 packets and substitutes
  /// recovered sources until all k are known or no degree-1 packet is left.
  DecodeResult decode(const std::vector<EncodedPacket>& packets) const;

 private:
  void sample_structure(std::uint64_t packet_seed, std::uint32_t& degree,
                        std::vector<std::uint32_t>& neighbors) const;

  SolitonParams params_;
  std::vector<double> mu_;
  std::vector<double> cdf_;
};

/// Failure fraction over independent encode/decode rounds with
/// n = ceil((1 + overhead) * k) packets per round. overhead may dip below
/// zero (down to -1, exclusive); with n < k decoding cannot succeed and the
/// measured rate is exactly 1.
double measure_dep(const SolitonParams& params, double overhead, std::uint64_t trials,
                   std::uint64_t seed);

/// Golden-fixture form: binary records (packet_seed as 8 bytes little
/// endian, then the payload) plus a JSON sidecar {k, c, delta, L} at
/// <path>.json. L is the payload length in bits.
struct FountainFixture {
  SolitonParams params;
  std::uint64_t packet_bits;
  std::vector<EncodedPacket> packets;
};

void save_fixture(const std::filesystem::path& path, const FountainFixture& fixture);
FountainFixture load_fixture(const std::filesystem::path& path);

}  // namespace crlink
