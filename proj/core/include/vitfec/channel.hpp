#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vitfec/trellis.hpp"

namespace vitfec {

/// Real BPSK amplitudes, unit symbol energy.
using Samples = std::vector<double>;

struct NoiseConfig {
  double ebno_db = 0.0;  ///< +infinity means a noiseless channel
  double code_rate = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
  /// 1 / (2 r 10^(Eb/N0 / 10)); zero for an infinite Eb/N0.
  double noise_variance() const;
};

/// Standard normal deviates from mt19937_64 via the Marsaglia polar method.
///
/// Uniforms use the top 53 bits of each engine draw, so a given seed yields the
/// same sequence on every platform (unlike std::normal_distribution).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  double uniform_pm1();

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Stateful AWGN channel; consecutive calls continue one noise stream.
class AwgnChannel {
 public:
  explicit AwgnChannel(const NoiseConfig& cfg);

  void corrupt(std::span<double> samples);
  double sigma() const { return sigma_; }

 private:
  GaussianSource gauss_;
  double sigma_;
};

/// 0 -> +1.0, 1 -> -1.0.
Samples bpsk_modulate(std::span<const Bit> bits);

/// Fresh noise stream seeded from cfg.seed.
Samples add_awgn(std::span<const double> symbols, const NoiseConfig& cfg);

/// Negative amplitude -> 1, otherwise 0 (an exact zero maps to 0).
Bits hard_quantize(std::span<const double> symbols);

/// Flips each listed position once; duplicates in `positions` count once.
/// Throws std::out_of_range for a position past the end of the frame.
Bits inject_errors(std::span<const Bit> bits, std::span<const std::size_t> positions);

}  // namespace vitfec
