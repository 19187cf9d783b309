#include "vitfec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vitfec {

void NoiseConfig::validate() const {
  if (std::isnan(ebno_db) || ebno_db == -HUGE_VAL) {
    throw std::invalid_argument("Eb/N0 must be finite or +inf");
  }
  if (!(code_rate > 0.0 && code_rate <= 1.0)) {
    throw std::invalid_argument("code rate must lie in (0, 1]");
  }
}

double NoiseConfig::noise_variance() const {
  if (std::isinf(ebno_db)) return 0.0;
  return 1.0 / (2.0 * code_rate * std::pow(10.0, ebno_db / 10.0));
}

double GaussianSource::uniform_pm1() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return 2.0 * static_cast<double>(engine_() >> 11) * kScale - 1.0;
}

double GaussianSource::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = uniform_pm1();
    v = uniform_pm1();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

AwgnChannel::AwgnChannel(const NoiseConfig& cfg) : gauss_(cfg.seed), sigma_(0.0) {
  cfg.validate();
  sigma_ = std::sqrt(cfg.noise_variance());
}

void AwgnChannel::corrupt(std::span<double> samples) {
  if (sigma_ == 0.0) return;
  for (double& x : samples) x += sigma_ * gauss_.next();
}

Samples bpsk_modulate(std::span<const Bit> bits) {
  Samples out(bits.size());
  std::transform(bits.begin(), bits.end(), out.begin(),
                 [](Bit b) { return b ? -1.0 : 1.0; });
  return out;
}

Samples add_awgn(std::span<const double> symbols, const NoiseConfig& cfg) {
  Samples out(symbols.begin(), symbols.end());
  AwgnChannel(cfg).corrupt(out);
  return out;
}

Bits hard_quantize(std::span<const double> symbols) {
  Bits out(symbols.size());
  std::transform(symbols.begin(), symbols.end(), out.begin(),
                 [](double x) { return static_cast<Bit>(x < 0.0); });
  return out;
}

Bits inject_errors(std::span<const Bit> bits, std::span<const std::size_t> positions) {
  std::vector<std::size_t> unique(positions.begin(), positions.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  Bits out(bits.begin(), bits.end());
  for (std::size_t p : unique) {
    if (p >= out.size()) {
      throw std::out_of_range("error position " + std::to_string(p) +
                              " outside frame of length " + std::to_string(out.size()));
    }
    out[p] ^= 1;
  }
  return out;
}

}  // namespace vitfec
