#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "vitfec/decoder.hpp"
#include "vitfec/trellis.hpp"

namespace vitfec {

enum class BerScheme { uncoded_bpsk, coded_viterbi };

/// "uncoded-bpsk" / "coded-viterbi"
std::string_view ber_scheme_name(BerScheme scheme);

struct BerPoint {
  BerScheme scheme = BerScheme::uncoded_bpsk;
  double ebno_db = 0.0;
  std::uint64_t info_bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  double ber = 0.0;
  std::uint64_t seed = 0;
};

struct SweepConfig {
  std::vector<double> ebno_points;
  std::uint64_t min_info_bits = 0;
  std::uint64_t max_info_bits = 1'000'000;
  std::uint64_t stop_at_errors = 200;
  std::uint64_t seed = 0;
  CodeSpec spec;

  void validate() const;
};

/// Monte-Carlo BER for both schemes at every Eb/N0 point, in point order with
/// uncoded before coded. Each (point, scheme) pair draws payloads and noise
/// from its own seed derived from cfg.seed, so results do not depend on the
/// order in which points are evaluated. Frames hold payload_length info bits
/// for both schemes; tail bits never enter the BER.
///
/// A point stops after the first whole frame where info_bits >= min_info_bits
/// and bit_errors >= stop_at_errors, or once info_bits >= max_info_bits.
std::vector<BerPoint> ber_sweep(const SweepConfig& cfg);

/// One (point, scheme) cell of ber_sweep.
BerPoint ber_point(const SweepConfig& cfg, std::size_t point_index, BerScheme scheme);

/// Q(sqrt(2 Eb/N0)) = erfc(sqrt(Eb/N0)) / 2.
double theoretical_uncoded_ber(double ebno_db);

struct PowerConfig {
  CodeSpec spec;
  std::uint64_t frames = 1000;
  double ebno_db = 4.0;
  std::uint64_t seed = 0;
};

struct PowerComparison {
  ActivityReport trace_back;
  ActivityReport register_exchange;
  /// register-exchange / trace-back survivor writes; empty when no frames ran.
  std::optional<double> ratio;
};

/// Decodes one noisy frame set under both survivor schemes. Throws
/// std::logic_error if the schemes ever disagree on bits or metric.
PowerComparison power_compare(const PowerConfig& cfg);

/// Seed for stream `stream` derived from `base` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points);
void write_activity_csv(std::ostream& out, const std::vector<ActivityReport>& reports);

}  // namespace vitfec
