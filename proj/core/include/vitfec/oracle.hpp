#pragma once

#include <cstdint>
#include <span>

#include "vitfec/trellis.hpp"

namespace vitfec {

/// Largest payload the exhaustive decoder will enumerate.
inline constexpr int kOracleMaxPayloadBits = 24;

struct MlResult {
  Bits best_payload;
  int best_distance = 0;
  bool minimizer_unique = true;
  std::uint64_t num_minimizers = 0;
};

/// Exhaustive maximum-likelihood (minimum Hamming distance) decoding.
///
/// Every payload is encoded by direct polynomial convolution of the generator
/// taps, independent of the Trellis tables. Ties resolve to the
/// lexicographically smallest payload (bit 0 most significant). Throws
/// std::invalid_argument when the payload exceeds kOracleMaxPayloadBits or
/// L exceeds 64.
MlResult ml_decode(std::span<const Bit> received, const CodeSpec& spec);

}  // namespace vitfec
