#include "vitfec/oracle.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace vitfec {

namespace {

// Bit t of an input word is the encoder input at time t. Output stream g is the
// GF(2) product of the input polynomial with generator g's tap polynomial.
std::uint64_t convolve(std::uint64_t input, const Bits& taps) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i]) out ^= input << i;
  }
  return out;
}

}  // namespace

MlResult ml_decode(std::span<const Bit> received, const CodeSpec& spec) {
  spec.validate();
  const int payload_bits = spec.payload_length();
  const int stages = spec.frame_stages;
  if (payload_bits > kOracleMaxPayloadBits) {
    throw std::invalid_argument("payload of " + std::to_string(payload_bits) +
                                " bits exceeds the exhaustive-search limit of " +
                                std::to_string(kOracleMaxPayloadBits));
  }
  if (stages > 64) {
    throw std::invalid_argument("frame of " + std::to_string(stages) +
                                " stages exceeds the 64-stage oracle word");
  }
  if (received.size() != static_cast<std::size_t>(2 * stages)) {
    throw std::invalid_argument("received frame has " + std::to_string(received.size()) +
                                " bits, expected " + std::to_string(2 * stages));
  }

  std::array<std::uint64_t, 2> rx = {0, 0};
  for (int t = 0; t < stages; ++t) {
    for (int g = 0; g < 2; ++g) {
      const Bit b = received[static_cast<std::size_t>(2 * t + g)];
      if (b > 1) throw std::invalid_argument("received bits must be 0 or 1");
      rx[static_cast<std::size_t>(g)] |= std::uint64_t{b} << t;
    }
  }
  const std::uint64_t frame_mask = stages == 64 ? ~std::uint64_t{0}
                                                : (std::uint64_t{1} << stages) - 1;

  // Candidate v carries payload bit 0 in its most significant position, so
  // ascending v is lexicographic payload order.
  int best = 2 * stages + 1;
  std::uint64_t best_v = 0;
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << payload_bits;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t input = 0;
    for (int t = 0; t < payload_bits; ++t) {
      input |= ((v >> (payload_bits - 1 - t)) & 1U) << t;
    }
    const std::uint64_t c0 = convolve(input, spec.generators[0]) & frame_mask;
    const std::uint64_t c1 = convolve(input, spec.generators[1]) & frame_mask;
    const int d = __builtin_popcountll(c0 ^ rx[0]) + __builtin_popcountll(c1 ^ rx[1]);
    if (d < best) {
      best = d;
      best_v = v;
      count = 1;
    } else if (d == best) {
      ++count;
    }
  }

  MlResult result;
  result.best_payload.resize(static_cast<std::size_t>(payload_bits));
  for (int t = 0; t < payload_bits; ++t) {
    result.best_payload[static_cast<std::size_t>(t)] =
        static_cast<Bit>((best_v >> (payload_bits - 1 - t)) & 1U);
  }
  result.best_distance = best;
  result.num_minimizers = count;
  result.minimizer_unique = count == 1;
  return result;
}

}  // namespace vitfec
