#include "vitfec/encoder.hpp"

#include <stdexcept>
#include <string>

namespace vitfec {

Bits with_zero_tail(std::span<const Bit> payload, const CodeSpec& spec) {
  if (payload.size() != static_cast<std::size_t>(spec.payload_length())) {
    throw std::invalid_argument("payload has " + std::to_string(payload.size()) +
                                " bits, expected " + std::to_string(spec.payload_length()));
  }
  Bits input(payload.begin(), payload.end());
  input.resize(static_cast<std::size_t>(spec.frame_stages), 0);
  return input;
}

Bits encode_frame(std::span<const Bit> payload, const Trellis& trellis) {
  const Bits input = with_zero_tail(payload, trellis.spec());
  Bits coded;
  coded.reserve(2 * input.size());
  State state = 0;
  for (Bit b : input) {
    if (b > 1) throw std::invalid_argument("payload bits must be 0 or 1");
    const Symbol sym = trellis.branch_symbol(state, b);
    coded.push_back(static_cast<Bit>(sym >> 1));
    coded.push_back(static_cast<Bit>(sym & 1));
    state = trellis.next_state(state, b);
  }
  return coded;
}

std::vector<Bits> encode_stream(std::span<const Bits> payloads, const Trellis& trellis) {
  std::vector<Bits> out;
  out.reserve(payloads.size());
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    try {
      out.push_back(encode_frame(payloads[i], trellis));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("frame " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace vitfec
