#pragma once

#include <span>
#include <vector>

#include "vitfec/trellis.hpp"

namespace vitfec {

/// Zero-tail encode of one frame. `payload` must hold L-(K-1) bits; the result
/// holds 2L coded bits, generator 0's bit first for every stage.
Bits encode_frame(std::span<const Bit> payload, const Trellis& trellis);

/// Encodes each payload independently (the tail returns the encoder to state 0).
std::vector<Bits> encode_stream(std::span<const Bits> payloads, const Trellis& trellis);

/// Payload followed by K-1 zeros: the encoder input sequence for one frame.
Bits with_zero_tail(std::span<const Bit> payload, const CodeSpec& spec);

}  // namespace vitfec
