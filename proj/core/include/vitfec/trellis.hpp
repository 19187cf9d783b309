#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vitfec {

using Bit = std::uint8_t;
using Bits = std::vector<Bit>;
using State = std::uint32_t;

/// Two-bit code symbol. The first generator's output is the high bit, so the
/// textual form "10" means generator 0 emitted 1 and generator 1 emitted 0.
using Symbol = std::uint8_t;

/// Rate-1/2 convolutional code definition plus frame geometry.
///
/// Tap vectors have length K; tap 0 multiplies the newest input bit. A frame
/// is `frame_stages` encoder inputs, the last K-1 of which are the zero tail.
struct CodeSpec {
  int constraint_length = 7;
  std::array<Bits, 2> generators = {Bits{1, 1, 1, 1, 0, 0, 1}, Bits{1, 0, 1, 1, 0, 1, 1}};
  int frame_stages = 40;

  /// K=7, generators 171/133 octal, 40 stages (34 payload + 6 tail).
  static CodeSpec wimax();

  /// Builds a spec from octal generator strings such as "171,133".
  static CodeSpec from_octal(std::string_view generators_octal, int constraint_length,
                             int frame_stages);

  int tail_length() const { return constraint_length - 1; }
  int payload_length() const { return frame_stages - tail_length(); }
  int num_states() const { return 1 << (constraint_length - 1); }
  int coded_length() const { return 2 * frame_stages; }

  /// Throws std::invalid_argument naming the first violated constraint.
  /// `require_full_span` additionally demands tap 0 = tap K-1 = 1 on both
  /// generators (the check applied to the shipped default).
  void validate(bool require_full_span = false) const;

  /// Generator g as an octal string (tap 0 is the most significant bit).
  std::string generator_octal(int g) const;

  /// "K=7 generators=171,133 L=40 tail=6 payload=34 states=64"
  std::string describe() const;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// Largest constraint length supported; keeps survivor words and state ids small.
inline constexpr int kMaxConstraintLength = 16;

/// Precomputed trellis for a rate-1/2 code. State p holds the last K-1 inputs
/// with the newest one in the LSB, so next_state(p, b) = (2p + b) mod 2^(K-1).
class Trellis {
 public:
  explicit Trellis(const CodeSpec& spec);

  const CodeSpec& spec() const { return spec_; }
  int num_states() const { return num_states_; }

  State next_state(State from, Bit input) const { return next_[index(from, input)]; }
  Symbol branch_symbol(State from, Bit input) const { return symbol_[index(from, input)]; }

  /// Predecessor reached through a 0 in the oldest state bit: floor(s/2).
  State lower_predecessor(State s) const { return s >> 1; }
  /// Predecessor with the oldest state bit set: floor(s/2) + 2^(K-2).
  State upper_predecessor(State s) const { return (s >> 1) | half_; }

 private:
  static std::size_t index(State from, Bit input) { return (std::size_t{from} << 1) | input; }

  CodeSpec spec_;
  int num_states_;
  State half_;
  std::vector<State> next_;
  std::vector<Symbol> symbol_;
};

Trellis build_trellis(const CodeSpec& spec);

/// Minimum Hamming weight of a path that leaves the zero state and re-merges
/// with it. Returns std::nullopt when no such path has weight <= weight_cap.
std::optional<int> free_distance(const CodeSpec& spec, int weight_cap);

}  // namespace vitfec
