#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vitfec/trellis.hpp"

namespace vitfec {

/// Survivor memory organization.
enum class SurvivorScheme { trace_back, register_exchange };

/// "trace-back" / "register-exchange", as written to CSV.
std::string_view scheme_name(SurvivorScheme scheme);

/// Register switching counters used as a power proxy.
struct ActivityReport {
  SurvivorScheme scheme = SurvivorScheme::trace_back;
  std::uint64_t frames = 0;
  std::uint64_t survivor_bit_writes = 0;
  std::uint64_t metric_writes = 0;
  std::uint64_t traceback_reads = 0;

  ActivityReport& operator+=(const ActivityReport& other);
  friend bool operator==(const ActivityReport&, const ActivityReport&) = default;
};

/// Hamming distance between two 2-bit symbols.
constexpr int branch_metric(Symbol received, Symbol expected) {
  constexpr int kTable[4] = {0, 1, 1, 2};
  return kTable[(received ^ expected) & 3];
}

/// Accumulated Hamming metrics, one per state, with reachability flags.
class PathMetricBank {
 public:
  explicit PathMetricBank(int num_states);

  /// Stage-0 bank: state 0 at metric 0, every other state unreachable.
  static PathMetricBank initial(int num_states);

  int num_states() const { return static_cast<int>(metric_.size()); }
  bool reachable(State s) const { return reachable_[s] != 0; }
  /// Meaningful only for reachable states.
  std::uint32_t metric(State s) const { return metric_[s]; }

  void set(State s, std::uint32_t metric) {
    metric_[s] = metric;
    reachable_[s] = 1;
  }
  void set_unreachable(State s) {
    metric_[s] = 0;
    reachable_[s] = 0;
  }

  friend bool operator==(const PathMetricBank&, const PathMetricBank&) = default;

 private:
  std::vector<std::uint32_t> metric_;
  std::vector<std::uint8_t> reachable_;
};

/// One stage of survivor decisions: bit s is set iff state s was entered from
/// its upper predecessor floor(s/2) + 2^(K-2).
class SurvivorWord {
 public:
  explicit SurvivorWord(int num_states = 0);

  int num_states() const { return num_states_; }
  bool upper(State s) const { return (bits_[s >> 6] >> (s & 63)) & 1U; }
  void set(State s, bool from_upper);
  void clear();

  friend bool operator==(const SurvivorWord&, const SurvivorWord&) = default;

 private:
  int num_states_;
  std::vector<std::uint64_t> bits_;
};

struct AcsResult {
  PathMetricBank bank;
  SurvivorWord survivors;
};

/// One combined branch-metric / add-compare-select stage. Ties go to the lower
/// predecessor. Writes into `next` and `survivors` and returns the number of
/// metric registers written (reachable states).
int acs_step(const PathMetricBank& current, Symbol received, const Trellis& trellis,
             PathMetricBank& next, SurvivorWord& survivors);

AcsResult acs_step(const PathMetricBank& current, Symbol received, const Trellis& trellis);

/// Trace-back survivor storage: L stage words written left to right.
///
/// The stage pointer plays the part of the ring counter that gates the
/// register clocks: only the word at the pointer may be written, and each word
/// is written once per frame.
class SurvivorMemory {
 public:
  SurvivorMemory(int num_states, int frame_stages);

  void begin_frame();
  /// Throws std::logic_error if the frame's L words are already written.
  void write(const SurvivorWord& word);

  const SurvivorWord& word(int stage) const { return words_.at(static_cast<std::size_t>(stage)); }
  int stage_pointer() const { return pointer_; }
  int frame_stages() const { return static_cast<int>(words_.size()); }
  int num_states() const { return num_states_; }
  std::uint64_t write_count() const { return write_count_; }
  int writes_this_frame(int stage) const { return frame_writes_.at(static_cast<std::size_t>(stage)); }

 private:
  int num_states_;
  int pointer_ = 0;
  std::uint64_t write_count_ = 0;
  std::vector<SurvivorWord> words_;
  std::vector<int> frame_writes_;
};

/// Walks the survivor words from stage L-1 down to 0. Returns L+1 states,
/// newest first, ending at the stage-0 state.
std::vector<State> traceback(const SurvivorMemory& memory, State start_state);

/// Decoded bit t is the LSB of the state at stage t+1 (odd state -> 1).
/// Takes a newest-first path and emits bits oldest first.
Bits output_map(std::span<const State> path_newest_first);

struct DecodeResult {
  Bits decoded;  ///< L bits: payload followed by the K-1 tail decisions
  std::uint32_t final_metric = 0;
  ActivityReport activity;
};

/// Reusable single-frame Viterbi engine. One instance must not be used from
/// two threads at once; separate instances share nothing.
class ViterbiDecoder {
 public:
  explicit ViterbiDecoder(const Trellis& trellis,
                          SurvivorScheme scheme = SurvivorScheme::trace_back);

  /// Decodes one zero-tail frame of 2L hard bits.
  DecodeResult decode(std::span<const Bit> coded);

  SurvivorScheme scheme() const { return scheme_; }
  const Trellis& trellis() const { return trellis_; }
  const SurvivorMemory& survivor_memory() const { return memory_; }
  /// Sum of the per-frame reports since construction.
  const ActivityReport& total_activity() const { return total_; }

 private:
  void run_acs(std::span<const Bit> coded, ActivityReport& activity);
  DecodeResult finish_trace_back(ActivityReport activity);
  DecodeResult finish_register_exchange(ActivityReport activity);

  Trellis trellis_;
  SurvivorScheme scheme_;
  PathMetricBank current_;
  PathMetricBank next_;
  SurvivorWord word_;
  SurvivorMemory memory_;
  std::vector<Bits> registers_;
  std::vector<Bits> scratch_;
  ActivityReport total_;
};

DecodeResult decode_frame(std::span<const Bit> coded, const Trellis& trellis);
DecodeResult decode_frame_register_exchange(std::span<const Bit> coded, const Trellis& trellis);

/// A decoded frame out of the streaming front end. Clocks count received
/// 2-bit code symbols from the start of the stream.
struct StreamFrame {
  std::size_t index = 0;
  Bits decoded;
  std::uint32_t final_metric = 0;
  std::uint64_t first_symbol_clock = 0;
  std::uint64_t available_clock = 0;

  std::uint64_t latency() const { return available_clock - first_symbol_clock; }
};

/// Incremental decoder over a continuous coded bit stream cut into frames of
/// 2L bits. A frame is released only once its last symbol has arrived, so
/// every frame's latency is L symbol clocks.
class StreamDecoder {
 public:
  explicit StreamDecoder(const Trellis& trellis,
                         SurvivorScheme scheme = SurvivorScheme::trace_back);

  std::vector<StreamFrame> push(std::span<const Bit> coded_bits);

  /// Bits received since the last complete frame.
  std::size_t pending_bits() const { return pending_.size(); }
  std::uint64_t symbol_clock() const { return bits_seen_ / 2; }
  const ActivityReport& activity() const { return decoder_.total_activity(); }

 private:
  ViterbiDecoder decoder_;
  std::size_t frame_bits_;
  Bits pending_;
  std::uint64_t bits_seen_ = 0;
  std::size_t next_index_ = 0;
};

struct StreamResult {
  std::vector<StreamFrame> frames;
  std::size_t truncated_bits = 0;  ///< leftover bits of an incomplete final frame

  bool truncated() const { return truncated_bits != 0; }
};

StreamResult stream_decode(std::span<const Bit> coded_stream, const Trellis& trellis,
                           SurvivorScheme scheme = SurvivorScheme::trace_back);

}  // namespace vitfec
