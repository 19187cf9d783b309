#include "vitfec/decoder.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace vitfec {

std::string_view scheme_name(SurvivorScheme scheme) {
  switch (scheme) {
    case SurvivorScheme::trace_back:
      return "trace-back";
    case SurvivorScheme::register_exchange:
      return "register-exchange";
  }
  return "unknown";
}

ActivityReport& ActivityReport::operator+=(const ActivityReport& other) {
  frames += other.frames;
  survivor_bit_writes += other.survivor_bit_writes;
  metric_writes += other.metric_writes;
  traceback_reads += other.traceback_reads;
  return *this;
}

PathMetricBank::PathMetricBank(int num_states)
    : metric_(static_cast<std::size_t>(num_states), 0),
      reachable_(static_cast<std::size_t>(num_states), 0) {}

PathMetricBank PathMetricBank::initial(int num_states) {
  PathMetricBank bank(num_states);
  bank.set(0, 0);
  return bank;
}

SurvivorWord::SurvivorWord(int num_states)
    : num_states_(num_states), bits_(static_cast<std::size_t>((num_states + 63) / 64), 0) {}

void SurvivorWord::set(State s, bool from_upper) {
  const std::uint64_t mask = std::uint64_t{1} << (s & 63);
  if (from_upper) {
    bits_[s >> 6] |= mask;
  } else {
    bits_[s >> 6] &= ~mask;
  }
}

void SurvivorWord::clear() {
  for (auto& w : bits_) w = 0;
}

int acs_step(const PathMetricBank& current, Symbol received, const Trellis& trellis,
             PathMetricBank& next, SurvivorWord& survivors) {
  const auto states = static_cast<State>(trellis.num_states());
  int writes = 0;
  for (State s = 0; s < states; ++s) {
    const Bit input = s & 1U;
    const State lo = trellis.lower_predecessor(s);
    const State hi = trellis.upper_predecessor(s);
    const bool lo_ok = current.reachable(lo);
    const bool hi_ok = current.reachable(hi);
    if (!lo_ok && !hi_ok) {
      next.set_unreachable(s);
      survivors.set(s, false);
      continue;
    }
    const std::uint32_t m_lo =
        lo_ok ? current.metric(lo) + branch_metric(received, trellis.branch_symbol(lo, input)) : 0;
    const std::uint32_t m_hi =
        hi_ok ? current.metric(hi) + branch_metric(received, trellis.branch_symbol(hi, input)) : 0;
    const bool take_upper = hi_ok && (!lo_ok || m_hi < m_lo);
    next.set(s, take_upper ? m_hi : m_lo);
    survivors.set(s, take_upper);
    ++writes;
  }
  return writes;
}

AcsResult acs_step(const PathMetricBank& current, Symbol received, const Trellis& trellis) {
  AcsResult result{PathMetricBank(trellis.num_states()), SurvivorWord(trellis.num_states())};
  acs_step(current, received, trellis, result.bank, result.survivors);
  return result;
}

SurvivorMemory::SurvivorMemory(int num_states, int frame_stages)
    : num_states_(num_states),
      words_(static_cast<std::size_t>(frame_stages), SurvivorWord(num_states)),
      frame_writes_(static_cast<std::size_t>(frame_stages), 0) {}

void SurvivorMemory::begin_frame() {
  pointer_ = 0;
  for (auto& n : frame_writes_) n = 0;
}

void SurvivorMemory::write(const SurvivorWord& word) {
  if (pointer_ >= frame_stages()) {
    throw std::logic_error("survivor memory full: all " + std::to_string(frame_stages()) +
                           " stage words already written this frame");
  }
  const auto at = static_cast<std::size_t>(pointer_);
  words_[at] = word;
  ++frame_writes_[at];
  write_count_ += static_cast<std::uint64_t>(num_states_);
  ++pointer_;
}

std::vector<State> traceback(const SurvivorMemory& memory, State start_state) {
  const int stages = memory.stage_pointer();
  const auto half = static_cast<State>(memory.num_states() >> 1);
  std::vector<State> path;
  path.reserve(static_cast<std::size_t>(stages) + 1);
  State s = start_state;
  path.push_back(s);
  for (int t = stages - 1; t >= 0; --t) {
    const State j = s >> 1;
    s = memory.word(t).upper(s) ? j + half : j;
    path.push_back(s);
  }
  return path;
}

Bits output_map(std::span<const State> path_newest_first) {
  if (path_newest_first.empty()) return {};
  const std::size_t stages = path_newest_first.size() - 1;
  Bits out(stages);
  // path[0] is stage L, path[L] is stage 0; bit t comes from stage t+1.
  for (std::size_t t = 0; t < stages; ++t) {
    out[t] = static_cast<Bit>(path_newest_first[stages - 1 - t] & 1U);
  }
  return out;
}

ViterbiDecoder::ViterbiDecoder(const Trellis& trellis, SurvivorScheme scheme)
    : trellis_(trellis),
      scheme_(scheme),
      current_(trellis.num_states()),
      next_(trellis.num_states()),
      word_(trellis.num_states()),
      memory_(trellis.num_states(), trellis.spec().frame_stages) {
  total_.scheme = scheme;
  if (scheme == SurvivorScheme::register_exchange) {
    const auto states = static_cast<std::size_t>(trellis.num_states());
    const auto stages = static_cast<std::size_t>(trellis.spec().frame_stages);
    registers_.assign(states, Bits{});
    scratch_.assign(states, Bits{});
    for (auto& r : registers_) r.reserve(stages);
    for (auto& r : scratch_) r.reserve(stages);
  }
}

void ViterbiDecoder::run_acs(std::span<const Bit> coded, ActivityReport& activity) {
  const int stages = trellis_.spec().frame_stages;
  const auto states = static_cast<State>(trellis_.num_states());
  current_ = PathMetricBank::initial(trellis_.num_states());
  memory_.begin_frame();
  for (auto& r : registers_) r.clear();

  for (int t = 0; t < stages; ++t) {
    const auto i = static_cast<std::size_t>(2 * t);
    const auto received = static_cast<Symbol>((coded[i] << 1) | coded[i + 1]);
    activity.metric_writes +=
        static_cast<std::uint64_t>(acs_step(current_, received, trellis_, next_, word_));

    const auto bound = static_cast<std::uint32_t>(2 * (t + 1));
    for (State s = 0; s < states; ++s) {
      if (next_.reachable(s) && next_.metric(s) > bound) {
        throw std::logic_error("path metric exceeds 2t bound at stage " + std::to_string(t));
      }
    }

    if (scheme_ == SurvivorScheme::trace_back) {
      memory_.write(word_);
      activity.survivor_bit_writes += states;
    } else {
      for (State s = 0; s < states; ++s) {
        const State from =
            word_.upper(s) ? trellis_.upper_predecessor(s) : trellis_.lower_predecessor(s);
        Bits& reg = scratch_[s];
        reg.assign(registers_[from].begin(), registers_[from].end());
        reg.push_back(static_cast<Bit>(s & 1U));
        activity.survivor_bit_writes += reg.size();
      }
      std::swap(registers_, scratch_);
    }
    std::swap(current_, next_);
  }
}

DecodeResult ViterbiDecoder::finish_trace_back(ActivityReport activity) {
  const auto path = traceback(memory_, 0);
  activity.traceback_reads += static_cast<std::uint64_t>(memory_.stage_pointer());
  return DecodeResult{output_map(path), current_.metric(0), activity};
}

DecodeResult ViterbiDecoder::finish_register_exchange(ActivityReport activity) {
  return DecodeResult{registers_[0], current_.metric(0), activity};
}

DecodeResult ViterbiDecoder::decode(std::span<const Bit> coded) {
  const auto expected = static_cast<std::size_t>(trellis_.spec().coded_length());
  if (coded.size() != expected) {
    throw std::invalid_argument("coded frame has " + std::to_string(coded.size()) +
                                " bits, expected " + std::to_string(expected));
  }
  for (Bit b : coded) {
    if (b > 1) throw std::invalid_argument("coded bits must be 0 or 1");
  }

  ActivityReport activity;
  activity.scheme = scheme_;
  activity.frames = 1;
  run_acs(coded, activity);
  if (!current_.reachable(0)) {
    throw std::logic_error("state 0 unreachable at the end of the frame");
  }
  DecodeResult result = scheme_ == SurvivorScheme::trace_back ? finish_trace_back(activity)
                                                              : finish_register_exchange(activity);
  total_ += result.activity;
  return result;
}

DecodeResult decode_frame(std::span<const Bit> coded, const Trellis& trellis) {
  return ViterbiDecoder(trellis, SurvivorScheme::trace_back).decode(coded);
}

DecodeResult decode_frame_register_exchange(std::span<const Bit> coded, const Trellis& trellis) {
  return ViterbiDecoder(trellis, SurvivorScheme::register_exchange).decode(coded);
}

StreamDecoder::StreamDecoder(const Trellis& trellis, SurvivorScheme scheme)
    : decoder_(trellis, scheme),
      frame_bits_(static_cast<std::size_t>(trellis.spec().coded_length())) {
  pending_.reserve(frame_bits_);
}

std::vector<StreamFrame> StreamDecoder::push(std::span<const Bit> coded_bits) {
  std::vector<StreamFrame> ready;
  const std::uint64_t stages = frame_bits_ / 2;
  for (Bit b : coded_bits) {
    pending_.push_back(b);
    ++bits_seen_;
    if (pending_.size() == frame_bits_) {
      DecodeResult r = decoder_.decode(pending_);
      StreamFrame frame;
      frame.index = next_index_++;
      frame.decoded = std::move(r.decoded);
      frame.final_metric = r.final_metric;
      frame.available_clock = symbol_clock();
      frame.first_symbol_clock = frame.available_clock - stages;
      ready.push_back(std::move(frame));
      pending_.clear();
    }
  }
  return ready;
}

StreamResult stream_decode(std::span<const Bit> coded_stream, const Trellis& trellis,
                           SurvivorScheme scheme) {
  StreamDecoder decoder(trellis, scheme);
  StreamResult result;
  result.frames = decoder.push(coded_stream);
  result.truncated_bits = decoder.pending_bits();
  return result;
}

}  // namespace vitfec
