#include "vitfec/trellis.hpp"

#include <charconv>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace vitfec {

namespace {

Bits taps_from_octal(std::string_view text, int constraint_length) {
  unsigned long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value, 8);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("generator '" + std::string(text) + "' is not an octal number");
  }
  if (value >> constraint_length) {
    throw std::invalid_argument("generator '" + std::string(text) + "' has more than K=" +
                                std::to_string(constraint_length) + " taps");
  }
  Bits taps(static_cast<std::size_t>(constraint_length));
  for (int i = 0; i < constraint_length; ++i) {
    taps[static_cast<std::size_t>(i)] =
        static_cast<Bit>((value >> (constraint_length - 1 - i)) & 1U);
  }
  return taps;
}

std::uint32_t tap_mask(const Bits& taps) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i]) mask |= 1U << i;
  }
  return mask;
}

}  // namespace

CodeSpec CodeSpec::wimax() { return CodeSpec{}; }

CodeSpec CodeSpec::from_octal(std::string_view generators_octal, int constraint_length,
                              int frame_stages) {
  if (constraint_length < 2 || constraint_length > kMaxConstraintLength) {
    throw std::invalid_argument("constraint length K=" + std::to_string(constraint_length) +
                                " outside [2, " + std::to_string(kMaxConstraintLength) + "]");
  }
  const auto comma = generators_octal.find(',');
  if (comma == std::string_view::npos ||
      generators_octal.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("generators must be two octal values separated by a comma, got '" +
                                std::string(generators_octal) + "'");
  }
  CodeSpec spec;
  spec.constraint_length = constraint_length;
  spec.generators = {taps_from_octal(generators_octal.substr(0, comma), constraint_length),
                     taps_from_octal(generators_octal.substr(comma + 1), constraint_length)};
  spec.frame_stages = frame_stages;
  spec.validate();
  return spec;
}

void CodeSpec::validate(bool require_full_span) const {
  if (constraint_length < 2) {
    throw std::invalid_argument("constraint length K must be >= 2");
  }
  if (constraint_length > kMaxConstraintLength) {
    throw std::invalid_argument("constraint length K must be <= " +
                                std::to_string(kMaxConstraintLength));
  }
  for (int g = 0; g < 2; ++g) {
    const auto& taps = generators[static_cast<std::size_t>(g)];
    if (taps.size() != static_cast<std::size_t>(constraint_length)) {
      throw std::invalid_argument("generator " + std::to_string(g) + " has " +
                                  std::to_string(taps.size()) + " taps, expected K=" +
                                  std::to_string(constraint_length));
    }
    for (Bit t : taps) {
      if (t > 1) throw std::invalid_argument("generator taps must be 0 or 1");
    }
    if (require_full_span && (taps.front() != 1 || taps.back() != 1)) {
      throw std::invalid_argument("generator " + std::to_string(g) +
                                  " must have taps 0 and K-1 set");
    }
  }
  if (frame_stages < constraint_length) {
    throw std::invalid_argument("frame stages L=" + std::to_string(frame_stages) +
                                " must be >= K=" + std::to_string(constraint_length));
  }
}

std::string CodeSpec::generator_octal(int g) const {
  unsigned long value = 0;
  for (Bit t : generators.at(static_cast<std::size_t>(g))) value = (value << 1) | t;
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, 8);
  (void)ec;
  return std::string(buf, ptr);
}

std::string CodeSpec::describe() const {
  return "K=" + std::to_string(constraint_length) + " generators=" + generator_octal(0) + "," +
         generator_octal(1) + " L=" + std::to_string(frame_stages) +
         " tail=" + std::to_string(tail_length()) + " payload=" +
         std::to_string(payload_length()) + " states=" + std::to_string(num_states());
}

Trellis::Trellis(const CodeSpec& spec)
    : spec_(spec), num_states_(0), half_(0) {
  spec_.validate();
  num_states_ = spec_.num_states();
  half_ = static_cast<State>(num_states_ >> 1);
  const std::array<std::uint32_t, 2> masks = {tap_mask(spec_.generators[0]),
                                              tap_mask(spec_.generators[1])};
  const auto states = static_cast<std::size_t>(num_states_);
  next_.resize(2 * states);
  symbol_.resize(2 * states);
  for (State p = 0; p < states; ++p) {
    for (Bit b = 0; b < 2; ++b) {
      // Register bit 0 is the incoming bit, bit i>0 is state bit i-1.
      const std::uint32_t reg = (p << 1) | b;
      const auto out0 = static_cast<Symbol>(__builtin_parity(reg & masks[0]));
      const auto out1 = static_cast<Symbol>(__builtin_parity(reg & masks[1]));
      next_[index(p, b)] = reg & static_cast<State>(states - 1);
      symbol_[index(p, b)] = static_cast<Symbol>((out0 << 1) | out1);
    }
  }
}

Trellis build_trellis(const CodeSpec& spec) { return Trellis(spec); }

std::optional<int> free_distance(const CodeSpec& spec, int weight_cap) {
  if (weight_cap < 1) throw std::invalid_argument("weight_cap must be >= 1");
  const Trellis trellis(spec);
  const auto weight = [](Symbol s) { return __builtin_popcount(s); };

  // Dijkstra from the first diverging branch (0 --1--> 1) back to state 0.
  const auto states = static_cast<std::size_t>(trellis.num_states());
  std::vector<int> best(states, weight_cap + 1);
  using Entry = std::pair<int, State>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  const State first = trellis.next_state(0, 1);
  const int first_weight = weight(trellis.branch_symbol(0, 1));
  if (first_weight > weight_cap) return std::nullopt;
  if (first == 0) return first_weight;
  best[first] = first_weight;
  frontier.emplace(first_weight, first);

  while (!frontier.empty()) {
    auto [dist, s] = frontier.top();
    frontier.pop();
    if (dist > best[s]) continue;
    if (s == 0) return dist;
    for (Bit b = 0; b < 2; ++b) {
      const State n = trellis.next_state(s, b);
      const int d = dist + weight(trellis.branch_symbol(s, b));
      if (d <= weight_cap && d < best[n]) {
        best[n] = d;
        frontier.emplace(d, n);
      }
    }
  }
  return std::nullopt;
}

}  // namespace vitfec
