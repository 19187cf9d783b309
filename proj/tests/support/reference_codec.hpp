#pragma once

// Test-only reference routines. Everything here works from the raw generator
// taps by direct convolution and never touches vitfec::Trellis, so it can be
// used to check the trellis-driven encoder and decoder.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "vitfec/trellis.hpp"

namespace vitfec::testing {

/// c_g[t] = XOR_i tap_g[i] & u[t-i], emitted generator 0 first per stage.
inline Bits reference_encode(const CodeSpec& spec, const Bits& inputs) {
  Bits out;
  out.reserve(2 * inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    for (const auto& taps : spec.generators) {
      Bit acc = 0;
      for (std::size_t i = 0; i < taps.size() && i <= t; ++i) acc ^= taps[i] & inputs[t - i];
      out.push_back(acc);
    }
  }
  return out;
}

/// Codeword for a payload: reference_encode of payload plus K-1 zeros.
inline Bits reference_codeword(const CodeSpec& spec, const Bits& payload) {
  Bits inputs = payload;
  inputs.resize(payload.size() + static_cast<std::size_t>(spec.constraint_length - 1), 0);
  return reference_encode(spec, inputs);
}

inline int hamming(const Bits& a, const Bits& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

inline int weight(const Bits& a) { return static_cast<int>(std::count(a.begin(), a.end(), 1)); }

inline std::uint64_t tap_poly(const Bits& taps) {
  std::uint64_t p = 0;
  for (std::size_t i = 0; i < taps.size(); ++i) p |= std::uint64_t{taps[i]} << i;
  return p;
}

/// GF(2) polynomial product a*b, valid while the result fits in 64 bits.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int i = 0; b >> i; ++i) {
    if ((b >> i) & 1U) r ^= a << i;
  }
  return r;
}

/// Minimum codeword weight over every input sequence of length <= max_len
/// that starts with a 1 (then flushed by the zero tail).
inline int enumerate_free_distance(const CodeSpec& spec, int max_len) {
  const std::uint64_t g0 = tap_poly(spec.generators[0]);
  const std::uint64_t g1 = tap_poly(spec.generators[1]);
  int best = 1 << 30;
  const std::uint64_t count = std::uint64_t{1} << (max_len - 1);
  for (std::uint64_t rest = 0; rest < count; ++rest) {
    const std::uint64_t u = (rest << 1) | 1U;
    const int w = __builtin_popcountll(clmul(u, g0)) + __builtin_popcountll(clmul(u, g1));
    best = std::min(best, w);
  }
  return best;
}

/// Every single detour (input sequence starting with 1, ending when the shift
/// register is all zero again) whose codeword weight is <= max_weight. The
/// returned input sequences include the trailing K-1 zeros. Requires a code
/// with no zero-weight cycle outside the zero state.
inline std::vector<Bits> low_weight_detours(const CodeSpec& spec, int max_weight) {
  const int k = spec.constraint_length;
  const std::uint32_t g0 = static_cast<std::uint32_t>(tap_poly(spec.generators[0]));
  const std::uint32_t g1 = static_cast<std::uint32_t>(tap_poly(spec.generators[1]));
  const std::uint32_t memory_mask = (1U << (k - 1)) - 1;
  std::vector<Bits> found;
  Bits inputs;
  // reg bit i holds the input from i steps ago; bit 0 is the newest.
  std::function<void(std::uint32_t, int)> dfs = [&](std::uint32_t memory, int w) {
    for (Bit b = 0; b < 2; ++b) {
      const std::uint32_t reg = (memory << 1) | b;
      const int nw = w + __builtin_parity(reg & g0) + __builtin_parity(reg & g1);
      if (nw > max_weight) continue;
      inputs.push_back(b);
      const std::uint32_t next = reg & memory_mask;
      if (next == 0) {
        found.push_back(inputs);
      } else {
        dfs(next, nw);
      }
      inputs.pop_back();
    }
  };
  {
    const std::uint32_t reg = 1;
    const int w = __builtin_parity(reg & g0) + __builtin_parity(reg & g1);
    if (w <= max_weight) {
      inputs.push_back(1);
      if ((reg & memory_mask) == 0) {
        found.push_back(inputs);
      } else {
        dfs(reg & memory_mask, w);
      }
      inputs.pop_back();
    }
  }
  return found;
}

/// True when the all-zero codeword is the unique nearest codeword to the
/// error word `e` (a coded-length frame). Only single-detour codewords of
/// weight <= 2 wt(e) can compete, which covers every competitor as long as
/// wt(e) < d_free; the caller must guarantee that.
inline bool zero_is_unique_nearest(const CodeSpec& spec, const Bits& e) {
  const int we = weight(e);
  const auto stages = static_cast<std::size_t>(spec.frame_stages);
  for (const Bits& detour : low_weight_detours(spec, 2 * we)) {
    for (std::size_t start = 0; start + detour.size() <= stages; ++start) {
      Bits inputs(stages, 0);
      std::copy(detour.begin(), detour.end(), inputs.begin() + static_cast<long>(start));
      if (hamming(reference_encode(spec, inputs), e) <= we) return false;
    }
  }
  return true;
}

inline Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<Bit>(rng() & 1U);
  return b;
}

/// `count` distinct positions in [0, n).
inline std::vector<std::size_t> random_positions(std::mt19937_64& rng, std::size_t n,
                                                 std::size_t count) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  return all;
}

inline CodeSpec spec_75(int frame_stages) {
  return CodeSpec{3, {Bits{1, 1, 1}, Bits{1, 0, 1}}, frame_stages};
}

/// GPRS-style K=5 pair, octal 23 and 33.
inline CodeSpec spec_k5(int frame_stages) {
  return CodeSpec{5, {Bits{1, 0, 0, 1, 1}, Bits{1, 1, 0, 1, 1}}, frame_stages};
}

}  // namespace vitfec::testing
