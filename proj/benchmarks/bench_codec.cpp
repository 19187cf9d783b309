#include <benchmark/benchmark.h>

#include <random>

#include "vitfec/channel.hpp"
#include "vitfec/decoder.hpp"
#include "vitfec/encoder.hpp"
#include "vitfec/harness.hpp"

namespace {

using namespace vitfec;

Bits random_payload(std::mt19937_64& rng, const CodeSpec& spec) {
  Bits p(static_cast<std::size_t>(spec.payload_length()));
  for (auto& b : p) b = static_cast<Bit>(rng() & 1U);
  return p;
}

Bits noisy_frame(const Trellis& trellis, double ebno_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Samples s = bpsk_modulate(encode_frame(random_payload(rng, trellis.spec()), trellis));
  return hard_quantize(add_awgn(s, NoiseConfig{ebno_db, 0.5, seed}));
}

void BM_EncodeFrame(benchmark::State& state) {
  const Trellis trellis(CodeSpec::wimax());
  std::mt19937_64 rng(1);
  const Bits payload = random_payload(rng, trellis.spec());
  for (auto _ : state) benchmark::DoNotOptimize(encode_frame(payload, trellis));
  state.SetItemsProcessed(state.iterations() * trellis.spec().payload_length());
}
BENCHMARK(BM_EncodeFrame);

void BM_AcsStep(benchmark::State& state) {
  const Trellis trellis(CodeSpec::wimax());
  PathMetricBank bank(trellis.num_states());
  for (State s = 0; s < static_cast<State>(trellis.num_states()); ++s) bank.set(s, s & 7U);
  PathMetricBank next(trellis.num_states());
  SurvivorWord word(trellis.num_states());
  Symbol sym = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(acs_step(bank, sym, trellis, next, word));
    sym = static_cast<Symbol>((sym + 1) & 3);
  }
}
BENCHMARK(BM_AcsStep);

void BM_DecodeFrame(benchmark::State& state) {
  const auto scheme = static_cast<SurvivorScheme>(state.range(0));
  const Trellis trellis(CodeSpec::wimax());
  const Bits rx = noisy_frame(trellis, 3.0, 11);
  ViterbiDecoder decoder(trellis, scheme);
  for (auto _ : state) benchmark::DoNotOptimize(decoder.decode(rx));
  state.SetItemsProcessed(state.iterations() * trellis.spec().frame_stages);
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_DecodeFrame)
    ->Arg(static_cast<int>(SurvivorScheme::trace_back))
    ->Arg(static_cast<int>(SurvivorScheme::register_exchange));

void BM_BerPointCoded(benchmark::State& state) {
  SweepConfig cfg;
  cfg.ebno_points = {4.0};
  cfg.max_info_bits = static_cast<std::uint64_t>(state.range(0));
  cfg.stop_at_errors = cfg.max_info_bits;
  for (auto _ : state) benchmark::DoNotOptimize(ber_point(cfg, 0, BerScheme::coded_viterbi));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BerPointCoded)->Arg(34 * 1000);

}  // namespace

BENCHMARK_MAIN();
