#include "vitfec/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "vitfec/channel.hpp"
#include "vitfec/encoder.hpp"

namespace vitfec {

namespace {

constexpr double kCodeRate = 0.5;

class PayloadSource {
 public:
  explicit PayloadSource(std::uint64_t seed) : engine_(seed) {}

  void fill(Bits& bits) {
    for (auto& b : bits) {
      if (left_ == 0) {
        word_ = engine_();
        left_ = 64;
      }
      b = static_cast<Bit>(word_ & 1U);
      word_ >>= 1;
      --left_;
    }
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

std::uint64_t count_errors(std::span<const Bit> sent, std::span<const Bit> got) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) n += sent[i] != got[i];
  return n;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string_view ber_scheme_name(BerScheme scheme) {
  return scheme == BerScheme::uncoded_bpsk ? "uncoded-bpsk" : "coded-viterbi";
}

void SweepConfig::validate() const {
  spec.validate();
  if (min_info_bits > max_info_bits) {
    throw std::invalid_argument("min_info_bits exceeds max_info_bits");
  }
  if (max_info_bits == 0) throw std::invalid_argument("max_info_bits must be positive");
  for (double e : ebno_points) {
    if (std::isnan(e) || e == -HUGE_VAL) throw std::invalid_argument("Eb/N0 point must be finite");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BerPoint ber_point(const SweepConfig& cfg, std::size_t point_index, BerScheme scheme) {
  cfg.validate();
  const double ebno = cfg.ebno_points.at(point_index);
  const bool coded = scheme == BerScheme::coded_viterbi;
  const std::uint64_t stream = 4 * point_index + (coded ? 2 : 0);

  PayloadSource payloads(derive_seed(cfg.seed, stream));
  AwgnChannel channel(NoiseConfig{ebno, coded ? kCodeRate : 1.0, derive_seed(cfg.seed, stream + 1)});
  const Trellis trellis(cfg.spec);
  ViterbiDecoder decoder(trellis);

  BerPoint point;
  point.scheme = scheme;
  point.ebno_db = ebno;
  point.seed = cfg.seed;

  const auto payload_len = static_cast<std::size_t>(cfg.spec.payload_length());
  Bits payload(payload_len);
  do {
    payloads.fill(payload);
    Bits tx = coded ? encode_frame(payload, trellis) : payload;
    Samples samples = bpsk_modulate(tx);
    channel.corrupt(samples);
    const Bits rx = hard_quantize(samples);

    std::uint64_t errors = 0;
    if (coded) {
      const DecodeResult r = decoder.decode(rx);
      errors = count_errors(payload, std::span<const Bit>(r.decoded).first(payload_len));
    } else {
      errors = count_errors(payload, rx);
    }
    point.info_bits += payload_len;
    point.bit_errors += errors;
    point.frame_errors += errors != 0;
  } while (point.info_bits < cfg.max_info_bits &&
           (point.info_bits < cfg.min_info_bits || point.bit_errors < cfg.stop_at_errors));

  point.ber = static_cast<double>(point.bit_errors) / static_cast<double>(point.info_bits);
  return point;
}

std::vector<BerPoint> ber_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<BerPoint> points;
  points.reserve(2 * cfg.ebno_points.size());
  for (std::size_t i = 0; i < cfg.ebno_points.size(); ++i) {
    points.push_back(ber_point(cfg, i, BerScheme::uncoded_bpsk));
    points.push_back(ber_point(cfg, i, BerScheme::coded_viterbi));
  }
  return points;
}

double theoretical_uncoded_ber(double ebno_db) {
  return 0.5 * std::erfc(std::sqrt(std::pow(10.0, ebno_db / 10.0)));
}

PowerComparison power_compare(const PowerConfig& cfg) {
  const Trellis trellis(cfg.spec);
  ViterbiDecoder tb(trellis, SurvivorScheme::trace_back);
  ViterbiDecoder rx(trellis, SurvivorScheme::register_exchange);
  PayloadSource payloads(derive_seed(cfg.seed, 0));
  AwgnChannel channel(NoiseConfig{cfg.ebno_db, kCodeRate, derive_seed(cfg.seed, 1)});

  Bits payload(static_cast<std::size_t>(cfg.spec.payload_length()));
  for (std::uint64_t f = 0; f < cfg.frames; ++f) {
    payloads.fill(payload);
    Samples samples = bpsk_modulate(encode_frame(payload, trellis));
    channel.corrupt(samples);
    const Bits received = hard_quantize(samples);
    const DecodeResult a = tb.decode(received);
    const DecodeResult b = rx.decode(received);
    if (a.decoded != b.decoded || a.final_metric != b.final_metric) {
      throw std::logic_error("survivor schemes disagree on frame " + std::to_string(f));
    }
  }

  PowerComparison cmp{tb.total_activity(), rx.total_activity(), std::nullopt};
  if (cmp.trace_back.survivor_bit_writes != 0) {
    cmp.ratio = static_cast<double>(cmp.register_exchange.survivor_bit_writes) /
                static_cast<double>(cmp.trace_back.survivor_bit_writes);
  }
  return cmp;
}

void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points) {
  out << "scheme,ebno_db,info_bits,bit_errors,frame_errors,ber,seed\n";
  for (const auto& p : points) {
    out << ber_scheme_name(p.scheme) << ',' << format_double("%.6g", p.ebno_db) << ','
        << p.info_bits << ',' << p.bit_errors << ',' << p.frame_errors << ','
        << format_double("%.9e", p.ber) << ',' << p.seed << '\n';
  }
}

void write_activity_csv(std::ostream& out, const std::vector<ActivityReport>& reports) {
  out << "scheme,frames,survivor_bit_writes,metric_writes,traceback_reads\n";
  for (const auto& r : reports) {
    out << scheme_name(r.scheme) << ',' << r.frames << ',' << r.survivor_bit_writes << ','
        << r.metric_writes << ',' << r.traceback_reads << '\n';
  }
}

}  // namespace vitfec
