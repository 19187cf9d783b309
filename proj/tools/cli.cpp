#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "vitfec/channel.hpp"
#include "vitfec/decoder.hpp"
#include "vitfec/encoder.hpp"
#include "vitfec/harness.hpp"
#include "vitfec/oracle.hpp"
#include "vitfec/trellis.hpp"
#include "vitfec/version.hpp"

namespace vitfec::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
};

/// Buffers output and publishes it only on commit(); files are written to a
/// sibling temporary and renamed into place.
class OutputSink {
 public:
  OutputSink(std::string path, std::ostream& stdout_stream)
      : path_(std::move(path)), stdout_(stdout_stream) {}

  std::ostream& stream() { return buffer_; }

  void commit() {
    if (path_ == "-") {
      stdout_ << buffer_.str();
      stdout_.flush();
      return;
    }
    const std::filesystem::path target(path_);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw UsageError("cannot open output '" + path_ + "' for writing");
      f << buffer_.str();
      f.flush();
      if (!f) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw UsageError("failed writing output '" + path_ + "'");
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw UsageError("cannot move output into place at '" + path_ + "'");
    }
  }

 private:
  std::string path_;
  std::ostream& stdout_;
  std::ostringstream buffer_;
};

struct BitLine {
  std::size_t line_number;
  Bits bits;
};

std::vector<BitLine> read_bit_lines(const std::string& path, std::istream& stdin_stream) {
  std::ifstream file;
  std::istream* in = &stdin_stream;
  if (path != "-") {
    file.open(path);
    if (!file) throw UsageError("cannot open input '" + path + "'");
    in = &file;
  }
  const std::string name = path == "-" ? "<stdin>" : path;
  std::vector<BitLine> lines;
  std::string text;
  std::size_t n = 0;
  while (std::getline(*in, text)) {
    ++n;
    BitLine line{n, {}};
    line.bits.reserve(text.size());
    for (std::size_t col = 0; col < text.size(); ++col) {
      const char c = text[col];
      if (c != '0' && c != '1') {
        throw UsageError(name + ": line " + std::to_string(n) + ": malformed bit line: unexpected " +
                         (std::isprint(static_cast<unsigned char>(c))
                              ? "character '" + std::string(1, c) + "'"
                              : "byte " + std::to_string(static_cast<unsigned char>(c))) +
                         " at column " + std::to_string(col + 1));
      }
      line.bits.push_back(static_cast<Bit>(c - '0'));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

void expect_length(const BitLine& line, std::size_t expected, const char* what) {
  if (line.bits.size() != expected) {
    throw UsageError("line " + std::to_string(line.line_number) + ": frame-length mismatch: " +
                     what + " has " + std::to_string(line.bits.size()) + " bits, expected " +
                     std::to_string(expected));
  }
}

void write_bits(std::ostream& out, std::span<const Bit> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = static_cast<char>('0' + bits[i]);
  out << s << '\n';
}

std::uint64_t parse_count(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0) || v > 1.8e19 || std::floor(v) != v) {
    throw UsageError(std::string(flag) + ": expected a non-negative integer count, got '" + text +
                     "'");
  }
  return static_cast<std::uint64_t>(v);
}

double parse_real(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || std::isnan(v)) {
    throw UsageError(std::string(flag) + ": '" + text + "' is not a number");
  }
  return v;
}

/// "4", "0,2,4" or inclusive "start:step:stop".
std::vector<double> parse_ebno_list(const std::string& text) {
  std::vector<double> points;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--ebno: range must be start:step:stop");
    const double start = parse_real(parts[0], "--ebno");
    const double step = parse_real(parts[1], "--ebno");
    const double stop = parse_real(parts[2], "--ebno");
    if (!(step > 0.0) || stop < start) {
      throw UsageError("--ebno: range needs step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) points.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) points.push_back(parse_real(part, "--ebno"));
  }
  if (points.empty()) throw UsageError("--ebno: no points given");
  return points;
}

struct SpecOptions {
  int constraint_length = 7;
  std::string generators = "171,133";
  int frame_stages = 40;

  CodeSpec resolve() const {
    try {
      return CodeSpec::from_octal(generators, constraint_length, frame_stages);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--constraint-length/--generators/--frame-stages: ") +
                       e.what());
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "vitfec: rate-1/2 zero-tail convolutional coding with a hard-decision Viterbi decoder.\n"
      "Default code: K=7, generators 171,133 (octal), L=40 stages per frame "
      "(34 payload + 6 tail bits).\nBit frames are text lines of '0'/'1', one frame per line.",
      "vitfec"};
  app.set_version_flag("--version", std::string("vitfec ") + kVersionString);
  app.require_subcommand(0, 1);

  SpecOptions spec_opts;
  bool spec_dump = false;
  app.add_option("-K,--constraint-length", spec_opts.constraint_length, "Constraint length K")
      ->capture_default_str();
  app.add_option("-g,--generators", spec_opts.generators,
                 "Generator pair in octal, first generator's bit sent first")
      ->capture_default_str();
  app.add_option("-L,--frame-stages", spec_opts.frame_stages,
                 "Encoder inputs per frame including the K-1 zero tail")
      ->capture_default_str();
  app.add_flag("--spec-dump", spec_dump, "Print the resolved code definition and exit");

  std::string input = "-";
  std::string output = "-";
  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input, "Input file ('-' for stdin)")->capture_default_str();
    sub->add_option("-o,--output,--out", output, "Output file ('-' for stdout)")
        ->capture_default_str();
  };

  auto* encode_cmd = app.add_subcommand("encode", "Encode payload lines into coded frames");
  add_io(encode_cmd);

  std::string scheme = "traceback";
  std::string activity_path;
  auto* decode_cmd =
      app.add_subcommand("decode", "Viterbi-decode coded frames back to payload lines");
  add_io(decode_cmd);
  decode_cmd->add_option("--scheme", scheme, "Survivor memory organization")
      ->check(CLI::IsMember({"traceback", "regex"}))
      ->capture_default_str();
  auto* activity_opt =
      decode_cmd
          ->add_option("--activity", activity_path,
                       "Write switching-activity CSV (to FILE, or stderr when no FILE is given)")
          ->expected(0, 1);

  auto* oracle_cmd = app.add_subcommand(
      "oracle-decode", "Exhaustive maximum-likelihood decode (payloads up to 24 bits)");
  add_io(oracle_cmd);

  std::vector<std::size_t> positions;
  auto* inject_cmd =
      app.add_subcommand("inject-errors", "Flip the given bit positions in every frame");
  add_io(inject_cmd);
  inject_cmd->add_option("--positions", positions, "Comma-separated bit indices to invert")
      ->delimiter(',')
      ->required();

  std::string ebno_text = "0:1:8";
  std::string min_bits_text = "0";
  std::string max_bits_text = "1e7";
  std::uint64_t stop_errors = 200;
  std::uint64_t seed = 0;
  auto* sweep_cmd = app.add_subcommand("ber-sweep", "Monte-Carlo BER over AWGN, CSV output");
  sweep_cmd->add_option("--ebno", ebno_text, "Eb/N0 points in dB: start:step:stop or a,b,c")
      ->capture_default_str();
  sweep_cmd->add_option("--stop-errors", stop_errors, "Stop a point after this many bit errors")
      ->capture_default_str();
  sweep_cmd->add_option("--min-bits", min_bits_text, "Minimum info bits per point")
      ->capture_default_str();
  sweep_cmd->add_option("--max-bits", max_bits_text, "Maximum info bits per point")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sweep_cmd->add_option("-o,--out", output, "CSV output file ('-' for stdout)")
      ->capture_default_str();

  std::uint64_t frames = 1000;
  double power_ebno = 4.0;
  auto* power_cmd = app.add_subcommand(
      "power-compare", "Survivor write activity of trace-back vs register exchange");
  power_cmd->add_option("--frames", frames, "Noisy frames to decode")->capture_default_str();
  power_cmd->add_option("--ebno", power_ebno, "Eb/N0 in dB")->capture_default_str();
  power_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  power_cmd->add_option("-o,--out", output, "CSV output file ('-' for stdout)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vitfec: error: " << e.what() << '\n';
    return 2;
  }

  try {
    const CodeSpec spec = spec_opts.resolve();
    const Trellis trellis(spec);
    Streams io{in, out};

    if (spec_dump) {
      out << spec.describe() << '\n';
      return 0;
    }

    if (encode_cmd->parsed()) {
      OutputSink sink(output, io.out);
      for (const auto& line : read_bit_lines(input, io.in)) {
        expect_length(line, static_cast<std::size_t>(spec.payload_length()), "payload");
        write_bits(sink.stream(), encode_frame(line.bits, trellis));
      }
      sink.commit();
    } else if (decode_cmd->parsed()) {
      const SurvivorScheme s =
          scheme == "regex" ? SurvivorScheme::register_exchange : SurvivorScheme::trace_back;
      ViterbiDecoder decoder(trellis, s);
      OutputSink sink(output, io.out);
      for (const auto& line : read_bit_lines(input, io.in)) {
        expect_length(line, static_cast<std::size_t>(spec.coded_length()), "coded frame");
        const DecodeResult r = decoder.decode(line.bits);
        write_bits(sink.stream(), std::span<const Bit>(r.decoded).first(
                                      static_cast<std::size_t>(spec.payload_length())));
      }
      if (activity_opt->count() > 0) {
        std::ostringstream csv;
        write_activity_csv(csv, {decoder.total_activity()});
        if (activity_path.empty()) {
          sink.commit();
          err << csv.str();
          return 0;
        }
        OutputSink activity_sink(activity_path, io.out);
        activity_sink.stream() << csv.str();
        sink.commit();
        activity_sink.commit();
        return 0;
      }
      sink.commit();
    } else if (oracle_cmd->parsed()) {
      if (spec.payload_length() > kOracleMaxPayloadBits) {
        throw UsageError("oracle-decode: payload of " + std::to_string(spec.payload_length()) +
                         " bits is too large for exhaustive search (limit " +
                         std::to_string(kOracleMaxPayloadBits) + "); use a smaller -L");
      }
      OutputSink sink(output, io.out);
      for (const auto& line : read_bit_lines(input, io.in)) {
        expect_length(line, static_cast<std::size_t>(spec.coded_length()), "coded frame");
        write_bits(sink.stream(), ml_decode(line.bits, spec).best_payload);
      }
      sink.commit();
    } else if (inject_cmd->parsed()) {
      OutputSink sink(output, io.out);
      for (const auto& line : read_bit_lines(input, io.in)) {
        const auto bad = std::find_if(positions.begin(), positions.end(),
                                      [&](std::size_t p) { return p >= line.bits.size(); });
        if (bad != positions.end()) {
          throw UsageError("line " + std::to_string(line.line_number) + ": --positions index " +
                           std::to_string(*bad) + " outside frame of " +
                           std::to_string(line.bits.size()) + " bits");
        }
        write_bits(sink.stream(), inject_errors(line.bits, positions));
      }
      sink.commit();
    } else if (sweep_cmd->parsed()) {
      SweepConfig cfg;
      cfg.spec = spec;
      cfg.ebno_points = parse_ebno_list(ebno_text);
      cfg.min_info_bits = parse_count(min_bits_text, "--min-bits");
      cfg.max_info_bits = parse_count(max_bits_text, "--max-bits");
      cfg.stop_at_errors = stop_errors;
      cfg.seed = seed;
      if (cfg.min_info_bits > cfg.max_info_bits) {
        throw UsageError("--min-bits must not exceed --max-bits");
      }
      if (cfg.max_info_bits == 0) throw UsageError("--max-bits must be positive");
      OutputSink sink(output, io.out);
      write_ber_csv(sink.stream(), ber_sweep(cfg));
      sink.commit();
    } else if (power_cmd->parsed()) {
      const PowerComparison cmp = power_compare(PowerConfig{spec, frames, power_ebno, seed});
      OutputSink sink(output, io.out);
      write_activity_csv(sink.stream(), {cmp.trace_back, cmp.register_exchange});
      sink.commit();
      if (cmp.ratio) {
        err << "register-exchange/trace-back survivor write ratio: " << *cmp.ratio << '\n';
      } else {
        err << "register-exchange/trace-back survivor write ratio: undefined (no frames)\n";
      }
    } else {
      throw UsageError("no subcommand given (try --help)");
    }
  } catch (const std::exception& e) {
    err << "vitfec: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace vitfec::cli
