#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>

#include "support/reference_codec.hpp"
#include "vitfec/encoder.hpp"

using namespace vitfec;
namespace ref = vitfec::testing;

namespace {

Bits parse(const std::string& s) {
  Bits b;
  for (char c : s) {
    if (c == '0' || c == '1') b.push_back(static_cast<Bit>(c - '0'));
  }
  return b;
}

}  // namespace

TEST_CASE("all-zero payload encodes to all zeros") {
  const Trellis t(CodeSpec::wimax());
  const Bits coded = encode_frame(Bits(34, 0), t);
  CHECK(coded == Bits(80, 0));
}

TEST_CASE("impulse response is the interleaved generator taps") {
  const Trellis t(CodeSpec::wimax());
  Bits payload(34, 0);
  payload[0] = 1;
  const Bits coded = encode_frame(payload, t);
  REQUIRE(coded.size() == 80);
  Bits expected = parse("11 10 11 11 00 01 11");
  expected.resize(80, 0);
  CHECK(coded == expected);
  CHECK(coded == ref::reference_codeword(t.spec(), payload));
}

TEST_CASE("K=3 hand example") {
  const Trellis t(ref::spec_75(5));
  CHECK(encode_frame(Bits{1, 0, 1}, t) == parse("11 10 00 10 11"));
  CHECK(with_zero_tail(Bits{1, 0, 1}, t.spec()) == Bits{1, 0, 1, 0, 0});
}

TEST_CASE("wrong payload length is rejected") {
  const Trellis t(CodeSpec::wimax());
  CHECK_THROWS_AS(encode_frame(Bits(33, 0), t), std::invalid_argument);
  CHECK_THROWS_AS(encode_frame(Bits(40, 0), t), std::invalid_argument);
  Bits bad(34, 0);
  bad[5] = 2;
  CHECK_THROWS_AS(encode_frame(bad, t), std::invalid_argument);
}

TEST_CASE("encode_stream") {
  const Trellis t(CodeSpec::wimax());
  CHECK(encode_stream({}, t).empty());

  const std::vector<Bits> zeros(2, Bits(34, 0));
  const auto coded = encode_stream(zeros, t);
  REQUIRE(coded.size() == 2);
  CHECK(coded[0] == Bits(80, 0));
  CHECK(coded[1] == Bits(80, 0));

  std::mt19937_64 rng(3);
  const std::vector<Bits> payloads = {ref::random_bits(rng, 34), ref::random_bits(rng, 34)};
  const auto out = encode_stream(payloads, t);
  CHECK(out[0] == encode_frame(payloads[0], t));
  CHECK(out[1] == encode_frame(payloads[1], t));

  const std::vector<Bits> broken = {Bits(34, 0), Bits(12, 0)};
  try {
    encode_stream(broken, t);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("frame 1") != std::string::npos);
  }
}

TEST_CASE("encoder properties over random payloads") {
  std::mt19937_64 rng(17);
  for (const CodeSpec& spec : {CodeSpec::wimax(), ref::spec_75(9), ref::spec_k5(12)}) {
    const Trellis t(spec);
    const auto n = static_cast<std::size_t>(spec.payload_length());
    for (int trial = 0; trial < 300; ++trial) {
      const Bits a = ref::random_bits(rng, n);
      const Bits b = ref::random_bits(rng, n);
      Bits x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = a[i] ^ b[i];

      const Bits ca = encode_frame(a, t);
      const Bits cb = encode_frame(b, t);
      const Bits cx = encode_frame(x, t);
      REQUIRE(ca.size() == static_cast<std::size_t>(2 * spec.frame_stages));
      REQUIRE(ca == ref::reference_codeword(spec, a));
      for (std::size_t i = 0; i < ca.size(); ++i) REQUIRE(cx[i] == (ca[i] ^ cb[i]));

      // Tail reset: with the full encoder input, continuing from the end state
      // with zeros emits only zeros, so the register is empty.
      Bits extended = with_zero_tail(a, spec);
      extended.resize(extended.size() + static_cast<std::size_t>(spec.constraint_length), 0);
      const Bits longer = ref::reference_encode(spec, extended);
      for (std::size_t i = ca.size(); i < longer.size(); ++i) REQUIRE(longer[i] == 0);
    }
  }
}
