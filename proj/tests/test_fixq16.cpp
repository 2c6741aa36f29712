#include <catch_amalgamated.hpp>

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "logmap/fixq16.hpp"
#include "oracle.hpp"

using namespace logmap;

namespace {

void check_flags(const Flagged& f) {
  REQUIRE_FALSE((f.overflow && f.underflow));
  if (f.overflow) {
    REQUIRE((f.value == Fix32::max() || f.value == Fix32::min()));
  }
  if (f.underflow) REQUIRE(f.value.raw == 0);
}

std::vector<std::int32_t> edge_raws() {
  return {0, 1, -1, 2, -2, 0x7FFF, 0x8000, 0xFFFF, 0x10000, -0x10000, 0x7FFFFFFF,
          std::numeric_limits<std::int32_t>::min(), std::numeric_limits<std::int32_t>::min() + 1,
          0x7FFFFFFE, 0x12345678, -0x12345678};
}

}  // namespace

TEST_CASE("encode exactly representable values", "[fixq16][encode]") {
  CHECK(encode("0.5").raw == 0x00008000);
  CHECK(encode("4.0").raw == 0x00040000);
  CHECK(encode("4").raw == 0x00040000);
  CHECK(encode("1").raw == 0x00010000);
  CHECK(encode("0").raw == 0);
  CHECK(encode("-0").raw == 0);
  CHECK(encode(".25").raw == 0x4000);
  CHECK(encode("-1.5").raw == -0x18000);
  CHECK(encode("0.5", RoundMode::CeilPosInf).raw == 0x00008000);
}

TEST_CASE("encode 0.1 against exact rational oracle", "[fixq16][encode]") {
  // floor(0.1 * 65536) = 6553
  CHECK(oracle::scaled(oracle::decimal("0.1"), false) == 6553);
  CHECK(encode("0.1", RoundMode::Trunc).raw == 0x00001999);
  CHECK(encode("0.1", RoundMode::CeilPosInf).raw == 0x0000199A);

  const Encoding e = encode_exact("0.1");
  CHECK_FALSE(e.exact);
  CHECK(e.abs_error == "0.0000091552734375");
  const Encoding c = encode_exact("0.1", RoundMode::CeilPosInf);
  // (6554 - 6553.6) / 65536
  CHECK(c.abs_error == "0.000006103515625");
}

TEST_CASE("encode rationals", "[fixq16][encode]") {
  CHECK(encode("1/10").raw == 6553);
  CHECK(encode("1/10", RoundMode::CeilPosInf).raw == 6554);
  CHECK(encode("-1/10").raw == -6554);
  CHECK(encode("-1/10", RoundMode::CeilPosInf).raw == -6553);
  CHECK(encode("8/2").raw == 0x40000);
  CHECK(encode_exact("1/10").abs_error == "0.0000091552734375");
  CHECK_THROWS_AS(encode("1/0"), ParseError);
  CHECK_THROWS_AS(encode("1/x"), ParseError);
  CHECK_THROWS_AS(encode("70000/1"), RangeError);
}

TEST_CASE("encode rejects out-of-range and malformed input", "[fixq16][encode]") {
  CHECK_THROWS_AS(encode("70000"), RangeError);
  CHECK_THROWS_AS(encode("32768"), RangeError);
  CHECK_THROWS_AS(encode("1234567.5"), RangeError);
  CHECK(encode("-32768").raw == std::numeric_limits<std::int32_t>::min());
  CHECK(encode("32767.9999847412109375").raw == 0x7FFFFFFF);
  CHECK_THROWS_AS(encode("32767.99999", RoundMode::CeilPosInf), RangeError);
  CHECK_THROWS_AS(encode(""), ParseError);
  CHECK_THROWS_AS(encode("."), ParseError);
  CHECK_THROWS_AS(encode("1e3"), ParseError);
  CHECK_THROWS_AS(encode("0,5"), ParseError);
  CHECK_THROWS_AS(encode("--1"), ParseError);
}

TEST_CASE("encode matches exact rational oracle on random decimals", "[fixq16][encode][property]") {
  std::mt19937_64 rng(0xC0FFEE);
  std::uniform_int_distribution<int> int_part(-32767, 32767);
  std::uniform_int_distribution<int> frac_len(0, 25);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int i = 0; i < 20000; ++i) {
    std::string text = std::to_string(int_part(rng));
    const int len = frac_len(rng);
    if (len > 0) {
      text += '.';
      for (int k = 0; k < len; ++k) text += static_cast<char>('0' + digit(rng));
    }
    const mpq_class exact = oracle::decimal(text);
    for (bool ceil_mode : {false, true}) {
      const mpz_class want = oracle::scaled(exact, ceil_mode);
      const Fix32 got = encode(text, ceil_mode ? RoundMode::CeilPosInf : RoundMode::Trunc);
      INFO(text);
      REQUIRE(mpz_class{got.raw} == want);
    }
    // round trip: 0 <= d - decode(encode(d)) < 2^-16 under Trunc
    mpq_class back{mpz_class{encode(text).raw}, mpz_class{65536}};
    back.canonicalize();
    const mpq_class err = exact - back;
    REQUIRE(err >= 0);
    REQUIRE(err < mpq_class(1, 65536));
    // the reported error equals the exact error
    REQUIRE(oracle::decimal(encode_exact(text).abs_error) == err);
  }
}

TEST_CASE("decode gives exact decimals", "[fixq16][decode]") {
  CHECK(decode(Fix32{0x00010000}) == "1.0");
  CHECK(decode(Fix32{0x00001999}) == "0.0999908447265625");
  CHECK(decode(Fix32{0}) == "0.0");
  CHECK(decode(Fix32{1}) == "0.0000152587890625");
  CHECK(decode(Fix32{-1}) == "-0.0000152587890625");
  CHECK(decode(Fix32::max()) == "32767.9999847412109375");
  CHECK(decode(Fix32::min()) == "-32768.0");
  CHECK(to_hex(Fix32{0x1999}) == "0x00001999");
  CHECK(to_hex(Fix32{-1}) == "0xFFFFFFFF");
  CHECK(to_hex(Fix32::min()) == "0x80000000");

  // 6553/65536 via oracle
  CHECK(oracle::decimal(decode(Fix32{6553})) == mpq_class(6553, 65536));
}

TEST_CASE("decode and encode are inverse on every sampled raw word", "[fixq16][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int32_t> any(std::numeric_limits<std::int32_t>::min(),
                                                   std::numeric_limits<std::int32_t>::max());
  for (int i = 0; i < 20000; ++i) {
    const Fix32 x{any(rng)};
    REQUIRE(encode(decode(x)) == x);
    REQUIRE(encode(decode(x), RoundMode::CeilPosInf) == x);
  }
  for (auto r : edge_raws()) REQUIRE(encode(decode(Fix32{r})) == Fix32{r});
}

TEST_CASE("one_minus", "[fixq16]") {
  CHECK(one_minus(Fix32{0x8000}).raw == 0x8000);
  CHECK(one_minus(Fix32{0x10000}).raw == 0);
  CHECK(one_minus(Fix32{0}).raw == 0x10000);
  CHECK(one_minus(Fix32{0x1999}).raw == 0xE667);
  CHECK(0xE667 == 65536 - 6553);
}

TEST_CASE("mul_wide", "[fixq16][mul]") {
  CHECK(mul_wide(Fix32{0x8000}, Fix32{0x8000}).raw == 0x0000000040000000LL);
  CHECK(mul_wide(Fix32{0}, Fix32{0x7FFFFFFF}).raw == 0);
  CHECK(mul_wide(Fix32{26212}, Fix32{58983}).raw == 1546062396LL);
  CHECK(oracle::product(26212, 58983) == mpz_class{"1546062396"});
  CHECK(mul_wide(Fix32::min(), Fix32::min()).raw == (std::int64_t{1} << 62));
}

TEST_CASE("mul_wide_decomposed matches mul_wide", "[fixq16][mul][property]") {
  CHECK(mul_wide_decomposed(Fix32{0x8000}, Fix32{0x8000}).raw == 0x40000000LL);
  CHECK(mul_wide_decomposed(Fix32{0}, Fix32{12345}).raw == 0);
  CHECK(mul_wide_decomposed(Fix32{26212}, Fix32{58983}).raw == 1546062396LL);
  CHECK(mul_wide_decomposed(Fix32{-1}, Fix32{1}).raw == -1);
  CHECK(oracle::product(-1, 1) == -1);

  for (auto a : edge_raws()) {
    for (auto b : edge_raws()) {
      INFO(a << " * " << b);
      REQUIRE(mul_wide_decomposed(Fix32{a}, Fix32{b}) == mul_wide(Fix32{a}, Fix32{b}));
      REQUIRE(mpz_class{static_cast<long>(mul_wide(Fix32{a}, Fix32{b}).raw)} == oracle::product(a, b));
    }
  }

  std::mt19937 rng(42);
  std::uniform_int_distribution<std::int32_t> any(std::numeric_limits<std::int32_t>::min(),
                                                   std::numeric_limits<std::int32_t>::max());
  for (int i = 0; i < 100000; ++i) {
    const Fix32 a{any(rng)};
    const Fix32 b{any(rng)};
    REQUIRE(mul_wide_decomposed(a, b) == mul_wide(a, b));
  }
}

TEST_CASE("convert examples", "[fixq16][convert]") {
  const Flagged quarter = convert(Wide64{0x40000000LL}, RoundMode::Trunc);
  CHECK(quarter == Flagged{Fix32{0x4000}, false, false});

  CHECK(convert(Wide64{1}, RoundMode::Trunc) == Flagged{Fix32{0}, false, true});
  CHECK(convert(Wide64{1}, RoundMode::CeilPosInf) == Flagged{Fix32{1}, false, false});
  CHECK(oracle::convert(1, false).underflow);
  CHECK(oracle::convert(1, true).raw == 1);

  // 1 546 062 396 = 23591 * 65536 + 2620
  CHECK(1546062396LL == 23591LL * 65536 + 2620);
  CHECK(convert(Wide64{1546062396LL}, RoundMode::Trunc).value.raw == 23591);
  CHECK(convert(Wide64{1546062396LL}, RoundMode::CeilPosInf).value.raw == 23592);

  CHECK(convert(Wide64{0}, RoundMode::Trunc) == Flagged{Fix32{0}, false, false});
  CHECK(convert(Wide64{0}, RoundMode::CeilPosInf) == Flagged{Fix32{0}, false, false});
}

TEST_CASE("convert of negative values", "[fixq16][convert]") {
  // Trunc is floor: -2^-32 becomes -2^-16
  CHECK(convert(Wide64{-1}, RoundMode::Trunc) == Flagged{Fix32{-1}, false, false});
  // ceiling of a tiny negative is zero: underflow
  CHECK(convert(Wide64{-1}, RoundMode::CeilPosInf) == Flagged{Fix32{0}, false, true});
  CHECK(convert(Wide64{-0x10000}, RoundMode::CeilPosInf) == Flagged{Fix32{-1}, false, false});
  CHECK(convert(Wide64{-0x18000}, RoundMode::Trunc).value.raw == -2);
  CHECK(convert(Wide64{-0x18000}, RoundMode::CeilPosInf).value.raw == -1);
}

TEST_CASE("convert saturates on overflow", "[fixq16][convert]") {
  const Flagged pos = convert(Wide64{std::int64_t{1} << 62}, RoundMode::Trunc);
  CHECK(pos == Flagged{Fix32::max(), true, false});
  const Flagged neg = convert(Wide64{-(std::int64_t{1} << 62)}, RoundMode::CeilPosInf);
  CHECK(neg == Flagged{Fix32::min(), true, false});

  // boundary: largest representable passes, one more ulp saturates
  const std::int64_t top = std::int64_t{0x7FFFFFFF} << 16;
  CHECK(convert(Wide64{top}, RoundMode::CeilPosInf) == Flagged{Fix32::max(), false, false});
  CHECK(convert(Wide64{top + 1}, RoundMode::Trunc) == Flagged{Fix32::max(), false, false});
  CHECK(convert(Wide64{top + 1}, RoundMode::CeilPosInf) == Flagged{Fix32::max(), true, false});
  const std::int64_t bottom = std::int64_t{std::numeric_limits<std::int32_t>::min()} * 65536;
  CHECK(convert(Wide64{bottom}, RoundMode::Trunc) == Flagged{Fix32::min(), false, false});
  CHECK(convert(Wide64{bottom - 1}, RoundMode::Trunc) == Flagged{Fix32::min(), true, false});
  CHECK(convert(Wide64{bottom - 1}, RoundMode::CeilPosInf) == Flagged{Fix32::min(), false, false});
}

TEST_CASE("mul_convert examples", "[fixq16][mul_convert]") {
  CHECK(mul_convert(Fix32{0x40000}, Fix32{0x1999}, RoundMode::Trunc) ==
        Flagged{Fix32{26212}, false, false});
  for (auto mode : {RoundMode::Trunc, RoundMode::CeilPosInf}) {
    CHECK(mul_convert(Fix32{0x8000}, Fix32{0x8000}, mode) == Flagged{Fix32{0x4000}, false, false});
  }
  CHECK(mul_convert(Fix32{0x7FFFFFFF}, Fix32{0x20000}, RoundMode::Trunc) ==
        Flagged{Fix32{0x7FFFFFFF}, true, false});
}

TEST_CASE("convert agrees with the GMP oracle", "[fixq16][convert][property]") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> any(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  std::uniform_int_distribution<std::int64_t> small(-0x30000, 0x30000);
  for (int i = 0; i < 50000; ++i) {
    const std::int64_t w = (i % 2 == 0) ? any(rng) : small(rng);
    for (bool ceil_mode : {false, true}) {
      const Flagged got = convert(Wide64{w}, ceil_mode ? RoundMode::CeilPosInf : RoundMode::Trunc);
      const oracle::Converted want = oracle::convert(mpz_class{static_cast<long>(w)}, ceil_mode);
      REQUIRE(got.value.raw == want.raw);
      REQUIRE(got.overflow == want.overflow);
      REQUIRE(got.underflow == want.underflow);
      check_flags(got);
    }
  }
}

TEST_CASE("round-mode ordering", "[fixq16][convert][property]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> any(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t w = any(rng);
    const Flagged t = convert(Wide64{w}, RoundMode::Trunc);
    const Flagged c = convert(Wide64{w}, RoundMode::CeilPosInf);
    REQUIRE(c.value >= t.value);
    const bool low_bits_zero = (w & 0xFFFF) == 0;
    const bool saturated = t.overflow || c.overflow;
    if (!saturated) REQUIRE((c.value == t.value) == low_bits_zero);
  }
}

TEST_CASE("exact products convert without flags in both modes", "[fixq16][convert][property]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int32_t> small(-180, 180);
  std::uniform_int_distribution<std::int32_t> any16(-32768, 32767);
  for (int i = 0; i < 20000; ++i) {
    // a = k * 2^16 (an integer) makes a.raw * b.raw a multiple of 2^16
    const Fix32 a{small(rng) * 65536};
    const Fix32 b{any16(rng)};
    const Wide64 w = mul_wide(a, b);
    REQUIRE(w.raw % 65536 == 0);
    const Flagged t = convert(w, RoundMode::Trunc);
    const Flagged c = convert(w, RoundMode::CeilPosInf);
    REQUIRE(t == c);
    REQUIRE_FALSE(t.overflow);
    REQUIRE_FALSE(t.underflow);
    REQUIRE(static_cast<std::int64_t>(t.value.raw) * 65536 == w.raw);
  }
}

TEST_CASE("round mode names and signals", "[fixq16]") {
  CHECK(round_signal(RoundMode::Trunc) == '0');
  CHECK(round_signal(RoundMode::CeilPosInf) == '1');
  CHECK(parse_round_mode("trunc") == RoundMode::Trunc);
  CHECK(parse_round_mode("ceil") == RoundMode::CeilPosInf);
  CHECK(parse_round_mode("1") == RoundMode::CeilPosInf);
  CHECK_THROWS_AS(parse_round_mode("nearest"), ParseError);
}
