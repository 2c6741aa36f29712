#pragma once

// Q16.16 fixed-point core of the logistic-map datapath: a 32-bit signed word
// with 16 fractional bits, the exact 32x32 -> 64 bit product, and the 64 -> 32
// bit converter with selectable rounding, saturation and underflow flags.

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "logmap/decimal.hpp"
#include "logmap/errors.hpp"

namespace logmap {

inline constexpr int kFracBits = 16;
inline constexpr std::int64_t kOne = std::int64_t{1} << kFracBits;

/// Q16.16 number held as its raw two's-complement word. Every raw value is valid.
struct Fix32 {
  std::int32_t raw = 0;

  static constexpr Fix32 from_raw(std::int32_t r) noexcept { return Fix32{r}; }
  static constexpr Fix32 one() noexcept { return Fix32{static_cast<std::int32_t>(kOne)}; }
  static constexpr Fix32 max() noexcept { return Fix32{std::numeric_limits<std::int32_t>::max()}; }
  static constexpr Fix32 min() noexcept { return Fix32{std::numeric_limits<std::int32_t>::min()}; }

  constexpr double to_double() const noexcept { return static_cast<double>(raw) / kOne; }

  friend constexpr auto operator<=>(Fix32, Fix32) = default;
};

/// Q32.32 product of two Fix32 words.
struct Wide64 {
  std::int64_t raw = 0;

  constexpr double to_double() const noexcept {
    return static_cast<double>(raw) / 4294967296.0;
  }

  friend constexpr auto operator<=>(Wide64, Wide64) = default;
};

/// Converter rounding, mirroring the i_round input: '0' truncates, '1' rounds toward +inf.
enum class RoundMode : std::uint8_t {
  Trunc = 0,
  CeilPosInf = 1,
};

constexpr char round_signal(RoundMode m) noexcept { return m == RoundMode::Trunc ? '0' : '1'; }

constexpr std::string_view round_name(RoundMode m) noexcept {
  return m == RoundMode::Trunc ? "trunc" : "ceil";
}

inline RoundMode parse_round_mode(std::string_view text) {
  if (text == "trunc" || text == "0") return RoundMode::Trunc;
  if (text == "ceil" || text == "1") return RoundMode::CeilPosInf;
  throw ParseError("unknown rounding mode '" + std::string(text) + "' (expected trunc|ceil)");
}

/// Converter output with the o_over / o_under indicator bits.
struct Flagged {
  Fix32 value;
  bool overflow = false;
  bool underflow = false;

  friend constexpr bool operator==(const Flagged&, const Flagged&) = default;
};

// ---------------------------------------------------------------------------
// Text forms

/// Canonical hex form of the raw word, e.g. 0x00001999.
inline std::string to_hex(Fix32 x) {
  char buf[11];
  std::snprintf(buf, sizeof buf, "0x%08X", static_cast<std::uint32_t>(x.raw));
  return buf;
}

/// Exact decimal expansion of raw / 2^16, e.g. 0.0999908447265625.
inline std::string decode(Fix32 x) {
  const std::int64_t v = x.raw;
  const auto magnitude = static_cast<std::uint64_t>(v < 0 ? -v : v);
  return (v < 0 ? "-" : "") + decimal::q16_magnitude(magnitude);
}

// ---------------------------------------------------------------------------
// Encoding

struct Encoding {
  Fix32 value;
  bool exact = true;
  std::string abs_error;  // |d - decode(value)|, exact decimal
};

namespace detail {

inline Fix32 checked_fix(std::int64_t raw, std::string_view source) {
  if (raw < std::numeric_limits<std::int32_t>::min() ||
      raw > std::numeric_limits<std::int32_t>::max()) {
    throw RangeError("'" + std::string(source) + "' is outside the Q16.16 range [-32768, 32768)");
  }
  return Fix32{static_cast<std::int32_t>(raw)};
}

inline std::int64_t parse_int64(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc::result_out_of_range) {
    throw RangeError("'" + std::string(whole) + "' is outside the Q16.16 range [-32768, 32768)");
  }
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

inline Encoding encode_rational(std::string_view text, RoundMode mode) {
  const auto slash = text.find('/');
  const std::int64_t num = parse_int64(text.substr(0, slash), text);
  const std::int64_t den = parse_int64(text.substr(slash + 1), text);
  if (den <= 0) throw ParseError("rational denominator must be positive: '" + std::string(text) + "'");

  const __int128 scaled = static_cast<__int128>(num) * kOne;
  __int128 q = scaled / den;
  __int128 rem = scaled % den;
  if (rem < 0) {  // C++ division truncates; move to floor
    q -= 1;
    rem += den;
  }
  const bool exact = rem == 0;
  if (!exact && mode == RoundMode::CeilPosInf) q += 1;
  if (q < std::numeric_limits<std::int32_t>::min() || q > std::numeric_limits<std::int32_t>::max()) {
    throw RangeError("'" + std::string(text) + "' is outside the Q16.16 range [-32768, 32768)");
  }

  Encoding out{Fix32{static_cast<std::int32_t>(q)}, exact, "0.0"};
  if (!exact) {
    // error in ulps = rem/den (floor) or 1 - rem/den (ceil); expand rem/den
    // to enough decimal digits to be exact whenever den | 10^k, else 40 digits.
    __int128 err_num = mode == RoundMode::Trunc ? rem : den - rem;
    std::string digits;
    for (int i = 0; i < 40 && err_num != 0; ++i) {
      err_num *= 10;
      digits.push_back(static_cast<char>('0' + static_cast<int>(err_num / den)));
      err_num %= den;
    }
    out.abs_error = decimal::ulps_to_decimal(digits);
  }
  return out;
}

}  // namespace detail

/// Encodes a decimal ("0.1", "-2.75") or rational ("1/10") string. Trunc gives
/// floor(d * 2^16), CeilPosInf gives ceil(d * 2^16). Reports the exact error.
inline Encoding encode_exact(std::string_view text, RoundMode mode = RoundMode::Trunc) {
  if (text.find('/') != std::string_view::npos) return detail::encode_rational(text, mode);

  const decimal::ParsedDecimal d = decimal::parse(text);
  if (d.int_digits.size() > 6) {
    throw RangeError("'" + std::string(text) + "' is outside the Q16.16 range [-32768, 32768)");
  }
  const std::int64_t int_part = d.int_digits.empty() ? 0 : std::stoll(d.int_digits);
  const auto [carry, rest] = decimal::mul_fraction(d.frac_digits, kOne);
  const std::int64_t magnitude = int_part * kOne + static_cast<std::int64_t>(carry);
  const bool exact = decimal::all_zero(rest);

  // For d >= 0 truncation moves toward zero; for d < 0 it moves away from it.
  std::int64_t raw = d.negative ? -magnitude : magnitude;
  bool toward_zero = true;
  if (!exact) {
    if (!d.negative && mode == RoundMode::CeilPosInf) {
      raw += 1;
      toward_zero = false;
    } else if (d.negative && mode == RoundMode::Trunc) {
      raw -= 1;
      toward_zero = false;
    }
  }

  Encoding out{detail::checked_fix(raw, text), exact, "0.0"};
  if (!exact) {
    out.abs_error = decimal::ulps_to_decimal(toward_zero ? rest : decimal::complement(rest));
  }
  return out;
}

inline Fix32 encode(std::string_view text, RoundMode mode = RoundMode::Trunc) {
  return encode_exact(text, mode).value;
}

// ---------------------------------------------------------------------------
// Datapath arithmetic

/// 1 - x, exact. Only meaningful for x in [0, 1]; the result then lies in [0, 1].
constexpr Fix32 one_minus(Fix32 x) noexcept {
  return Fix32{static_cast<std::int32_t>(kOne - x.raw)};
}

/// Exact 64-bit product of two Q16.16 words, read as Q32.32.
constexpr Wide64 mul_wide(Fix32 a, Fix32 b) noexcept {
  return Wide64{static_cast<std::int64_t>(a.raw) * b.raw};
}

/// The same product assembled from four 16x16 partial products, as the
/// hardware does on its 9-bit embedded multipliers. The high halves are
/// signed, the low halves unsigned: x = xh * 2^16 + xl.
constexpr Wide64 mul_wide_decomposed(Fix32 a, Fix32 b) noexcept {
  const std::int64_t ah = a.raw >> 16;  // arithmetic shift, in [-2^15, 2^15)
  const std::int64_t al = static_cast<std::uint16_t>(a.raw);
  const std::int64_t bh = b.raw >> 16;
  const std::int64_t bl = static_cast<std::uint16_t>(b.raw);

  const std::int64_t hh = ah * bh;  // |hh| <= 2^30
  const std::int64_t hl = ah * bl;
  const std::int64_t lh = al * bh;
  const std::int64_t ll = al * bl;  // < 2^32

  return Wide64{hh * (std::int64_t{1} << 32) + (hl + lh) * (std::int64_t{1} << 16) + ll};
}

/// 64 -> 32 bit conversion. Trunc drops the low 16 bits (floor); CeilPosInf
/// adds one ulp when any dropped bit is set. Out-of-range results saturate with
/// overflow set; a nonzero input that rounds to zero sets underflow.
constexpr Flagged convert(Wide64 w, RoundMode mode) noexcept {
  std::int64_t q = w.raw >> 16;
  if (mode == RoundMode::CeilPosInf && (w.raw & 0xFFFF) != 0) q += 1;

  if (q > std::numeric_limits<std::int32_t>::max()) return Flagged{Fix32::max(), true, false};
  if (q < std::numeric_limits<std::int32_t>::min()) return Flagged{Fix32::min(), true, false};
  if (q == 0 && w.raw != 0) return Flagged{Fix32{0}, false, true};
  return Flagged{Fix32{static_cast<std::int32_t>(q)}, false, false};
}

/// One multiply-convert unit.
constexpr Flagged mul_convert(Fix32 a, Fix32 b, RoundMode mode) noexcept {
  return convert(mul_wide_decomposed(a, b), mode);
}

}  // namespace logmap
