#pragma once

// Exact decimal digit-string helpers. Q16.16 values are binary fractions
// with at most 16 fractional decimal digits, so every conversion here is
// exact; nothing goes through floating point.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "logmap/errors.hpp"

namespace logmap::decimal {

struct ParsedDecimal {
  bool negative = false;
  std::string int_digits;   // no leading zeros, may be empty
  std::string frac_digits;  // no trailing zeros, may be empty
};

inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

// Accepts [+-]?digits[.digits] and [+-]?.digits. No exponent, no grouping.
inline ParsedDecimal parse(std::string_view text) {
  ParsedDecimal out;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    out.negative = text[i] == '-';
    ++i;
  }
  std::size_t digits_seen = 0;
  while (i < text.size() && is_digit(text[i])) {
    out.int_digits.push_back(text[i++]);
    ++digits_seen;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      out.frac_digits.push_back(text[i++]);
      ++digits_seen;
    }
  }
  if (digits_seen == 0 || i != text.size()) {
    throw ParseError("not a decimal number: '" + std::string(text) + "'");
  }
  const auto first = out.int_digits.find_first_not_of('0');
  out.int_digits.erase(0, first == std::string::npos ? out.int_digits.size() : first);
  const auto last = out.frac_digits.find_last_not_of('0');
  out.frac_digits.erase(last == std::string::npos ? 0 : last + 1);
  if (out.int_digits.empty() && out.frac_digits.empty()) out.negative = false;
  return out;
}

// Multiplies the fraction 0.<digits> by `factor`. Returns the integer part
// of the product and the fractional digits (same length as the input).
inline std::pair<std::uint64_t, std::string> mul_fraction(std::string_view digits,
                                                          std::uint64_t factor) {
  std::string frac(digits);
  std::uint64_t carry = 0;
  for (auto it = frac.rbegin(); it != frac.rend(); ++it) {
    const std::uint64_t v = static_cast<std::uint64_t>(*it - '0') * factor + carry;
    *it = static_cast<char>('0' + v % 10);
    carry = v / 10;
  }
  return {carry, frac};
}

inline bool all_zero(std::string_view digits) noexcept {
  return digits.find_first_not_of('0') == std::string_view::npos;
}

// 1 - 0.<digits>, as a digit string of the same length. Input must be nonzero.
inline std::string complement(std::string_view digits) {
  std::string out(digits);
  bool last = true;
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    int d = (last ? 10 : 9) - (*it - '0');
    if (last && d == 10) {
      d = 0;  // trailing zero stays zero; the 10 carries left
    } else {
      last = false;
    }
    *it = static_cast<char>('0' + d);
  }
  return out;
}

inline std::string strip_trailing_zeros(std::string digits) {
  const auto last = digits.find_last_not_of('0');
  digits.erase(last == std::string::npos ? 0 : last + 1);
  return digits;
}

inline std::string pad_left(std::string digits, std::size_t width) {
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

constexpr std::uint64_t kFivePow16 = 152587890625ULL;

// Exact decimal of value / 2^16 for a nonnegative 64-bit magnitude.
inline std::string q16_magnitude(std::uint64_t magnitude) {
  const std::uint64_t int_part = magnitude >> 16;
  const std::uint64_t frac = magnitude & 0xFFFFu;
  std::string frac_digits = strip_trailing_zeros(pad_left(std::to_string(frac * kFivePow16), 16));
  if (frac_digits.empty()) frac_digits = "0";
  return std::to_string(int_part) + "." + frac_digits;
}

// Exact decimal of 0.<ulp_digits> ulps, one ulp being 2^-16.
inline std::string ulps_to_decimal(std::string_view ulp_digits) {
  auto [carry, rest] = mul_fraction(ulp_digits, kFivePow16);
  std::string digits = strip_trailing_zeros(pad_left(std::to_string(carry), 16) + rest);
  if (digits.empty()) return "0.0";
  return "0." + digits;
}

}  // namespace logmap::decimal
