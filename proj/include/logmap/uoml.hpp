#pragma once

// Logistic-map operative unit: x' = (r * x) * (1 - x), with (r * x) and
// (1 - x) formed in parallel and r * x rounded back to 32 bits by its own
// multiply-convert unit before the final product.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "logmap/errors.hpp"
#include "logmap/fixq16.hpp"

namespace logmap {

struct MapParams {
  Fix32 r;
  Fix32 x0;
  RoundMode mode = RoundMode::Trunc;
  std::size_t n_iter = 0;

  friend bool operator==(const MapParams&, const MapParams&) = default;
};

inline bool r_in_domain(Fix32 r) noexcept { return r.raw > 0 && r.raw <= 4 * kOne; }
inline bool x_in_domain(Fix32 x) noexcept { return x.raw >= 0 && x.raw <= kOne; }

/// Throws DomainError unless 0 < r <= 4 and 0 <= x0 <= 1.
inline void validate(const MapParams& p) {
  if (!r_in_domain(p.r)) {
    throw DomainError("r = " + decode(p.r) + " (" + to_hex(p.r) + ") must satisfy 0 < r <= 4");
  }
  if (!x_in_domain(p.x0)) {
    throw DomainError("x0 = " + decode(p.x0) + " (" + to_hex(p.x0) + ") must satisfy 0 <= x0 <= 1");
  }
}

/// Result of one UOML pass. `overflow` / `underflow` are the OR of both
/// stages; the per-stage flags are kept for traces.
struct StepResult {
  Fix32 value;
  bool overflow = false;
  bool underflow = false;
  Flagged stage_rx;     // r * x after conversion
  Flagged stage_final;  // (r * x) * (1 - x) after conversion
};

inline StepResult iterate_once(Fix32 x, Fix32 r, RoundMode mode) {
  if (!x_in_domain(x)) {
    throw DomainError("x = " + decode(x) + " (" + to_hex(x) + ") must satisfy 0 <= x <= 1");
  }
  if (!r_in_domain(r)) {
    throw DomainError("r = " + decode(r) + " (" + to_hex(r) + ") must satisfy 0 < r <= 4");
  }
  const Flagged rx = mul_convert(r, x, mode);
  const Fix32 complement = one_minus(x);
  const Flagged out = mul_convert(rx.value, complement, mode);
  return StepResult{out.value, rx.overflow || out.overflow, rx.underflow || out.underflow, rx, out};
}

struct IterationRecord {
  std::size_t n = 0;
  Fix32 x;
  bool overflow = false;
  bool underflow = false;
  // debug: per-stage converter flags (both false for n = 0)
  Flagged stage_rx;
  Flagged stage_final;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

/// x_0 .. x_{n_iter}; records[0] carries x0 with clear flags.
struct Orbit {
  MapParams params;
  std::vector<IterationRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  Fix32 operator[](std::size_t n) const { return records.at(n).x; }

  std::vector<Fix32> values() const {
    std::vector<Fix32> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.x);
    return out;
  }
};

inline Orbit run_orbit(const MapParams& params) {
  validate(params);
  Orbit orbit{params, {}};
  orbit.records.reserve(params.n_iter + 1);
  orbit.records.push_back(IterationRecord{0, params.x0, false, false, {}, {}});
  Fix32 x = params.x0;
  for (std::size_t n = 1; n <= params.n_iter; ++n) {
    const StepResult step = iterate_once(x, params.r, params.mode);
    orbit.records.push_back(
        IterationRecord{n, step.value, step.overflow, step.underflow, step.stage_rx, step.stage_final});
    x = step.value;
  }
  return orbit;
}

}  // namespace logmap
