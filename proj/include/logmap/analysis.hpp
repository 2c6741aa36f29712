#pragma once

// Post-processing of completed orbits in double precision: Lyapunov exponent
// estimate and rounding-mode divergence profile.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <vector>

#include "logmap/errors.hpp"
#include "logmap/fixq16.hpp"
#include "logmap/uoml.hpp"

namespace logmap {

/// f'(x) = r (1 - 2x) for the logistic map.
constexpr double derivative(double x, double r) noexcept { return r * (1.0 - 2.0 * x); }

struct LyapunovEstimate {
  double lambda = 0.0;          // (1/N) sum ln|f'(x_n)|
  std::size_t n_used = 0;       // N, after skipping f' = 0 terms
  std::size_t skipped = 0;      // terms with f'(x_n) == 0
  double lambda_abs_log = 0.0;  // (1/N) sum |ln f'(x_n)|, for comparison only
  std::optional<double> reference;

  double deviation() const noexcept { return reference ? lambda - *reference : 0.0; }
};

/// Averages ln|f'(x_n)| over n = 0 .. N-1, N = orbit length - 1. Terms where
/// x_n is exactly 1/2 have f' = 0 and are skipped (counted in `skipped`).
inline LyapunovEstimate lyapunov(const Orbit& orbit,
                                 std::optional<double> reference = std::numbers::ln2) {
  if (orbit.size() < 2) {
    throw InsufficientDataError("Lyapunov estimate needs at least one iteration (N >= 1), orbit has " +
                                std::to_string(orbit.size()) + " point(s)");
  }
  const double r = orbit.params.r.to_double();
  const std::size_t terms = orbit.size() - 1;

  LyapunovEstimate est;
  est.reference = reference;
  double sum = 0.0;
  double sum_abs = 0.0;
  for (std::size_t n = 0; n < terms; ++n) {
    const double d = derivative(orbit[n].to_double(), r);
    if (d == 0.0) {
      ++est.skipped;
      continue;
    }
    const double term = std::log(std::abs(d));
    sum += term;
    sum_abs += std::abs(term);
    ++est.n_used;
  }
  if (est.n_used == 0) {
    throw InsufficientDataError("every Lyapunov term has f'(x) = 0");
  }
  est.lambda = sum / static_cast<double>(est.n_used);
  est.lambda_abs_log = sum_abs / static_cast<double>(est.n_used);
  return est;
}

struct DivergencePoint {
  std::size_t n = 0;
  Fix32 a;
  Fix32 b;
  std::int64_t delta_raw = 0;  // a.raw - b.raw
  double abs_diff = 0.0;       // |decode(a) - decode(b)|

  Fix32 abs_diff_fix() const noexcept {
    return Fix32{static_cast<std::int32_t>(delta_raw < 0 ? -delta_raw : delta_raw)};
  }
};

struct DivergenceProfile {
  std::vector<DivergencePoint> points;
  std::optional<std::size_t> first_bit_divergence;

  /// Smallest n with |delta| > eps, if any.
  std::optional<std::size_t> first_visible_divergence(double eps) const {
    for (const auto& p : points) {
      if (p.abs_diff > eps) return p.n;
    }
    return std::nullopt;
  }
};

/// Compares two orbits of the same r, x0 and length; only the rounding mode may differ.
inline DivergenceProfile divergence(const Orbit& a, const Orbit& b) {
  if (a.params.r != b.params.r || a.params.x0 != b.params.x0 ||
      a.params.n_iter != b.params.n_iter) {
    throw ComparisonError("orbits differ in r, x0 or n_iter; only the rounding mode may differ");
  }
  if (a.size() != b.size()) {
    throw ComparisonError("orbit lengths differ: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  DivergenceProfile out;
  out.points.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    const Fix32 xa = a[n];
    const Fix32 xb = b[n];
    const std::int64_t delta = static_cast<std::int64_t>(xa.raw) - xb.raw;
    out.points.push_back(DivergencePoint{n, xa, xb, delta,
                                         std::abs(static_cast<double>(delta)) / kOne});
    if (delta != 0 && !out.first_bit_divergence) out.first_bit_divergence = n;
  }
  return out;
}

}  // namespace logmap
