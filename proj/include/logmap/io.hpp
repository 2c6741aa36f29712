#pragma once

// CSV and JSON renderings of orbits, traces, comparisons and estimates.
// Output is locale-independent and byte-deterministic: fixed-point values are
// written as hex raw word plus exact decimal, doubles in shortest round-trip form.
// The layouts are documented in docs/formats.md.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logmap/analysis.hpp"
#include "logmap/ctrlsim.hpp"
#include "logmap/fixq16.hpp"
#include "logmap/uoml.hpp"

namespace logmap::io {

using nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

inline std::string_view bit(bool b) noexcept { return b ? "1" : "0"; }

inline ordered_json fix_json(Fix32 x) {
  return ordered_json{{"hex", to_hex(x)}, {"decimal", decode(x)}};
}

inline ordered_json params_json(const MapParams& p) {
  return ordered_json{{"r", fix_json(p.r)},
                      {"x0", fix_json(p.x0)},
                      {"rounding", round_name(p.mode)},
                      {"i_round", std::string(1, round_signal(p.mode))},
                      {"n_iter", p.n_iter}};
}

inline std::string optional_index(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("none");
}

inline ordered_json optional_index_json(const std::optional<std::size_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

// ---------------------------------------------------------------------------
// Orbit

inline std::string orbit_csv(const Orbit& orbit) {
  std::string out = "n,x_hex,x_decimal,overflow,underflow\n";
  for (const auto& rec : orbit.records) {
    out += std::to_string(rec.n) + ',' + to_hex(rec.x) + ',' + decode(rec.x) + ',' +
           std::string(bit(rec.overflow)) + ',' + std::string(bit(rec.underflow)) + '\n';
  }
  return out;
}

inline ordered_json orbit_json(const Orbit& orbit) {
  ordered_json records = ordered_json::array();
  for (const auto& rec : orbit.records) {
    records.push_back(ordered_json{{"n", rec.n},
                                   {"x_hex", to_hex(rec.x)},
                                   {"x_decimal", decode(rec.x)},
                                   {"overflow", rec.overflow},
                                   {"underflow", rec.underflow}});
  }
  return ordered_json{{"params", params_json(orbit.params)}, {"records", std::move(records)}};
}

// ---------------------------------------------------------------------------
// Trace

inline std::string trace_notes(const SimConfig& config) {
  return "cycle-level model; done_all half-cycle pulse shown as one full cycle; reset sampled at "
         "clock edge; uoml_latency=" +
         std::to_string(config.uoml_latency) + "; it_max=" + std::to_string(config.it_max) +
         "; rounding=" + std::string(round_name(config.params.mode));
}

inline std::string trace_csv(const std::vector<TraceEvent>& trace, const SimConfig& config) {
  std::string out = "# " + trace_notes(config) + '\n';
  out += "cycle,fsm_state,counter,ready,o_done,done_all,x_reg_hex,x_reg_decimal,o_over,o_under\n";
  for (const auto& ev : trace) {
    out += std::to_string(ev.cycle) + ',' + std::string(state_name(ev.fsm)) + ',' +
           std::to_string(ev.counter) + ',' + std::string(bit(ev.ready)) + ',' +
           std::string(bit(ev.o_done)) + ',' + std::string(bit(ev.done_all)) + ',' +
           to_hex(ev.x_reg) + ',' + decode(ev.x_reg) + ',' + std::string(bit(ev.o_over)) + ',' +
           std::string(bit(ev.o_under)) + '\n';
  }
  return out;
}

inline ordered_json trace_json(const std::vector<TraceEvent>& trace, const SimConfig& config) {
  ordered_json rows = ordered_json::array();
  for (const auto& ev : trace) {
    rows.push_back(ordered_json{{"cycle", ev.cycle},
                                {"fsm_state", state_name(ev.fsm)},
                                {"counter", ev.counter},
                                {"ready", ev.ready},
                                {"o_done", ev.o_done},
                                {"done_all", ev.done_all},
                                {"x_reg_hex", to_hex(ev.x_reg)},
                                {"x_reg_decimal", decode(ev.x_reg)},
                                {"o_over", ev.o_over},
                                {"o_under", ev.o_under}});
  }
  return ordered_json{{"notes", trace_notes(config)},
                      {"uoml_latency", config.uoml_latency},
                      {"it_max", config.it_max},
                      {"cycles", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Comparison (Trunc orbit as `a`, CeilPosInf orbit as `b`)

inline std::string compare_csv(const DivergenceProfile& profile, double eps) {
  std::string out =
      "n,x_trunc_hex,x_trunc_decimal,x_ceil_hex,x_ceil_decimal,abs_diff_hex,abs_diff,delta_raw\n";
  for (const auto& p : profile.points) {
    out += std::to_string(p.n) + ',' + to_hex(p.a) + ',' + decode(p.a) + ',' + to_hex(p.b) + ',' +
           decode(p.b) + ',' + to_hex(p.abs_diff_fix()) + ',' + decode(p.abs_diff_fix()) + ',' +
           std::to_string(p.delta_raw) + '\n';
  }
  out += "# first_bit_divergence=" + optional_index(profile.first_bit_divergence) + '\n';
  out += "# epsilon=" + format_double(eps) + '\n';
  out += "# first_visible_divergence=" + optional_index(profile.first_visible_divergence(eps)) + '\n';
  return out;
}

inline ordered_json compare_json(const DivergenceProfile& profile, const MapParams& params,
                                 double eps) {
  ordered_json rows = ordered_json::array();
  for (const auto& p : profile.points) {
    rows.push_back(ordered_json{{"n", p.n},
                                {"x_trunc_hex", to_hex(p.a)},
                                {"x_trunc_decimal", decode(p.a)},
                                {"x_ceil_hex", to_hex(p.b)},
                                {"x_ceil_decimal", decode(p.b)},
                                {"abs_diff_hex", to_hex(p.abs_diff_fix())},
                                {"abs_diff", decode(p.abs_diff_fix())},
                                {"delta_raw", p.delta_raw}});
  }
  ordered_json p = params_json(params);
  p.erase("rounding");
  p.erase("i_round");
  return ordered_json{
      {"params", std::move(p)},
      {"rows", std::move(rows)},
      {"summary",
       {{"first_bit_divergence", optional_index_json(profile.first_bit_divergence)},
        {"epsilon", eps},
        {"first_visible_divergence", optional_index_json(profile.first_visible_divergence(eps))}}}};
}

// ---------------------------------------------------------------------------
// Lyapunov

inline std::string lyapunov_csv(const LyapunovEstimate& est) {
  std::string out = "quantity,value\n";
  out += "lambda," + format_double(est.lambda) + '\n';
  out += "n_used," + std::to_string(est.n_used) + '\n';
  out += "skipped," + std::to_string(est.skipped) + '\n';
  out += "reference_ln2," + (est.reference ? format_double(*est.reference) : "none") + '\n';
  out += "deviation," + format_double(est.deviation()) + '\n';
  out += "lambda_abs_log," + format_double(est.lambda_abs_log) + '\n';
  return out;
}

inline ordered_json lyapunov_json(const LyapunovEstimate& est, const MapParams& params) {
  return ordered_json{{"params", params_json(params)},
                      {"lambda", est.lambda},
                      {"n_used", est.n_used},
                      {"skipped", est.skipped},
                      {"reference_ln2", est.reference ? ordered_json(*est.reference) : ordered_json(nullptr)},
                      {"deviation", est.deviation()},
                      {"lambda_abs_log", est.lambda_abs_log}};
}

// ---------------------------------------------------------------------------
// Encoding

inline std::string scientific(std::string_view exact_decimal) {
  double v = 0.0;
  std::from_chars(exact_decimal.data(), exact_decimal.data() + exact_decimal.size(), v);
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, ptr);
}

inline std::string encode_csv(std::string_view input, RoundMode mode, const Encoding& enc) {
  std::string out = "input,rounding,x_hex,x_decimal,exact,abs_error,abs_error_sci\n";
  out += std::string(input) + ',' + std::string(round_name(mode)) + ',' + to_hex(enc.value) + ',' +
         decode(enc.value) + ',' + std::string(bit(enc.exact)) + ',' + enc.abs_error + ',' +
         scientific(enc.abs_error) + '\n';
  return out;
}

inline ordered_json encode_json(std::string_view input, RoundMode mode, const Encoding& enc) {
  return ordered_json{{"input", input},
                      {"rounding", round_name(mode)},
                      {"x_hex", to_hex(enc.value)},
                      {"x_decimal", decode(enc.value)},
                      {"exact", enc.exact},
                      {"abs_error", enc.abs_error},
                      {"abs_error_sci", scientific(enc.abs_error)}};
}

}  // namespace logmap::io
