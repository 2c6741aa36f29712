// logmap: command-line front end for the Q16.16 logistic-map reference model.
//
//   logmap encode 0.1 --rounding trunc
//   logmap iterate --r 4 --x0 0.1 --n 150 --rounding trunc
//   logmap simulate --it-max 150 --trace trace.csv -o orbit.csv
//   logmap compare --epsilon 0.1 --format json
//   logmap lyapunov --rounding ceil
//
// Defaults reproduce the reference experiment: r = 4, x0 = 0.1, 150 iterations.
// Errors go to stderr as one line, "error: <category>: <message>", with a
// category-specific nonzero exit status.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "logmap/io.hpp"
#include "logmap/logmap.hpp"

namespace {

using namespace logmap;

enum class Format { Csv, Json };

struct Common {
  std::string r = "4";
  std::string x0 = "0.1";
  std::string n = "150";
  std::string rounding = "trunc";
  std::string encode_rounding = "trunc";
  std::string format = "csv";
  std::string output;
};

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ParseError("unknown format '" + text + "' (expected csv|json)");
}

std::uint64_t parse_count(const std::string& text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(std::string(what) + " must be a nonnegative integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(std::string(what) + " must be a real number, got '" + text + "'");
  }
  return v;
}

MapParams build_params(const Common& c, std::size_t n_iter) {
  const RoundMode enc = parse_round_mode(c.encode_rounding);
  MapParams p;
  p.r = encode(c.r, enc);
  p.x0 = encode(c.x0, enc);
  p.mode = parse_round_mode(c.rounding);
  p.n_iter = n_iter;
  validate(p);
  return p;
}

// Empty output path: $LOGMAP_OUTPUT_DIR/<name>.<ext> when the variable is set,
// standard output otherwise.
std::string resolve_output(const Common& c, std::string_view name) {
  if (!c.output.empty()) return c.output;
  if (const char* dir = std::getenv("LOGMAP_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    const char* ext = c.format == "json" ? ".json" : ".csv";
    return (std::filesystem::path(dir) / (std::string(name) + ext)).string();
  }
  return {};
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

std::string render(Format f, const std::string& csv, const io::ordered_json& json) {
  return f == Format::Csv ? csv : json.dump(2) + '\n';
}

void add_common(CLI::App* cmd, Common& c, bool with_mode, bool with_n) {
  cmd->add_option("--r", c.r, "map parameter r, decimal or p/q, 0 < r <= 4")->capture_default_str();
  cmd->add_option("--x0", c.x0, "initial condition, decimal or p/q, 0 <= x0 <= 1")
      ->capture_default_str();
  if (with_n) cmd->add_option("-n,--n", c.n, "number of iterations")->capture_default_str();
  if (with_mode) {
    cmd->add_option("--rounding", c.rounding, "datapath rounding: trunc (i_round='0') | ceil (i_round='1')")
        ->capture_default_str();
  }
  cmd->add_option("--encode-rounding", c.encode_rounding,
                  "rounding used to digitize r and x0: trunc | ceil")
      ->capture_default_str();
  cmd->add_option("--format", c.format, "output format: csv | json")->capture_default_str();
  cmd->add_option("-o,--output", c.output, "output file (default: stdout or $LOGMAP_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-exact Q16.16 logistic-map reference model"};
  app.require_subcommand(1);

  Common common;

  std::string encode_input;
  auto* encode_cmd = app.add_subcommand("encode", "show the Q16.16 encoding of a decimal");
  encode_cmd->add_option("value", encode_input, "decimal or p/q")->required();
  encode_cmd->add_option("--rounding", common.rounding, "trunc | ceil")->capture_default_str();
  encode_cmd->add_option("--format", common.format, "csv | json")->capture_default_str();
  encode_cmd->add_option("-o,--output", common.output, "output file");

  auto* iterate_cmd = app.add_subcommand("iterate", "run the fixed-point orbit");
  add_common(iterate_cmd, common, true, true);

  std::string it_max = "150";
  std::string latency = std::to_string(kDefaultUomlLatency);
  std::string trace_path;
  auto* simulate_cmd = app.add_subcommand("simulate", "cycle-level control-unit simulation");
  add_common(simulate_cmd, common, true, false);
  simulate_cmd->add_option("--it-max", it_max, "iteration count It_Max (11-bit counter, 0..2047)")
      ->capture_default_str();
  simulate_cmd->add_option("--latency", latency, "UOML latency in cycles")->capture_default_str();
  simulate_cmd->add_option("--trace", trace_path, "per-cycle trace file (default: <output>.trace.<ext>)");

  std::string epsilon = "0.1";
  auto* compare_cmd = app.add_subcommand("compare", "trunc vs ceil orbit divergence");
  add_common(compare_cmd, common, false, true);
  compare_cmd->add_option("--epsilon", epsilon, "visible-divergence threshold")->capture_default_str();

  auto* lyapunov_cmd = app.add_subcommand("lyapunov", "Lyapunov exponent of the fixed-point orbit");
  add_common(lyapunov_cmd, common, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return exit_code(ErrorCategory::Parse);
  }

  try {
    const Format format = parse_format(common.format);

    if (*encode_cmd) {
      const RoundMode mode = parse_round_mode(common.rounding);
      const Encoding enc = encode_exact(encode_input, mode);
      emit(resolve_output(common, "encode"),
           render(format, io::encode_csv(encode_input, mode, enc),
                  io::encode_json(encode_input, mode, enc)));
    } else if (*iterate_cmd) {
      const MapParams params = build_params(common, parse_count(common.n, "--n"));
      const Orbit orbit = run_orbit(params);
      emit(resolve_output(common, "iterate"),
           render(format, io::orbit_csv(orbit), io::orbit_json(orbit)));
    } else if (*simulate_cmd) {
      const std::uint64_t max_iter = parse_count(it_max, "--it-max");
      if (max_iter > kCounterMax) {
        throw ConfigError("it_max = " + it_max + " exceeds the 11-bit iteration counter (max 2047)");
      }
      SimConfig config;
      config.params = build_params(common, max_iter);
      config.it_max = static_cast<std::uint32_t>(max_iter);
      const std::uint64_t lat = parse_count(latency, "--latency");
      if (lat == 0 || lat > 1'000'000) throw ConfigError("--latency must be in 1..1000000");
      config.uoml_latency = static_cast<std::uint32_t>(lat);

      const SimResult result = run_sim(config);
      const std::string out_path = resolve_output(common, "simulate");
      emit(out_path, render(format, io::orbit_csv(result.orbit), io::orbit_json(result.orbit)));

      std::string tpath = trace_path;
      if (tpath.empty() && !out_path.empty() && out_path != "-") {
        const std::filesystem::path p(out_path);
        tpath = (p.parent_path() / (p.stem().string() + ".trace" + p.extension().string())).string();
      }
      if (!tpath.empty()) {
        emit(tpath, render(format, io::trace_csv(result.trace, config),
                           io::trace_json(result.trace, config)));
      }
    } else if (*compare_cmd) {
      const double eps = parse_real(epsilon, "--epsilon");
      MapParams trunc = build_params(common, parse_count(common.n, "--n"));
      trunc.mode = RoundMode::Trunc;
      MapParams ceil = trunc;
      ceil.mode = RoundMode::CeilPosInf;
      auto ceil_orbit = std::async(std::launch::async, [&ceil] { return run_orbit(ceil); });
      const Orbit trunc_orbit = run_orbit(trunc);
      const DivergenceProfile profile = divergence(trunc_orbit, ceil_orbit.get());
      emit(resolve_output(common, "compare"),
           render(format, io::compare_csv(profile, eps), io::compare_json(profile, trunc, eps)));
    } else if (*lyapunov_cmd) {
      const MapParams params = build_params(common, parse_count(common.n, "--n"));
      const LyapunovEstimate est = lyapunov(run_orbit(params));
      emit(resolve_output(common, "lyapunov"),
           render(format, io::lyapunov_csv(est), io::lyapunov_json(est, params)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << category_name(e.category()) << ": " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
