#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dv/analysis.hpp"
#include "dv/dv.hpp"
#include "dv/reference/cache.hpp"

namespace dv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitEvaluation = 1;
inline constexpr int kExitUsage = 2;

struct ParamOptions {
  std::string preset = "default";
  std::optional<double> h;
  std::optional<int> m_max;
  std::optional<double> varsigma;
  std::optional<int> n_terms;

  ApproximationParams resolve() const {
    ApproximationParams p = preset == "high-accuracy" ? high_accuracy_params() : default_params();
    if (h) p.h = *h;
    if (m_max) p.m_max = *m_max;
    if (varsigma) p.varsigma = *varsigma;
    if (n_terms) p.n_terms = *n_terms;
    return p;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void add_param_options(CLI::App* cmd, ParamOptions& p) {
  cmd->add_option("--preset", p.preset, "Coefficient preset")
      ->check(CLI::IsMember({"default", "high-accuracy"}))
      ->capture_default_str();
  cmd->add_option("--h", p.h, "Sampling step h (overrides the preset)");
  cmd->add_option("--m-max", p.m_max, "Number of summation terms (overrides the preset)");
  cmd->add_option("--varsigma", p.varsigma, "Shift constant (overrides the preset)");
  cmd->add_option("--n-terms", p.n_terms, "Half-width N of the sampling sum (overrides the preset)");
}

inline void add_output_options(CLI::App* cmd, std::string& format, std::string& output) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--output", output, "Write to this file instead of stdout");
}

inline void write_params_meta(std::ostream& os, const ApproximationParams& p) {
  os << "# h=" << format_sci17(p.h) << "\n"
     << "# m_max=" << p.m_max << "\n"
     << "# varsigma=" << format_sci17(p.varsigma) << "\n"
     << "# n_terms=" << p.n_terms << "\n";
}

inline nlohmann::ordered_json params_json(const ApproximationParams& p) {
  return {{"h", p.h}, {"m_max", p.m_max}, {"varsigma", p.varsigma}, {"n_terms", p.n_terms}};
}

inline CoefficientSet coefficients_for(const ParamOptions& opts) {
  const ApproximationParams p = opts.resolve();
  if (!is_valid(p)) throw UsageError("invalid approximation params: h > 0, varsigma > 0, m_max >= 1, n_terms >= 1 required");
  return build_coefficients(p);
}

// Sends text either to the given stream or to a file.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dawson integral, Voigt and Faddeeva functions by rational approximation", "dv"};
  app.require_subcommand(1);
  // "--h" is the sampling-step option, so help is only reachable as --help.
  app.set_help_flag("--help", "Print this help message and exit");

  // eval
  ParamOptions eval_params;
  std::string eval_func;
  double eval_x = 0;
  double eval_y = 0;
  std::string eval_format = "csv";
  std::string eval_output;
  auto* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  eval->add_option("--func", eval_func, "K, L, w, F or Fc")->required()->check(CLI::IsMember({"K", "L", "w", "F", "Fc"}));
  eval->add_option("--x", eval_x, "Real part x")->required();
  eval->add_option("--y", eval_y, "Imaginary part y (>= 0)")->capture_default_str();
  detail::add_param_options(eval, eval_params);
  detail::add_output_options(eval, eval_format, eval_output);

  // sweep-dawson
  ParamOptions sweep_params;
  double sweep_xmax = 15.0;
  int sweep_points = 10000;
  int sweep_digits = 50;
  std::string sweep_format = "csv";
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep-dawson", "Dawson difference curve against the oracle");
  sweep->add_option("--xmax", sweep_xmax, "Upper end of the x range")->capture_default_str();
  sweep->add_option("--points", sweep_points, "Number of uniform points, endpoints included")->capture_default_str();
  sweep->add_option("--digits", sweep_digits, "Oracle working digits (>= 50)")->capture_default_str();
  detail::add_param_options(sweep, sweep_params);
  detail::add_output_options(sweep, sweep_format, sweep_output);

  // error-map
  ParamOptions map_params;
  double map_xmax = 15.0;
  double map_ymax = 1e-6;
  int map_nx = 301;
  int map_ny = 31;
  std::string map_cache;
  bool map_cache_only = false;
  std::string map_format = "csv";
  std::string map_output;
  auto* emap = app.add_subcommand("error-map", "Relative error surface of the Voigt function");
  emap->add_option("--xmax", map_xmax)->capture_default_str();
  emap->add_option("--ymax", map_ymax)->capture_default_str();
  emap->add_option("--nx", map_nx)->capture_default_str();
  emap->add_option("--ny", map_ny)->capture_default_str();
  emap->add_option("--cache", map_cache, "Oracle cache file (default: $DV_ORACLE_CACHE or the bundled cache)");
  emap->add_flag("--cache-only", map_cache_only, "Fail instead of evaluating the oracle for points missing from the cache");
  detail::add_param_options(emap, map_params);
  detail::add_output_options(emap, map_format, map_output);

  // oracle
  std::string oracle_grid;
  std::string oracle_output;
  int oracle_digits = 300;
  std::string oracle_method = "series";
  int oracle_verify = 0;
  unsigned oracle_threads = 0;
  auto* oracle = app.add_subcommand("oracle", "Regenerate the oracle cache");
  oracle->add_option("--grid", oracle_grid, "\"small-y\" or XMAX,YMAX,NX,NY")->required();
  oracle->add_option("--output", oracle_output, "Cache path (default: $DV_ORACLE_CACHE or the bundled cache)");
  oracle->add_option("--digits", oracle_digits, "Working digits (>= 50)")->capture_default_str();
  oracle->add_option("--method", oracle_method, "series or quadrature")
      ->check(CLI::IsMember({"series", "quadrature"}))
      ->capture_default_str();
  oracle->add_option("--verify-every", oracle_verify, "Cross-check every n-th point with the other method")
      ->capture_default_str();
  oracle->add_option("--threads", oracle_threads, "Worker threads (0 = all cores)")->capture_default_str();

  // bench
  ParamOptions bench_params;
  std::string bench_op;
  std::size_t bench_points = 1000000;
  std::size_t bench_reps = 1;
  std::uint64_t bench_seed = kBenchmarkSeed;
  std::string bench_output;
  auto* bench = app.add_subcommand("bench", "Throughput of one operation, printed as JSON");
  bench->add_option("--op", bench_op, "kappa, lambda, voigt_small_y, voigt_K or dawson_real")->required();
  bench->add_option("--points", bench_points)->capture_default_str();
  bench->add_option("--reps", bench_reps)->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  detail::add_param_options(bench, bench_params);
  bench->add_option("--output", bench_output, "Write to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      const CoefficientSet coeffs = detail::coefficients_for(eval_params);
      const EvalPoint p{eval_x, eval_y};
      detail::Sink sink(out, eval_output);
      std::ostream& os = sink.stream();
      std::optional<double> scalar;
      std::optional<ComplexValue> complex;
      if (eval_func == "K") {
        scalar = voigt_K(p, coeffs);
      } else if (eval_func == "L") {
        scalar = voigt_L(p, coeffs);
      } else if (eval_func == "F") {
        if (eval_y != 0.0) {
          throw Error(ErrorCode::domain, "dawson_real: takes a real argument, y must be 0 (got y=" +
                                             std::to_string(eval_y) + "); use --func Fc for complex z");
        }
        scalar = dawson_real(eval_x, coeffs);
      } else if (eval_func == "w") {
        complex = faddeeva_w(p, coeffs);
      } else {
        complex = dawson_complex(p, coeffs);
      }
      if (eval_format == "json") {
        nlohmann::ordered_json j{{"func", eval_func}, {"x", eval_x}, {"y", eval_y}};
        if (scalar) j["value"] = *scalar;
        if (complex) {
          j["re"] = complex->re;
          j["im"] = complex->im;
        }
        os << j.dump() << "\n";
      } else if (scalar) {
        os << format_sci17(*scalar) << "\n";
      } else {
        os << format_sci17(complex->re) << "," << format_sci17(complex->im) << "\n";
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      const CoefficientSet coeffs = detail::coefficients_for(sweep_params);
      if (sweep_digits < 50) throw UsageError("--digits must be >= 50");
      if (!(sweep_xmax > 0.0) || sweep_points < 2) throw UsageError("--xmax must be > 0 and --points >= 2");
      const ErrorSeries series = sweep_dawson_error(sweep_xmax, sweep_points, coeffs, {sweep_digits, 1e-30});
      detail::Sink sink(out, sweep_output);
      std::ostream& os = sink.stream();
      if (sweep_format == "json") {
        nlohmann::ordered_json j;
        j["command"] = "sweep-dawson";
        j["params"] = detail::params_json(series.params);
        j["x_max"] = sweep_xmax;
        j["points"] = sweep_points;
        j["oracle_working_digits"] = sweep_digits;
        j["max_abs_eps"] = series.max_abs();
        j["x"] = series.xs;
        j["eps"] = series.eps;
        os << j.dump() << "\n";
      } else {
        os << "# command=sweep-dawson\n";
        detail::write_params_meta(os, series.params);
        os << "# x_max=" << format_sci17(sweep_xmax) << "\n"
           << "# points=" << sweep_points << "\n"
           << "# oracle=dawson-maclaurin-series\n"
           << "# oracle_working_digits=" << sweep_digits << "\n"
           << "# eps=approx-reference\n"
           << "# max_abs_eps=" << format_sci17(series.max_abs()) << "\n"
           << "x,eps\n";
        for (std::size_t i = 0; i < series.xs.size(); ++i) {
          os << format_sci17(series.xs[i]) << "," << format_sci17(series.eps[i]) << "\n";
        }
      }
      return kExitOk;
    }

    if (emap->parsed()) {
      const CoefficientSet coeffs = detail::coefficients_for(map_params);
      const GridSpec grid{map_xmax, map_ymax, map_nx, map_ny};
      try {
        validate(grid);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      const std::filesystem::path cache_path = map_cache.empty() ? ref::default_cache_path() : std::filesystem::path(map_cache);
      ref::OracleCache cache;
      bool cache_loaded = false;
      if (std::filesystem::exists(cache_path)) {
        cache = ref::OracleCache::load(cache_path);
        cache_loaded = true;
      } else if (map_cache_only) {
        throw Error(ErrorCode::missing_reference, "error-map: oracle cache not found: " + cache_path.string());
      }
      std::size_t live_points = 0;
      std::vector<ReferenceProvider> providers{cache_reference(cache)};
      if (!map_cache_only) {
        auto live = live_reference();
        providers.push_back([live, &live_points](double x, double y) {
          ++live_points;
          return live(x, y);
        });
      }
      const ErrorGrid g = error_grid_voigt(grid, coeffs, first_available(std::move(providers)));
      const auto worst = g.max_log10();

      detail::Sink sink(out, map_output);
      std::ostream& os = sink.stream();
      if (map_format == "json") {
        nlohmann::ordered_json j;
        j["command"] = "error-map";
        j["params"] = detail::params_json(coeffs.params());
        j["x"] = g.xs;
        j["y"] = g.ys;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < g.ys.size(); ++r) {
          nlohmann::ordered_json row = nlohmann::ordered_json::array();
          for (std::size_t c = 0; c < g.xs.size(); ++c) {
            const auto& v = g.at(r, c);
            row.push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr));
          }
          rows.push_back(std::move(row));
        }
        j["log10_delta"] = std::move(rows);
        j["max_log10_delta"] = worst ? nlohmann::ordered_json(*worst) : nlohmann::ordered_json(nullptr);
        j["cache"] = cache_loaded ? cache_path.string() : "";
        j["live_points"] = live_points;
        os << j.dump() << "\n";
      } else {
        os << "# command=error-map\n";
        detail::write_params_meta(os, coeffs.params());
        os << "# x_max=" << format_sci17(map_xmax) << "\n"
           << "# y_max=" << format_sci17(map_ymax) << "\n"
           << "# nx=" << map_nx << "\n"
           << "# ny=" << map_ny << "\n"
           << "# cache=" << (cache_loaded ? cache_path.string() : std::string("none")) << "\n"
           << "# live_points=" << live_points << "\n"
           << "# rational_cells=" << g.count(VoigtBranch::rational) << "\n"
           << "# small_y_cells=" << g.count(VoigtBranch::small_y) << "\n"
           << "# continued_fraction_cells=" << g.count(VoigtBranch::continued_fraction) << "\n"
           << "# max_log10_delta=" << (worst ? format_sci17(*worst) : std::string("nan")) << "\n"
           << "x,y,log10_delta,branch\n";
        for (std::size_t r = 0; r < g.ys.size(); ++r) {
          for (std::size_t c = 0; c < g.xs.size(); ++c) {
            const auto& v = g.at(r, c);
            os << format_sci17(g.xs[c]) << "," << format_sci17(g.ys[r]) << ","
               << (v ? format_sci17(*v) : std::string("nan")) << "," << to_string(g.branch[g.index(r, c)]) << "\n";
          }
        }
      }
      return kExitOk;
    }

    if (oracle->parsed()) {
      const auto grid = parse_grid_spec(oracle_grid);
      if (!grid) throw UsageError("--grid must be \"small-y\" or XMAX,YMAX,NX,NY (got '" + oracle_grid + "')");
      if (oracle_digits < 50) throw UsageError("--digits must be >= 50");
      if (oracle_verify < 0) throw UsageError("--verify-every must be >= 0");
      ref::GenerationOptions opt;
      opt.precision = {oracle_digits, 1e-30};
      opt.method = *ref::parse_oracle_method(oracle_method);
      opt.verify_every = oracle_verify;
      opt.threads = oracle_threads;
      std::size_t last_report = 0;
      opt.progress = [&err, &last_report](std::size_t done, std::size_t total) {
        if (done == total || done - last_report >= 500) {
          err << "oracle: " << done << "/" << total << "\n";
          last_report = done;
        }
      };
      const ref::OracleCache cache = ref::generate_oracle_cache(*grid, opt);
      const std::filesystem::path path = oracle_output.empty() ? ref::default_cache_path() : std::filesystem::path(oracle_output);
      cache.save(path);
      out << "wrote " << cache.size() << " records to " << path.string() << "\n";
      return kExitOk;
    }

    if (bench->parsed()) {
      const CoefficientSet coeffs = detail::coefficients_for(bench_params);
      const TimingStats t = benchmark(bench_op, bench_points, bench_reps, coeffs, bench_seed);
      nlohmann::ordered_json j{{"op_name", t.op_name},           {"points_evaluated", t.points_evaluated},
                               {"wall_seconds", t.wall_seconds}, {"throughput", t.throughput},
                               {"repetitions", t.repetitions},   {"seed", bench_seed},
                               {"checksum", t.checksum}};
      detail::Sink sink(out, bench_output);
      sink.stream() << j.dump() << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::unknown_selector || e.code() == ErrorCode::invalid_params) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    err << "error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEvaluation;
  }
  return kExitUsage;
}

}  // namespace dv::cli
