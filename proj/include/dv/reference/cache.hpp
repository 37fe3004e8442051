#pragma once

// Oracle cache file: '#'-prefixed "key=value" metadata lines followed by one
// record per line, "x,y,K_ref,L_ref", every field a decimal string with 40
// significant digits. Output is deterministic for a given grid and precision.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dv/error.hpp"
#include "dv/grid.hpp"
#include "dv/reference/oracle.hpp"

namespace dv::ref {

inline constexpr int kCacheDigits = 40;
inline constexpr std::string_view kCacheFormat = "dv-oracle-cache-v1";

enum class OracleMethod { series, quadrature };

constexpr std::string_view to_string(OracleMethod m) noexcept {
  return m == OracleMethod::series ? "series" : "quadrature";
}

inline std::optional<OracleMethod> parse_oracle_method(std::string_view s) {
  if (s == "series") return OracleMethod::series;
  if (s == "quadrature") return OracleMethod::quadrature;
  return std::nullopt;
}

struct OracleRecord {
  double x = 0;
  double y = 0;
  std::string k_text;
  std::string l_text;
  double k = 0;
  double l = 0;
};

struct ReferenceValue {
  double k;
  double l;
};

class OracleCache {
 public:
  using Metadata = std::vector<std::pair<std::string, std::string>>;

  OracleCache() = default;
  OracleCache(Metadata meta, std::vector<OracleRecord> records) : meta_(std::move(meta)), records_(std::move(records)) {
    reindex();
  }

  const Metadata& metadata() const noexcept { return meta_; }
  const std::vector<OracleRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  std::optional<std::string> meta(std::string_view key) const {
    for (const auto& [k, v] : meta_) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  /// Exact (bitwise) lookup of a grid point.
  std::optional<ReferenceValue> lookup(double x, double y) const {
    auto it = index_.find(key_of(x, y));
    if (it == index_.end()) return std::nullopt;
    const OracleRecord& r = records_[it->second];
    return ReferenceValue{r.k, r.l};
  }

  void write(std::ostream& os) const {
    for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
    for (const auto& r : records_) {
      os << format_coordinate(r.x) << "," << format_coordinate(r.y) << "," << r.k_text << "," << r.l_text << "\n";
    }
  }

  void save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::missing_reference, "cannot write oracle cache " + path.string());
    write(os);
  }

  static OracleCache read(std::istream& is) {
    Metadata meta;
    std::vector<OracleRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (line[0] == '#') {
        std::string body = line.substr(1);
        if (!body.empty() && body[0] == ' ') body.erase(0, 1);
        const auto eq = body.find('=');
        if (eq != std::string::npos) meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
        continue;
      }
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() != 4) {
        throw Error(ErrorCode::missing_reference, "oracle cache line " + std::to_string(line_no) + ": expected 4 fields");
      }
      OracleRecord r;
      r.x = std::strtod(fields[0].c_str(), nullptr);
      r.y = std::strtod(fields[1].c_str(), nullptr);
      r.k_text = fields[2];
      r.l_text = fields[3];
      r.k = std::strtod(fields[2].c_str(), nullptr);
      r.l = std::strtod(fields[3].c_str(), nullptr);
      records.push_back(std::move(r));
    }
    return OracleCache(std::move(meta), std::move(records));
  }

  static OracleCache load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::missing_reference, "oracle cache not found: " + path.string());
    return read(is);
  }

  static std::string format_coordinate(double v) { return mp::Real(v, 256).str(kCacheDigits); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };

  static std::pair<std::uint64_t, std::uint64_t> key_of(double x, double y) {
    return {std::bit_cast<std::uint64_t>(x), std::bit_cast<std::uint64_t>(y)};
  }

  void reindex() {
    index_.clear();
    for (std::size_t i = 0; i < records_.size(); ++i) index_[key_of(records_[i].x, records_[i].y)] = i;
  }

  Metadata meta_;
  std::vector<OracleRecord> records_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t, KeyHash> index_;
};

/// Cache location: $DV_ORACLE_CACHE if set, else the path baked in at build
/// time, else "dv_oracle_cache.csv" in the working directory.
inline std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("DV_ORACLE_CACHE"); env != nullptr && *env != '\0') return env;
#ifdef DV_DEFAULT_ORACLE_CACHE
  return DV_DEFAULT_ORACLE_CACHE;
#else
  return "dv_oracle_cache.csv";
#endif
}

inline mp::Complex evaluate_oracle(double x, double y, const OraclePrecision& prec, OracleMethod method) {
  return method == OracleMethod::series ? w_series_oracle(x, y, prec) : w_oracle(x, y, prec);
}

struct GenerationOptions {
  OraclePrecision precision{300, 1e-30};
  OracleMethod method = OracleMethod::series;
  /// Every n-th point (n > 0) is recomputed by the other method and must
  /// agree to `verify_tolerance` in each component.
  int verify_every = 0;
  double verify_tolerance = 1e-25;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Evaluates the oracle on every grid point, rows ordered by y then x.
inline OracleCache generate_oracle_cache(const GridSpec& grid, const GenerationOptions& opt) {
  validate(grid);
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  const std::size_t total = xs.size() * ys.size();
  std::vector<OracleRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<std::size_t> verified{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const OracleMethod other = opt.method == OracleMethod::series ? OracleMethod::quadrature : OracleMethod::series;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        OracleRecord& r = records[i];
        r.x = xs[i % xs.size()];
        r.y = ys[i / xs.size()];
        const mp::Complex w = evaluate_oracle(r.x, r.y, opt.precision, opt.method);
        r.k_text = w.re.str(kCacheDigits);
        r.l_text = w.im.str(kCacheDigits);
        r.k = w.re.to_double();
        r.l = w.im.to_double();
        if (opt.verify_every > 0 && i % static_cast<std::size_t>(opt.verify_every) == 0) {
          const mp::Complex check = evaluate_oracle(r.x, r.y, OraclePrecision{}, other);
          const mp::Real tol(opt.verify_tolerance, w.re.precision());
          if (mp::relative_difference(check.re, w.re) > tol || mp::relative_difference(check.im, w.im) > tol) {
            throw Error(ErrorCode::precision_unreachable, "oracle methods disagree at x=" + std::to_string(r.x) +
                                                              ", y=" + std::to_string(r.y));
          }
          verified.fetch_add(1);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (opt.progress) {
        std::lock_guard lock(failure_mutex);
        opt.progress(d, total);
      }
    }
  };

  unsigned n_threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream grid_text;
  grid_text << OracleCache::format_coordinate(grid.x_max) << "," << OracleCache::format_coordinate(grid.y_max) << ","
            << grid.nx << "," << grid.ny;
  OracleCache::Metadata meta{
      {"format", std::string(kCacheFormat)},
      {"method", std::string(to_string(opt.method))},
      {"working_digits", std::to_string(opt.precision.working_digits)},
      {"target_rel_error", mp::Real(opt.precision.target_rel_error, 64).str(3)},
      {"grid", grid_text.str()},
      {"order", "rows by y ascending, then x ascending"},
      {"verify_every", std::to_string(opt.verify_every)},
      {"verified_points", std::to_string(verified.load())},
      {"columns", "x,y,K_ref,L_ref"},
  };
  return OracleCache(std::move(meta), std::move(records));
}

}  // namespace dv::ref
