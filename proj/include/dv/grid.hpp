#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dv/error.hpp"

namespace dv {

/// n points from lo to hi inclusive. Endpoints are reproduced exactly.
inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(lo + (hi - lo) * frac);
  }
  return out;
}

/// Rectangular (x, y) grid anchored at the origin.
struct GridSpec {
  double x_max = 15.0;
  double y_max = 1e-6;
  int nx = 301;
  int ny = 31;

  std::vector<double> xs() const { return linspace(0.0, x_max, nx); }
  std::vector<double> ys() const { return linspace(0.0, y_max, ny); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// The small-y accuracy grid: 301 x 31 points on [0, 15] x [0, 1e-6].
constexpr GridSpec small_y_grid() noexcept { return {15.0, 1e-6, 301, 31}; }

inline void validate(const GridSpec& g) {
  if (!(g.x_max > 0.0) || !(g.y_max >= 0.0) || !std::isfinite(g.x_max) || !std::isfinite(g.y_max) || g.nx < 1 ||
      g.ny < 1) {
    throw Error(ErrorCode::invalid_params, "grid requires x_max > 0, y_max >= 0, nx >= 1, ny >= 1");
  }
}

/// Accepts "small-y" or "XMAX,YMAX,NX,NY".
inline std::optional<GridSpec> parse_grid_spec(std::string_view text) {
  if (text == "small-y") return small_y_grid();
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) return std::nullopt;
  GridSpec g;
  try {
    std::size_t used = 0;
    g.x_max = std::stod(parts[0], &used);
    if (used != parts[0].size()) return std::nullopt;
    g.y_max = std::stod(parts[1], &used);
    if (used != parts[1].size()) return std::nullopt;
    g.nx = std::stoi(parts[2], &used);
    if (used != parts[2].size()) return std::nullopt;
    g.ny = std::stoi(parts[3], &used);
    if (used != parts[3].size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (!(g.x_max > 0.0) || !(g.y_max >= 0.0) || g.nx < 1 || g.ny < 1) return std::nullopt;
  return g;
}

}  // namespace dv
