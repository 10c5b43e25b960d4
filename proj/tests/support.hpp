#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "persnorm/datasets.hpp"
#include "persnorm/persistence.hpp"
#include "persnorm/point_cloud.hpp"

namespace testing {

inline std::string fixture_path() { return std::string(PERSNORM_DATA_DIR) + "/DatasaurusDozen.tsv"; }
inline std::string test_data(const std::string& name) { return std::string(PERSNORM_TEST_DATA_DIR) + "/" + name; }

inline const persnorm::DatasetBundle& fixtures() {
  static const persnorm::DatasetBundle bundle = persnorm::load_tsv(fixture_path());
  return bundle;
}

inline persnorm::PointCloud cloud(std::vector<persnorm::Point> pts, std::string label = "t") {
  return persnorm::PointCloud(std::move(label), std::move(pts));
}

inline persnorm::PointCloud unit_square() { return cloud({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, "square"); }

inline persnorm::PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, double extent = 10.0) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<persnorm::Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return cloud(std::move(pts), "random");
}

// Integer coordinates on a small grid: lots of tied distances.
inline persnorm::PointCloud grid_cloud(std::mt19937_64& rng, std::size_t n, int side = 4) {
  std::uniform_int_distribution<int> u(0, side);
  std::vector<persnorm::Point> pts(n);
  for (auto& p : pts) p = {double(u(rng)), double(u(rng))};
  return cloud(std::move(pts), "grid");
}

inline persnorm::PointCloud circle(std::size_t n, double r, double cx = 0.0, double cy = 0.0) {
  std::vector<persnorm::Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * double(i) / double(n);
    pts[i] = {cx + r * std::cos(t), cy + r * std::sin(t)};
  }
  return cloud(std::move(pts), "circle");
}

// (dim, birth, death) in canonical order; the multiset view of a diagram.
using Triple = std::tuple<int, double, double>;
inline std::vector<Triple> triples(const persnorm::PersistenceDiagram& d) {
  std::vector<Triple> out;
  for (const auto& p : d.pairs) out.emplace_back(p.dim, p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

// Prim's algorithm on the complete Euclidean graph, independent of the
// filtration code.
inline double mst_weight(const persnorm::PointCloud& c) {
  const auto n = c.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in(n, false);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v] && (u == n || best[v] < best[u])) u = v;
    }
    in[u] = true;
    total += best[u];
    for (std::size_t v = 0; v < n; ++v) {
      if (in[v]) continue;
      const double dx = c[u].x1 - c[v].x1, dy = c[u].x2 - c[v].x2;
      best[v] = std::min(best[v], std::hypot(dx, dy));
    }
  }
  return total;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace testing
