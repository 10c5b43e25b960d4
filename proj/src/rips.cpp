#include "persnorm/rips.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "persnorm/error.hpp"

namespace persnorm {

bool filtration_less(const Simplex& a, const Simplex& b) noexcept {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

DistanceMatrix::DistanceMatrix(const PointCloud& cloud) : n_(cloud.size()), data_(n_ * n_, 0.0) {
  const auto pts = cloud.points();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = distance(pts[i], pts[j]);
      data_[i * n_ + j] = d;
      data_[j * n_ + i] = d;
      max_entry_ = std::max(max_entry_, d);
    }
  }
}

DistanceMatrix distance_matrix(const PointCloud& cloud) { return DistanceMatrix(cloud); }

FilteredComplex::FilteredComplex(std::size_t n_points, double max_scale, std::vector<Simplex> simplices)
    : n_points_(n_points), max_scale_(max_scale), simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);
  for (const auto& s : simplices_) {
    if (s.dim > 2) throw DomainError("filtered complex holds simplices of dimension <= 2 only");
    ++counts_[s.dim];
  }
}

FilteredComplex build_rips(const PointCloud& cloud, const RipsOptions& options) {
  const std::size_t n = cloud.size();
  if (n == 0) throw DegenerateCloudError("build_rips: cloud '" + cloud.label() + "' is empty");
  if (options.max_scale && !(*options.max_scale > 0.0)) {
    throw DomainError("build_rips: max_scale must be positive");
  }

  const DistanceMatrix dist(cloud);
  const double scale = options.max_scale.value_or(dist.max_entry());

  std::size_t n_edges = 0;
  std::size_t n_triangles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(i, j) > scale) continue;
      ++n_edges;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (dist(i, k) <= scale && dist(j, k) <= scale) ++n_triangles;
      }
    }
  }
  if (n_triangles > options.triangle_budget) {
    throw CapacityError("build_rips: " + std::to_string(n_triangles) + " triangles exceed the budget of " +
                        std::to_string(options.triangle_budget));
  }

  std::vector<Simplex> simplices;
  simplices.reserve(n + n_edges + n_triangles);
  for (std::size_t i = 0; i < n; ++i) {
    simplices.push_back({{static_cast<std::uint32_t>(i), 0, 0}, 0, 0.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = dist(i, j);
      if (dij > scale) continue;
      const auto vi = static_cast<std::uint32_t>(i);
      const auto vj = static_cast<std::uint32_t>(j);
      simplices.push_back({{vi, vj, 0}, 1, dij});
      for (std::size_t k = j + 1; k < n; ++k) {
        const double dik = dist(i, k);
        const double djk = dist(j, k);
        if (dik <= scale && djk <= scale) {
          simplices.push_back({{vi, vj, static_cast<std::uint32_t>(k)}, 2, std::max({dij, dik, djk})});
        }
      }
    }
  }
  return FilteredComplex(n, scale, std::move(simplices));
}

}  // namespace persnorm
