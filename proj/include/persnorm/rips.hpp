#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "persnorm/point_cloud.hpp"

namespace persnorm {

/// A vertex, edge or triangle of a Vietoris-Rips filtration. Vertex indices
/// are sorted ascending; slots beyond `dim` are zero.
struct Simplex {
  std::array<std::uint32_t, 3> vertices{};
  std::uint8_t dim = 0;
  double value = 0.0;

  std::span<const std::uint32_t> vertex_span() const noexcept {
    return {vertices.data(), static_cast<std::size_t>(dim) + 1};
  }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Total filtration order: (value, dim, lexicographic vertices).
bool filtration_less(const Simplex& a, const Simplex& b) noexcept;

class DistanceMatrix {
 public:
  explicit DistanceMatrix(const PointCloud& cloud);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double max_entry() const noexcept { return max_entry_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
  double max_entry_ = 0.0;
};

DistanceMatrix distance_matrix(const PointCloud& cloud);

struct RipsOptions {
  /// Inclusive threshold on edge length. Unset means AUTO: the diameter of
  /// the cloud, which yields the complete 2-skeleton.
  std::optional<double> max_scale;
  std::size_t triangle_budget = 5'000'000;
};

/// Sorted simplices of the Rips 2-skeleton up to a scale. Values use the
/// distance convention: an edge enters at the distance between its ends.
class FilteredComplex {
 public:
  /// Sorts `simplices` into filtration order.
  FilteredComplex(std::size_t n_points, double max_scale, std::vector<Simplex> simplices);

  std::span<const Simplex> simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  std::size_t n_points() const noexcept { return n_points_; }
  double max_scale() const noexcept { return max_scale_; }
  std::size_t count(int dim) const noexcept { return counts_[static_cast<std::size_t>(dim)]; }

 private:
  std::size_t n_points_ = 0;
  double max_scale_ = 0.0;
  std::vector<Simplex> simplices_;
  std::array<std::size_t, 3> counts_{};
};

/// Throws DegenerateCloudError for an empty cloud, DomainError for a
/// non-positive scale and CapacityError when the triangle count would exceed
/// the budget.
FilteredComplex build_rips(const PointCloud& cloud, const RipsOptions& options = {});

}  // namespace persnorm
