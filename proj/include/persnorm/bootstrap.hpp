#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "persnorm/persistence.hpp"
#include "persnorm/point_cloud.hpp"

namespace persnorm {

/// Subsampling confidence band for a persistence diagram. A feature is
/// significant when its lifetime exceeds `width`. Plot-only: norms never
/// look at it.
struct ConfidenceBand {
  double alpha = 0.05;
  std::size_t resamples = 100;
  std::uint64_t seed = 7;
  double multiplier = 2.0;
  double width = 0.0;

  bool significant(const PersistencePair& pair) const noexcept { return pair.lifetime() > width; }
  std::size_t count_significant(const PersistenceDiagram& diagram, int dim) const;
};

/// Hausdorff distance between the cloud and the sub-multiset picked by
/// `indices`. Because the subset lies inside the cloud this reduces to the
/// largest distance from a cloud point to its nearest picked point.
double hausdorff_to_subset(const PointCloud& cloud, std::span<const std::size_t> indices);

/// theta_b for b = 1..B: draw n indices with replacement from
/// SplitMix64(seed + b) via uniform_index(n), then take hausdorff_to_subset.
std::vector<double> resample_distances(const PointCloud& cloud, std::size_t resamples, std::uint64_t seed);

/// multiplier * (1 - alpha) quantile of the thetas (linear interpolation).
double band_width(std::span<const double> thetas, double alpha, double multiplier = 2.0);

/// Throws DegenerateCloudError for n < 2 and DomainError for B = 0 or alpha
/// outside (0, 1).
ConfidenceBand bootstrap_band(const PointCloud& cloud, double alpha, std::size_t resamples, std::uint64_t seed,
                              double multiplier = 2.0);

}  // namespace persnorm
