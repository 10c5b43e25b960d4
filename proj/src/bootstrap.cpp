#include "persnorm/bootstrap.hpp"

#include <algorithm>
#include <limits>

#include "persnorm/error.hpp"
#include "persnorm/rng.hpp"

namespace persnorm {

std::size_t ConfidenceBand::count_significant(const PersistenceDiagram& diagram, int dim) const {
  std::size_t c = 0;
  for (const auto& p : diagram.pairs) {
    if (p.dim == dim && significant(p)) ++c;
  }
  return c;
}

double hausdorff_to_subset(const PointCloud& cloud, std::span<const std::size_t> indices) {
  std::vector<bool> picked(cloud.size(), false);
  for (auto i : indices) picked.at(i) = true;
  std::vector<std::size_t> unique;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    if (picked[i]) unique.push_back(i);
  }
  if (unique.empty()) throw DegenerateCloudError("hausdorff_to_subset: empty subset");

  double worst = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (picked[i]) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (auto j : unique) nearest = std::min(nearest, distance(cloud[i], cloud[j]));
    worst = std::max(worst, nearest);
  }
  return worst;
}

std::vector<double> resample_distances(const PointCloud& cloud, std::size_t resamples, std::uint64_t seed) {
  const std::size_t n = cloud.size();
  std::vector<double> thetas;
  thetas.reserve(resamples);
  std::vector<std::size_t> indices(n);
  for (std::size_t b = 1; b <= resamples; ++b) {
    SplitMix64 rng(seed + b);
    for (auto& idx : indices) idx = rng.uniform_index(n);
    thetas.push_back(hausdorff_to_subset(cloud, indices));
  }
  return thetas;
}

double band_width(std::span<const double> thetas, double alpha, double multiplier) {
  if (thetas.empty()) throw DomainError("band_width: no resamples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("band_width: alpha must lie in (0, 1)");
  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  return multiplier * quantile_sorted(sorted, 1.0 - alpha);
}

ConfidenceBand bootstrap_band(const PointCloud& cloud, double alpha, std::size_t resamples, std::uint64_t seed,
                              double multiplier) {
  if (cloud.size() < 2) throw DegenerateCloudError("bootstrap_band: need at least 2 points");
  if (resamples == 0) throw DomainError("bootstrap_band: need at least one resample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("bootstrap_band: alpha must lie in (0, 1)");
  if (!(multiplier >= 0.0)) throw DomainError("bootstrap_band: multiplier must be non-negative");
  ConfidenceBand band;
  band.alpha = alpha;
  band.resamples = resamples;
  band.seed = seed;
  band.multiplier = multiplier;
  band.width = band_width(resample_distances(cloud, resamples, seed), alpha, multiplier);
  return band;
}

}  // namespace persnorm
