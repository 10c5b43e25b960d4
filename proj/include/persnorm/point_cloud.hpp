#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace persnorm {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance. Every component that compares distances uses this one
/// function so that equal pairs produce bit-identical values.
inline double distance(const Point& a, const Point& b) noexcept {
  const double dx = a.x1 - b.x1;
  const double dy = a.x2 - b.x2;
  return std::sqrt(dx * dx + dy * dy);
}

/// Labelled, immutable set of 2-D points. Every coordinate is finite.
class PointCloud {
 public:
  PointCloud() = default;
  /// Throws NonFiniteError if any coordinate is NaN or infinite.
  PointCloud(std::string label, std::vector<Point> points);

  const std::string& label() const noexcept { return label_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  /// Coordinates of one axis (1 or 2) in stored order.
  std::vector<double> axis(int which) const;

  PointCloud relabeled(std::string label) const { return PointCloud(std::move(label), points_); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::string label_;
  std::vector<Point> points_;
};

struct AxisSummary {
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double skewness = 0.0;  // m3 / m2^{3/2}, central moments with n denominator
  double kurtosis = 0.0;  // m4 / m2^2, not excess
};

struct SummaryStats {
  AxisSummary x1;
  AxisSummary x2;
  double pearson_r = 0.0;
  double max_pair_dist = 0.0;
};

/// Linear-interpolation quantile of already-sorted values:
/// h = (n-1)p + 1, q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]),
/// with 1-based indexing.
double quantile_sorted(std::span<const double> sorted, double p);

/// Sample statistics of one axis. Requires n >= 2 and non-zero spread.
AxisSummary summarize_axis(std::span<const double> values);

/// Throws DegenerateCloudError for n < 2 and ConstantInputError when either
/// axis has zero variance (correlation and moment ratios are undefined).
SummaryStats summarize(const PointCloud& cloud);

double pearson(std::span<const double> xs, std::span<const double> ys);
double pearson(const PointCloud& cloud);

double max_pair_distance(const PointCloud& cloud);

/// Sample skewness and kurtosis under the population-moment convention.
double skewness(std::span<const double> values);
double kurtosis(std::span<const double> values);

}  // namespace persnorm
