#include "persnorm/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "persnorm/error.hpp"

namespace persnorm {

PointCloud::PointCloud(std::string label, std::vector<Point> points)
    : label_(std::move(label)), points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x1) || !std::isfinite(points_[i].x2)) {
      throw NonFiniteError("cloud '" + label_ + "': non-finite coordinate at point " +
                           std::to_string(i));
    }
  }
}

std::vector<double> PointCloud::axis(int which) const {
  if (which != 1 && which != 2) throw DomainError("axis must be 1 or 2");
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(which == 1 ? p.x1 : p.x2);
  return out;
}

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Central moments m2, m3, m4 with n denominator.
struct CentralMoments {
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> v) {
  const double mu = mean_of(v);
  CentralMoments m;
  for (double x : v) {
    const double d = x - mu;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  const auto n = static_cast<double>(v.size());
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

void require_spread(std::span<const double> v) {
  if (v.size() < 2) throw DegenerateCloudError("need at least 2 values");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*lo == *hi) throw ConstantInputError("values have zero variance");
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DegenerateCloudError("quantile of empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;  // zero-based h - 1
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double skewness(std::span<const double> values) {
  require_spread(values);
  const auto m = central_moments(values);
  return m.m3 / std::pow(m.m2, 1.5);
}

double kurtosis(std::span<const double> values) {
  require_spread(values);
  const auto m = central_moments(values);
  return m.m4 / (m.m2 * m.m2);
}

AxisSummary summarize_axis(std::span<const double> values) {
  require_spread(values);
  AxisSummary s;
  const auto n = static_cast<double>(values.size());
  s.mean = mean_of(values);
  double ss = 0.0;
  for (double x : values) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / (n - 1.0));

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = quantile_sorted(sorted, 0.25);
  s.q50 = quantile_sorted(sorted, 0.50);
  s.q75 = quantile_sorted(sorted, 0.75);

  const auto m = central_moments(values);
  s.skewness = m.m3 / std::pow(m.m2, 1.5);
  s.kurtosis = m.m4 / (m.m2 * m.m2);
  return s;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("pearson: length mismatch");
  require_spread(xs);
  require_spread(ys);
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double pearson(const PointCloud& cloud) {
  if (cloud.size() < 2) throw DegenerateCloudError("pearson: cloud '" + cloud.label() + "' has fewer than 2 points");
  return pearson(cloud.axis(1), cloud.axis(2));
}

double max_pair_distance(const PointCloud& cloud) {
  if (cloud.size() < 2) {
    throw DegenerateCloudError("max_pair_distance: cloud '" + cloud.label() + "' has fewer than 2 points");
  }
  const auto pts = cloud.points();
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, distance(pts[i], pts[j]));
    }
  }
  return best;
}

SummaryStats summarize(const PointCloud& cloud) {
  if (cloud.size() < 2) {
    throw DegenerateCloudError("summarize: cloud '" + cloud.label() + "' has fewer than 2 points");
  }
  const auto xs = cloud.axis(1);
  const auto ys = cloud.axis(2);
  SummaryStats s;
  s.x1 = summarize_axis(xs);
  s.x2 = summarize_axis(ys);
  s.pearson_r = pearson(xs, ys);
  s.max_pair_dist = max_pair_distance(cloud);
  return s;
}

}  // namespace persnorm
