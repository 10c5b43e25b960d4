#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/point_cloud.hpp"

namespace persnorm {

/// The thirteen datasaurus fixtures, in report order.
inline constexpr std::array<std::string_view, 13> fixture_labels = {
    "dino",       "away",     "bullseye", "circle",  "dots",       "h_lines",   "high_lines",
    "slant_down", "slant_up", "star",     "v_lines", "wide_lines", "x_shape"};

inline constexpr std::string_view normal_label = "normal";
inline constexpr std::size_t fixture_size = 142;

/// Labelled clouds in insertion order.
class DatasetBundle {
 public:
  /// Throws InputError on a duplicate label.
  void add(PointCloud cloud);

  const PointCloud* find(std::string_view label) const noexcept;
  /// Throws InputError naming the label when it is absent.
  const PointCloud& at(std::string_view label) const;

  std::span<const PointCloud> clouds() const noexcept { return clouds_; }
  std::vector<std::string> labels() const;
  std::size_t size() const noexcept { return clouds_.size(); }
  bool empty() const noexcept { return clouds_.empty(); }

  /// Report order: dino, normal, then the other fixtures alphabetically,
  /// then any unknown labels in insertion order.
  DatasetBundle in_report_order() const;

  /// Non-fatal notes gathered while loading (unknown labels and the like).
  std::vector<std::string> warnings;

 private:
  std::vector<PointCloud> clouds_;
};

/// Parses `dataset<TAB>x<TAB>y` rows after a header line. Rows keep file order
/// within each dataset. `filter`, when non-empty, keeps only those labels and
/// fails if one is missing. Throws ParseError (with line number) on malformed
/// input and InputError when no data rows are present.
DatasetBundle read_tsv(std::istream& in, const std::string& source_name, std::span<const std::string> filter = {});
DatasetBundle load_tsv(const std::filesystem::path& path, std::span<const std::string> filter = {});

/// Same schema as read_tsv, coordinates in shortest round-trip form.
void write_tsv(std::ostream& out, const DatasetBundle& bundle);

/// Moments shared by every fixture.
struct MomentTargets {
  double mean1 = 54.27;
  double mean2 = 47.84;
  double sd1 = 16.77;
  double sd2 = 26.94;
  double rho = -0.064;
};

struct MomentTolerances {
  double mean = 0.01;
  double sd = 0.01;
  double rho = 0.006;
};

/// Empty when the cloud meets every target; otherwise one message per miss.
std::vector<std::string> shared_moment_violations(const PointCloud& cloud, const MomentTargets& targets = {},
                                                  const MomentTolerances& tolerances = {});

/// Bivariate normal sample whose sample means, sample standard deviations
/// and correlation equal the targets exactly (up to rounding).
///
/// 1. Draw n pairs of standard normals from SplitMix64(seed) by Box-Muller:
///    u1 = uniform01_open_low(), u2 = uniform01(), r = sqrt(-2 ln u1),
///    point i = (r cos 2 pi u2, r sin 2 pi u2).
/// 2. Centre, then whiten with the symmetric inverse square root of the
///    sample covariance (n - 1 denominator).
/// 3. Map (w1, w2) -> (w1, rho w1 + sqrt(1 - rho^2) w2), scale by the target
///    deviations and shift by the target means.
/// A singular sample covariance retries with seed + 1, seed + 2, ...
PointCloud gen_normal(std::uint64_t seed, std::size_t n = fixture_size, const MomentTargets& targets = {});

}  // namespace persnorm
