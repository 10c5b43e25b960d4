#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/datasets.hpp"
#include "persnorm/norms.hpp"
#include "persnorm/point_cloud.hpp"

namespace persnorm {

enum class TransformKind {
  scale,      // (a x1, a x2), a > 0
  translate,  // (x1 + d, x2)
  expand_x1,  // (b x1, x2), b > 0
};

TransformKind parse_transform_kind(std::string_view text);
std::string_view to_string(TransformKind kind);

struct TransformSpec {
  TransformKind kind = TransformKind::scale;
  std::vector<double> grid;

  /// Throws DomainError for an empty or non-increasing grid or a parameter
  /// outside the kind's domain.
  void validate() const;

  /// scale, expand_x1: 0.25, 0.5, ..., 3.0; translate: -50, -40, ..., 50.
  static TransformSpec defaults(TransformKind kind);
};

/// Throws DomainError for a non-positive factor.
PointCloud apply_transform(const PointCloud& cloud, TransformKind kind, double parameter);

/// Translation by an arbitrary vector; the sweep only moves along X1.
PointCloud translate(const PointCloud& cloud, double d1, double d2);

struct SweepRow {
  double parameter = 0.0;
  PersistenceNorms norms;
};

struct SweepResult {
  std::string label;
  TransformKind kind = TransformKind::scale;
  std::vector<SweepRow> rows;  // grid order
};

struct SweepOptions {
  /// Scale and translate sweeps reuse the baseline diagram through their
  /// exact equivariances. With the shortcut off every grid point is
  /// recomputed and compared against the shortcut value.
  bool shortcut = true;
  double cross_check_tolerance = 1e-9;
  NormsConfig norms;
};

/// One result per dataset in bundle order. Throws Error if a recomputed
/// value disagrees with its shortcut beyond the tolerance.
std::vector<SweepResult> run_sweep(const DatasetBundle& bundle, const TransformSpec& spec,
                                   const SweepOptions& options = {});

inline constexpr std::string_view sweep_csv_header = "dataset,kind,param,L01,L02,L11,L12";
void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results);
std::vector<SweepResult> read_sweep_csv(std::istream& in);

}  // namespace persnorm
