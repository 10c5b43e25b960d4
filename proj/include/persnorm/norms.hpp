#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/persistence.hpp"
#include "persnorm/point_cloud.hpp"
#include "persnorm/rips.hpp"

namespace persnorm {

/// How an essential (never-dying) pair enters a norm.
enum class EssentialPolicy {
  drop,   // excluded; the default, reproduces the published tables
  clamp,  // death taken as the diagram's max_scale
};

EssentialPolicy parse_essential_policy(std::string_view text);
std::string_view to_string(EssentialPolicy policy);

/// L1 and L2 norms of the lifetime vectors in dimensions 0 and 1.
struct PersistenceNorms {
  double l01 = 0.0;
  double l02 = 0.0;
  double l11 = 0.0;
  double l12 = 0.0;
  EssentialPolicy essential_policy = EssentialPolicy::drop;

  double l1(int dim) const noexcept { return dim == 0 ? l01 : l11; }
  double l2(int dim) const noexcept { return dim == 0 ? l02 : l12; }
};

/// Throws PolicyError if clamping is requested and the diagram's max_scale
/// is not a finite number.
PersistenceNorms compute_norms(const PersistenceDiagram& diagram,
                               EssentialPolicy policy = EssentialPolicy::drop);

PersistenceNorms scaled(const PersistenceNorms& norms, double factor);

struct NormsConfig {
  EssentialPolicy essential_policy = EssentialPolicy::drop;
  RipsOptions rips;
  /// 0 means one worker per hardware thread.
  unsigned threads = 0;
};

/// One row of the norms table. When `error` is set the numeric members are
/// meaningless.
struct DatasetReport {
  std::string label;
  PersistenceNorms norms;
  SummaryStats stats;
  std::optional<std::string> error;

  bool ok() const noexcept { return !error.has_value(); }
};

DatasetReport dataset_report(const PointCloud& cloud, const NormsConfig& config = {});

/// One report per cloud, in input order. A cloud that fails produces an
/// error row; the others are unaffected.
std::vector<DatasetReport> norms_table(std::span<const PointCloud> clouds, const NormsConfig& config = {});

}  // namespace persnorm
