#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/norms.hpp"

namespace persnorm {

/// Metric columns understood by the correlation tables, in table order.
inline constexpr std::array<std::string_view, 9> known_metrics = {"L01", "L02", "L11", "L12", "MaxDist",
                                                                  "Sk1", "Sk2", "Kt1", "Kt2"};

/// Average ranks (1-based); tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the average ranks. Throws ConstantInputError when
/// either input is constant.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Datasets (rows) by metrics (columns). Every cell is finite.
class MetricsMatrix {
 public:
  MetricsMatrix() = default;
  MetricsMatrix(std::vector<std::string> rows, std::vector<std::string> metrics,
                std::vector<std::vector<double>> columns);

  const std::vector<std::string>& rows() const noexcept { return rows_; }
  const std::vector<std::string>& metrics() const noexcept { return metrics_; }
  bool has(std::string_view metric) const noexcept;
  std::span<const double> column(std::string_view metric) const;

  /// Adds the other matrix's metrics, matching rows by label. Rows missing
  /// from either side are an InputError.
  MetricsMatrix joined(const MetricsMatrix& other) const;

  std::vector<std::string> constant_metrics() const;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> metrics_;
  std::vector<std::vector<double>> columns_;
};

/// L01..L12, MaxDist, Sk1, Sk2, Kt1, Kt2 for every successful report.
MetricsMatrix metrics_from_reports(std::span<const DatasetReport> reports);

/// Reads a CSV whose first column is `dataset` and whose other columns are
/// numeric metrics. A norms table is accepted as is; its `dist` column is
/// exposed as MaxDist. Lines starting with '#' are skipped.
MetricsMatrix read_metrics_csv(std::istream& in, const std::string& source_name);

/// Square table over the chosen metrics: Pearson below the diagonal,
/// Spearman above it, 1 on it.
class CorrelationTable {
 public:
  CorrelationTable(std::vector<std::string> metrics, std::vector<double> cells);

  const std::vector<std::string>& metrics() const noexcept { return metrics_; }
  std::size_t size() const noexcept { return metrics_.size(); }
  double at(std::size_t row, std::size_t col) const { return cells_.at(row * metrics_.size() + col); }
  std::size_t index_of(std::string_view metric) const;

  double pearson(std::string_view a, std::string_view b) const;
  double spearman(std::string_view a, std::string_view b) const;

 private:
  std::vector<std::string> metrics_;
  std::vector<double> cells_;
};

/// Throws InputError with fewer than 3 rows or an unknown metric and
/// ConstantInputError naming any constant selected column.
CorrelationTable correlation_table(const MetricsMatrix& matrix, std::span<const std::string> selection);

inline constexpr std::string_view correlation_legend = "# lower=pearson upper=spearman";
void write_correlation_csv(std::ostream& out, const CorrelationTable& table);
CorrelationTable read_correlation_csv(std::istream& in);

}  // namespace persnorm
