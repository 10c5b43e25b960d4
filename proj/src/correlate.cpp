#include "persnorm/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "persnorm/csv.hpp"
#include "persnorm/error.hpp"

namespace persnorm {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("spearman: length mismatch");
  if (xs.size() < 2) throw DegenerateCloudError("spearman: need at least 2 values");
  return pearson(average_ranks(xs), average_ranks(ys));
}

MetricsMatrix::MetricsMatrix(std::vector<std::string> rows, std::vector<std::string> metrics,
                             std::vector<std::vector<double>> columns)
    : rows_(std::move(rows)), metrics_(std::move(metrics)), columns_(std::move(columns)) {
  if (metrics_.size() != columns_.size()) throw InputError("metrics matrix: metric/column count mismatch");
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].size() != rows_.size()) throw InputError("metrics matrix: column '" + metrics_[c] + "' has missing cells");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!std::isfinite(columns_[c][r])) {
        throw InputError("metrics matrix: non-finite " + metrics_[c] + " for '" + rows_[r] + "'");
      }
    }
  }
}

bool MetricsMatrix::has(std::string_view metric) const noexcept {
  return std::find(metrics_.begin(), metrics_.end(), metric) != metrics_.end();
}

std::span<const double> MetricsMatrix::column(std::string_view metric) const {
  const auto it = std::find(metrics_.begin(), metrics_.end(), metric);
  if (it == metrics_.end()) throw InputError("unknown metric '" + std::string(metric) + "'");
  return columns_[static_cast<std::size_t>(it - metrics_.begin())];
}

MetricsMatrix MetricsMatrix::joined(const MetricsMatrix& other) const {
  auto metrics = metrics_;
  auto columns = columns_;
  for (std::size_t c = 0; c < other.metrics_.size(); ++c) {
    if (has(other.metrics_[c])) continue;
    std::vector<double> col;
    for (const auto& row : rows_) {
      const auto it = std::find(other.rows_.begin(), other.rows_.end(), row);
      if (it == other.rows_.end()) throw InputError("metrics join: dataset '" + row + "' missing from second input");
      col.push_back(other.columns_[c][static_cast<std::size_t>(it - other.rows_.begin())]);
    }
    metrics.push_back(other.metrics_[c]);
    columns.push_back(std::move(col));
  }
  return MetricsMatrix(rows_, std::move(metrics), std::move(columns));
}

std::vector<std::string> MetricsMatrix::constant_metrics() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& col = columns_[c];
    if (col.empty() || std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); })) {
      out.push_back(metrics_[c]);
    }
  }
  return out;
}

MetricsMatrix metrics_from_reports(std::span<const DatasetReport> reports) {
  std::vector<std::string> rows;
  std::vector<std::vector<double>> cols(known_metrics.size());
  for (const auto& r : reports) {
    if (!r.ok()) continue;
    rows.push_back(r.label);
    const double values[] = {r.norms.l01,         r.norms.l02,         r.norms.l11,         r.norms.l12,
                             r.stats.max_pair_dist, r.stats.x1.skewness, r.stats.x2.skewness, r.stats.x1.kurtosis,
                             r.stats.x2.kurtosis};
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(values[c]);
  }
  return MetricsMatrix(std::move(rows), std::vector<std::string>(known_metrics.begin(), known_metrics.end()),
                       std::move(cols));
}

MetricsMatrix read_metrics_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::vector<std::string> rows;
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    if (header.empty()) {
      if (fields.size() < 2 || fields[0] != "dataset") {
        throw ParseError(source_name, line_no, "expected a header starting with 'dataset'");
      }
      for (auto& f : fields) {
        if (f == "dist" || f == "Dist") f = "MaxDist";
      }
      header = std::move(fields);
      cols.resize(header.size() - 1);
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(source_name, line_no, "expected " + std::to_string(header.size()) + " fields");
    }
    rows.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      try {
        cols[c - 1].push_back(parse_real(fields[c]));
      } catch (const InputError& e) {
        throw ParseError(source_name, line_no, e.what());
      }
    }
  }
  if (header.empty()) throw ParseError(source_name, line_no == 0 ? 1 : line_no, "missing header");
  return MetricsMatrix(std::move(rows), std::vector<std::string>(header.begin() + 1, header.end()), std::move(cols));
}

CorrelationTable::CorrelationTable(std::vector<std::string> metrics, std::vector<double> cells)
    : metrics_(std::move(metrics)), cells_(std::move(cells)) {
  if (cells_.size() != metrics_.size() * metrics_.size()) throw InputError("correlation table: not square");
}

std::size_t CorrelationTable::index_of(std::string_view metric) const {
  const auto it = std::find(metrics_.begin(), metrics_.end(), metric);
  if (it == metrics_.end()) throw InputError("correlation table has no metric '" + std::string(metric) + "'");
  return static_cast<std::size_t>(it - metrics_.begin());
}

double CorrelationTable::pearson(std::string_view a, std::string_view b) const {
  const auto i = index_of(a), j = index_of(b);
  return at(std::max(i, j), std::min(i, j));
}

double CorrelationTable::spearman(std::string_view a, std::string_view b) const {
  const auto i = index_of(a), j = index_of(b);
  return at(std::min(i, j), std::max(i, j));
}

CorrelationTable correlation_table(const MetricsMatrix& matrix, std::span<const std::string> selection) {
  if (matrix.rows().size() < 3) throw InputError("correlation table needs at least 3 datasets");
  const std::size_t k = selection.size();
  std::vector<std::span<const double>> cols;
  for (const auto& m : selection) {
    cols.push_back(matrix.column(m));
    const auto c = cols.back();
    if (std::all_of(c.begin(), c.end(), [&](double v) { return v == c.front(); })) {
      throw ConstantInputError("metric '" + m + "' is constant across datasets");
    }
  }
  std::vector<double> cells(k * k, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      cells[i * k + j] = persnorm::pearson(cols[i], cols[j]);
      cells[j * k + i] = spearman(cols[j], cols[i]);
    }
  }
  return CorrelationTable(std::vector<std::string>(selection.begin(), selection.end()), std::move(cells));
}

void write_correlation_csv(std::ostream& out, const CorrelationTable& table) {
  out << correlation_legend << '\n' << "metric";
  for (const auto& m : table.metrics()) out << ',' << m;
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.metrics()[i];
    for (std::size_t j = 0; j < table.size(); ++j) out << ',' << format_real(table.at(i, j));
    out << '\n';
  }
}

CorrelationTable read_correlation_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> metrics;
  std::vector<double> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_csv_line(line);
    if (metrics.empty()) {
      if (f.empty() || f[0] != "metric") throw ParseError("correlation csv", line_no, "expected 'metric' header");
      metrics.assign(f.begin() + 1, f.end());
      continue;
    }
    if (f.size() != metrics.size() + 1) throw ParseError("correlation csv", line_no, "wrong field count");
    for (std::size_t j = 1; j < f.size(); ++j) cells.push_back(parse_real(f[j]));
  }
  return CorrelationTable(std::move(metrics), std::move(cells));
}

}  // namespace persnorm
