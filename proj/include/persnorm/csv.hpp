#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/bootstrap.hpp"
#include "persnorm/norms.hpp"
#include "persnorm/persistence.hpp"

namespace persnorm {

/// Shortest decimal that round-trips to the same double; "inf", "-inf" and
/// "nan" for the non-finite values.
std::string format_real(double value);

/// Inverse of format_real. Throws InputError on anything else.
double parse_real(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

inline constexpr std::string_view stats_csv_header = "dataset,var,mean,sd,min,q25,q50,q75,max";
inline constexpr std::string_view moments_csv_header = "dataset,Sk1,Sk2,Kt1,Kt2";
inline constexpr std::string_view norms_csv_header =
    "dataset,L01,L02,L11,L12,sd1,sd2,rho,minX1,maxX1,minX2,maxX2,dist";
inline constexpr std::string_view diagram_csv_header = "dim,birth,death,essential";

/// Per-axis summary table; two rows per dataset (var X1 and X2).
void write_stats_csv(std::ostream& out, std::span<const DatasetReport> reports);
/// Skewness and kurtosis per axis.
void write_moments_csv(std::ostream& out, std::span<const DatasetReport> reports);
/// Norms joined with spread statistics. Failed datasets keep their row with
/// every numeric field set to nan.
void write_norms_csv(std::ostream& out, std::span<const DatasetReport> reports);

struct DiagramCsvOptions {
  bool include_zero_persistence = true;
};

/// One row per pair; essential pairs carry death=inf. A band, when given, is
/// appended as a trailing comment row:
/// `# band alpha=<a> resamples=<B> seed=<s> multiplier=<m> width=<w>`.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram,
                       const std::optional<ConfidenceBand>& band = std::nullopt, const DiagramCsvOptions& options = {});

/// Reads the pairs of a diagram CSV back (comment rows skipped).
std::vector<PersistencePair> read_diagram_csv(std::istream& in);

}  // namespace persnorm
