#include "persnorm/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>

#include "persnorm/error.hpp"

namespace persnorm {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
  if (text == "inf" || text == "Inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf" || text == "-Inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan" || text == "NaN" || text == "NA") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_stats_csv(std::ostream& out, std::span<const DatasetReport> reports) {
  out << stats_csv_header << '\n';
  for (const auto& r : reports) {
    for (int axis = 1; axis <= 2; ++axis) {
      const auto& a = axis == 1 ? r.stats.x1 : r.stats.x2;
      out << r.label << ",X" << axis;
      for (double v : {a.mean, a.sd, a.min, a.q25, a.q50, a.q75, a.max}) {
        out << ',' << (r.ok() ? format_real(v) : "nan");
      }
      out << '\n';
    }
  }
}

void write_moments_csv(std::ostream& out, std::span<const DatasetReport> reports) {
  out << moments_csv_header << '\n';
  for (const auto& r : reports) {
    out << r.label;
    for (double v : {r.stats.x1.skewness, r.stats.x2.skewness, r.stats.x1.kurtosis, r.stats.x2.kurtosis}) {
      out << ',' << (r.ok() ? format_real(v) : "nan");
    }
    out << '\n';
  }
}

void write_norms_csv(std::ostream& out, std::span<const DatasetReport> reports) {
  out << norms_csv_header << '\n';
  for (const auto& r : reports) {
    const auto& n = r.norms;
    const auto& s = r.stats;
    out << r.label;
    for (double v : {n.l01, n.l02, n.l11, n.l12, s.x1.sd, s.x2.sd, s.pearson_r, s.x1.min, s.x1.max, s.x2.min,
                     s.x2.max, s.max_pair_dist}) {
      out << ',' << (r.ok() ? format_real(v) : "nan");
    }
    out << '\n';
  }
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram,
                       const std::optional<ConfidenceBand>& band, const DiagramCsvOptions& options) {
  out << diagram_csv_header << '\n';
  for (const auto& p : diagram.pairs) {
    if (!options.include_zero_persistence && p.zero_persistence()) continue;
    out << p.dim << ',' << format_real(p.birth) << ',' << format_real(p.essential ? INFINITY : p.death) << ','
        << (p.essential ? 1 : 0) << '\n';
  }
  if (band) {
    out << "# band alpha=" << format_real(band->alpha) << " resamples=" << band->resamples << " seed=" << band->seed
        << " multiplier=" << format_real(band->multiplier) << " width=" << format_real(band->width) << '\n';
  }
}

std::vector<PersistencePair> read_diagram_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<PersistencePair> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != diagram_csv_header) throw ParseError("diagram csv", line_no, "unexpected header");
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw ParseError("diagram csv", line_no, "expected 4 fields");
    PersistencePair p;
    p.dim = static_cast<int>(parse_real(f[0]));
    p.birth = parse_real(f[1]);
    p.death = parse_real(f[2]);
    p.essential = f[3] == "1";
    out.push_back(p);
  }
  return out;
}

}  // namespace persnorm
