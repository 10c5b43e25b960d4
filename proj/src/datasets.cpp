#include "persnorm/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "persnorm/csv.hpp"
#include "persnorm/error.hpp"
#include "persnorm/rng.hpp"

namespace persnorm {

void DatasetBundle::add(PointCloud cloud) {
  if (find(cloud.label()) != nullptr) throw InputError("duplicate dataset label '" + cloud.label() + "'");
  clouds_.push_back(std::move(cloud));
}

const PointCloud* DatasetBundle::find(std::string_view label) const noexcept {
  for (const auto& c : clouds_) {
    if (c.label() == label) return &c;
  }
  return nullptr;
}

const PointCloud& DatasetBundle::at(std::string_view label) const {
  if (const auto* c = find(label)) return *c;
  throw InputError("unknown dataset '" + std::string(label) + "'");
}

std::vector<std::string> DatasetBundle::labels() const {
  std::vector<std::string> out;
  for (const auto& c : clouds_) out.push_back(c.label());
  return out;
}

DatasetBundle DatasetBundle::in_report_order() const {
  DatasetBundle out;
  out.warnings = warnings;
  auto take = [&](std::string_view label) {
    if (const auto* c = find(label); c != nullptr && out.find(label) == nullptr) out.clouds_.push_back(*c);
  };
  take("dino");
  take(normal_label);
  for (auto label : fixture_labels) take(label);
  for (const auto& c : clouds_) take(c.label());
  return out;
}

namespace {

bool is_known_label(std::string_view label) {
  return label == normal_label ||
         std::find(fixture_labels.begin(), fixture_labels.end(), label) != fixture_labels.end();
}

double parse_coordinate(std::string_view field, const std::string& source, std::size_t line_no) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw ParseError(source, line_no, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(source, line_no, "non-finite coordinate");
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

DatasetBundle read_tsv(std::istream& in, const std::string& source_name, std::span<const std::string> filter) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::string> order;
  std::map<std::string, std::vector<Point>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != "dataset\tx\ty") throw ParseError(source_name, line_no, "expected header 'dataset<TAB>x<TAB>y'");
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no, "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(source_name, line_no, "empty dataset label");
    std::string label(fields[0]);
    const Point p{parse_coordinate(fields[1], source_name, line_no), parse_coordinate(fields[2], source_name, line_no)};
    if (!filter.empty() && std::find(filter.begin(), filter.end(), label) == filter.end()) continue;
    auto [it, inserted] = rows.try_emplace(label);
    if (inserted) order.push_back(label);
    it->second.push_back(p);
  }
  if (!have_header) throw ParseError(source_name, line_no == 0 ? 1 : line_no, "missing header");
  if (order.empty()) throw InputError(source_name + ": no data rows");

  DatasetBundle bundle;
  for (const auto& label : order) {
    if (!is_known_label(label)) bundle.warnings.push_back(source_name + ": unknown dataset label '" + label + "'");
    bundle.add(PointCloud(label, std::move(rows[label])));
  }
  for (const auto& wanted : filter) {
    if (bundle.find(wanted) == nullptr) throw InputError(source_name + ": dataset '" + wanted + "' not found");
  }
  return bundle;
}

DatasetBundle load_tsv(const std::filesystem::path& path, std::span<const std::string> filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_tsv(in, path.string(), filter);
}

void write_tsv(std::ostream& out, const DatasetBundle& bundle) {
  out << "dataset\tx\ty\n";
  for (const auto& cloud : bundle.clouds()) {
    for (const auto& p : cloud.points()) {
      out << cloud.label() << '\t' << format_real(p.x1) << '\t' << format_real(p.x2) << '\n';
    }
  }
}

std::vector<std::string> shared_moment_violations(const PointCloud& cloud, const MomentTargets& targets,
                                                  const MomentTolerances& tolerances) {
  std::vector<std::string> out;
  const auto s = summarize(cloud);
  auto check = [&](const char* name, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream msg;
      msg << cloud.label() << ": " << name << " = " << got << ", expected " << want << " +/- " << tol;
      out.push_back(msg.str());
    }
  };
  check("mean1", s.x1.mean, targets.mean1, tolerances.mean);
  check("mean2", s.x2.mean, targets.mean2, tolerances.mean);
  check("sd1", s.x1.sd, targets.sd1, tolerances.sd);
  check("sd2", s.x2.sd, targets.sd2, tolerances.sd);
  check("rho", s.pearson_r, targets.rho, tolerances.rho);
  return out;
}

namespace {

struct Sym2 {
  double a = 0.0, b = 0.0, c = 0.0;  // [[a, b], [b, c]]
};

// Inverse of the principal square root of an SPD 2x2 matrix:
// sqrt(S) = (S + s I) / t with s = sqrt(det S), t = sqrt(tr S + 2 s).
Sym2 inverse_sqrt(const Sym2& m) {
  const double s = std::sqrt(m.a * m.c - m.b * m.b);
  const double t = std::sqrt(m.a + m.c + 2.0 * s);
  const Sym2 root{(m.a + s) / t, m.b / t, (m.c + s) / t};
  const double det = root.a * root.c - root.b * root.b;
  return {root.c / det, -root.b / det, root.a / det};
}

}  // namespace

PointCloud gen_normal(std::uint64_t seed, std::size_t n, const MomentTargets& targets) {
  if (n < 3) throw DomainError("gen_normal: need n >= 3");
  if (!(targets.sd1 > 0.0 && targets.sd2 > 0.0)) throw DomainError("gen_normal: target deviations must be positive");
  if (!(std::abs(targets.rho) < 1.0)) throw DomainError("gen_normal: target correlation must lie in (-1, 1)");

  constexpr int max_attempts = 64;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<Point> raw(n);
    for (auto& p : raw) {
      const double u1 = rng.uniform01_open_low();
      const double u2 = rng.uniform01();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double theta = 2.0 * std::numbers::pi * u2;
      p = {r * std::cos(theta), r * std::sin(theta)};
    }

    double m1 = 0.0, m2 = 0.0;
    for (const auto& p : raw) {
      m1 += p.x1;
      m2 += p.x2;
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    Sym2 cov;
    for (auto& p : raw) {
      p.x1 -= m1;
      p.x2 -= m2;
      cov.a += p.x1 * p.x1;
      cov.b += p.x1 * p.x2;
      cov.c += p.x2 * p.x2;
    }
    const double denom = static_cast<double>(n - 1);
    cov = {cov.a / denom, cov.b / denom, cov.c / denom};
    const double det = cov.a * cov.c - cov.b * cov.b;
    if (!(det > 1e-12 * (cov.a + cov.c) * (cov.a + cov.c))) continue;

    const Sym2 w = inverse_sqrt(cov);
    const double tail = std::sqrt(1.0 - targets.rho * targets.rho);
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w1 = w.a * raw[i].x1 + w.b * raw[i].x2;
      const double w2 = w.b * raw[i].x1 + w.c * raw[i].x2;
      const double c2 = targets.rho * w1 + tail * w2;
      pts[i] = {targets.mean1 + targets.sd1 * w1, targets.mean2 + targets.sd2 * c2};
    }
    return PointCloud(std::string(normal_label), std::move(pts));
  }
  throw DegenerateCloudError("gen_normal: sample covariance stayed singular");
}

}  // namespace persnorm
