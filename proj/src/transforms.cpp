#include "persnorm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <thread>

#include "persnorm/csv.hpp"
#include "persnorm/error.hpp"

namespace persnorm {

TransformKind parse_transform_kind(std::string_view text) {
  if (text == "scale") return TransformKind::scale;
  if (text == "translate") return TransformKind::translate;
  if (text == "expand" || text == "expand_x1") return TransformKind::expand_x1;
  throw DomainError("unknown transform '" + std::string(text) + "' (expected scale, translate or expand)");
}

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::scale:
      return "scale";
    case TransformKind::translate:
      return "translate";
    case TransformKind::expand_x1:
      return "expand_x1";
  }
  return "?";
}

void TransformSpec::validate() const {
  if (grid.empty()) throw DomainError("transform grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError("transform grid holds a non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("transform grid must be strictly increasing");
    if (kind != TransformKind::translate && !(grid[i] > 0.0)) {
      throw DomainError("scale factors must be positive");
    }
  }
}

TransformSpec TransformSpec::defaults(TransformKind kind) {
  TransformSpec spec{kind, {}};
  if (kind == TransformKind::translate) {
    for (int d = -50; d <= 50; d += 10) spec.grid.push_back(d);
  } else {
    for (int k = 1; k <= 12; ++k) spec.grid.push_back(0.25 * k);
  }
  return spec;
}

PointCloud translate(const PointCloud& cloud, double d1, double d2) {
  std::vector<Point> pts(cloud.points().begin(), cloud.points().end());
  for (auto& p : pts) {
    p.x1 += d1;
    p.x2 += d2;
  }
  return PointCloud(cloud.label(), std::move(pts));
}

PointCloud apply_transform(const PointCloud& cloud, TransformKind kind, double parameter) {
  if (kind != TransformKind::translate && !(parameter > 0.0)) {
    throw DomainError(std::string(to_string(kind)) + ": factor must be positive");
  }
  if (kind == TransformKind::translate) return translate(cloud, parameter, 0.0);
  std::vector<Point> pts(cloud.points().begin(), cloud.points().end());
  for (auto& p : pts) {
    p.x1 *= parameter;
    if (kind == TransformKind::scale) p.x2 *= parameter;
  }
  return PointCloud(cloud.label(), std::move(pts));
}

namespace {

PersistenceNorms norms_of(const PointCloud& cloud, const NormsConfig& config) {
  return compute_norms(compute_diagram(cloud, config.rips), config.essential_policy);
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

void cross_check(const PersistenceNorms& full, const PersistenceNorms& shortcut, const std::string& where,
                 double tol) {
  for (int dim = 0; dim <= 1; ++dim) {
    if (!close(full.l1(dim), shortcut.l1(dim), tol) || !close(full.l2(dim), shortcut.l2(dim), tol)) {
      throw Error("sweep cross-check failed for " + where + ": recomputed norms differ from the equivariant shortcut");
    }
  }
}

SweepResult sweep_one(const PointCloud& cloud, const TransformSpec& spec, const SweepOptions& options) {
  SweepResult result{cloud.label(), spec.kind, {}};
  const bool equivariant = spec.kind != TransformKind::expand_x1;
  PersistenceNorms baseline;
  if (equivariant) baseline = norms_of(cloud, options.norms);

  for (double param : spec.grid) {
    PersistenceNorms value;
    if (equivariant) {
      value = spec.kind == TransformKind::scale ? scaled(baseline, param) : baseline;
      if (!options.shortcut) {
        const auto full = norms_of(apply_transform(cloud, spec.kind, param), options.norms);
        cross_check(full, value, cloud.label() + " at " + format_real(param), options.cross_check_tolerance);
        value = full;
      }
    } else {
      value = norms_of(apply_transform(cloud, spec.kind, param), options.norms);
    }
    result.rows.push_back({param, value});
  }
  return result;
}

}  // namespace

std::vector<SweepResult> run_sweep(const DatasetBundle& bundle, const TransformSpec& spec, const SweepOptions& options) {
  spec.validate();
  const auto clouds = bundle.clouds();
  std::vector<SweepResult> out(clouds.size());
  unsigned workers = options.norms.threads != 0 ? options.norms.threads
                                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(clouds.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < clouds.size(); ++i) out[i] = sweep_one(clouds[i], spec, options);
    return out;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < clouds.size(); i += workers) out[i] = sweep_one(clouds[i], spec, options);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& results) {
  out << sweep_csv_header << '\n';
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      out << r.label << ',' << to_string(r.kind) << ',' << format_real(row.parameter) << ','
          << format_real(row.norms.l01) << ',' << format_real(row.norms.l02) << ',' << format_real(row.norms.l11)
          << ',' << format_real(row.norms.l12) << '\n';
    }
  }
}

std::vector<SweepResult> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<SweepResult> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != sweep_csv_header) throw ParseError("sweep csv", line_no, "unexpected header");
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw ParseError("sweep csv", line_no, "expected 7 fields");
    const auto kind = parse_transform_kind(f[1]);
    if (out.empty() || out.back().label != f[0] || out.back().kind != kind) out.push_back({f[0], kind, {}});
    SweepRow row;
    row.parameter = parse_real(f[2]);
    row.norms.l01 = parse_real(f[3]);
    row.norms.l02 = parse_real(f[4]);
    row.norms.l11 = parse_real(f[5]);
    row.norms.l12 = parse_real(f[6]);
    out.back().rows.push_back(row);
  }
  return out;
}

}  // namespace persnorm
