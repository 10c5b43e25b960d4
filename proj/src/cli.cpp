#include "persnorm/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "persnorm/bootstrap.hpp"
#include "persnorm/correlate.hpp"
#include "persnorm/csv.hpp"
#include "persnorm/datasets.hpp"
#include "persnorm/error.hpp"
#include "persnorm/norms.hpp"
#include "persnorm/render.hpp"
#include "persnorm/transforms.hpp"

namespace persnorm {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string fixtures;
  std::string output;
  std::string essential = "drop";
  std::string max_scale = "auto";
  std::uint64_t seed = 42;
  bool with_normal = false;
  unsigned threads = 0;
};

struct BandFlags {
  bool enabled = false;
  double alpha = 0.05;
  std::size_t resamples = 100;
  std::uint64_t seed = 7;
  double multiplier = 2.0;
};

void add_fixtures(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("fixtures", o.fixtures, "Dataset TSV (dataset<TAB>x<TAB>y)")->envname("PERSNORM_FIXTURES");
}

void add_output(CLI::App* cmd, CommonOptions& o, const std::string& what) {
  cmd->add_option("-o,--output", o.output, what + " (default: stdout)");
}

void add_engine(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--essential", o.essential, "Essential-bar policy for norms: drop or clamp")
      ->envname("PERSNORM_ESSENTIAL")
      ->check(CLI::IsMember({"drop", "clamp"}, CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--max-scale", o.max_scale, "Rips threshold, or 'auto' for the cloud diameter")
      ->envname("PERSNORM_MAX_SCALE")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)")->envname("PERSNORM_THREADS");
}

void add_normal(CLI::App* cmd, CommonOptions& o) {
  cmd->add_flag("--with-normal", o.with_normal, "Append the generated normal dataset");
  cmd->add_option("--seed", o.seed, "Seed of the generated normal dataset")
      ->envname("PERSNORM_SEED")
      ->capture_default_str();
}

void add_band(CLI::App* cmd, BandFlags& b) {
  cmd->add_flag("--band", b.enabled, "Compute the bootstrap confidence band");
  cmd->add_option("--band-alpha", b.alpha, "Band significance level")
      ->envname("PERSNORM_BAND_ALPHA")
      ->capture_default_str();
  cmd->add_option("--band-b", b.resamples, "Number of resamples")->envname("PERSNORM_BAND_B")->capture_default_str();
  cmd->add_option("--band-seed", b.seed, "Resampling seed")->envname("PERSNORM_BAND_SEED")->capture_default_str();
  cmd->add_option("--band-multiplier", b.multiplier, "Multiplier on the quantile")->capture_default_str();
}

NormsConfig norms_config(const CommonOptions& o) {
  NormsConfig c;
  c.essential_policy = parse_essential_policy(o.essential);
  c.threads = o.threads;
  if (o.max_scale != "auto") {
    try {
      c.rips.max_scale = parse_real(o.max_scale);
    } catch (const InputError&) {
      throw DomainError("--max-scale expects a number or 'auto', got '" + o.max_scale + "'");
    }
  }
  return c;
}

DatasetBundle load_bundle(const CommonOptions& o, std::ostream& err, bool force_normal = false) {
  if (o.fixtures.empty()) throw InputError("no fixture file given (positional argument or PERSNORM_FIXTURES)");
  auto bundle = load_tsv(o.fixtures);
  for (const auto& w : bundle.warnings) err << "warning: " << w << '\n';
  if ((o.with_normal || force_normal) && bundle.find(normal_label) == nullptr) bundle.add(gen_normal(o.seed));
  return bundle.in_report_order();
}

const PointCloud& pick(const DatasetBundle& bundle, const std::string& label, const CommonOptions& o,
                       std::optional<PointCloud>& normal_storage) {
  if (const auto* c = bundle.find(label)) return *c;
  if (label == normal_label) {
    normal_storage = gen_normal(o.seed);
    return *normal_storage;
  }
  throw InputError("dataset '" + label + "' not found in " + o.fixtures);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

template <typename Fn>
std::string capture(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

std::optional<ConfidenceBand> maybe_band(const PointCloud& cloud, const BandFlags& b) {
  if (!b.enabled) return std::nullopt;
  return bootstrap_band(cloud, b.alpha, b.resamples, b.seed, b.multiplier);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(parse_real(item));
    } catch (const InputError&) {
      throw DomainError("--grid: not a number: '" + item + "'");
    }
  }
  return grid;
}

std::vector<std::string> metric_selection(const MetricsMatrix& m, const std::string& metrics, int table) {
  std::vector<std::string> sel;
  if (!metrics.empty()) {
    std::stringstream ss(metrics);
    std::string item;
    while (std::getline(ss, item, ',')) sel.push_back(item);
    return sel;
  }
  const std::size_t limit = table == 3 ? 5 : known_metrics.size();
  for (std::size_t i = 0; i < limit; ++i) {
    if (m.has(known_metrics[i])) sel.emplace_back(known_metrics[i]);
  }
  if (table != 0 && sel.size() != limit) throw InputError("input lacks the metrics needed for table " + std::to_string(table));
  return sel;
}

// Writes the complete artifact set into `dir`.
void write_all(const fs::path& dir, const DatasetBundle& bundle, const CommonOptions& o, const BandFlags& band_flags) {
  auto put = [&](const fs::path& rel, const std::string& text) {
    const auto path = dir / rel;
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << text;
    if (!f) throw Error("write to '" + path.string() + "' failed");
  };

  const auto config = norms_config(o);
  const auto clouds = bundle.clouds();

  std::vector<DatasetReport> reports;
  for (const auto& cloud : clouds) {
    DatasetReport r;
    r.label = cloud.label();
    r.stats = summarize(cloud);
    const auto diagram = compute_diagram(cloud, config.rips);
    r.norms = compute_norms(diagram, config.essential_policy);
    reports.push_back(r);

    const auto band = bootstrap_band(cloud, band_flags.alpha, band_flags.resamples, band_flags.seed, band_flags.multiplier);
    put(fs::path("diagrams") / (cloud.label() + ".csv"),
        capture([&](std::ostream& os) { write_diagram_csv(os, diagram, band); }));
    put(fs::path("diagrams") / (cloud.label() + ".svg"), render_diagram(diagram, band));
    put(fs::path("scatter") / (cloud.label() + ".svg"), render_scatter(cloud));
    for (int axis = 1; axis <= 2; ++axis) {
      put(fs::path("histograms") / (cloud.label() + "_X" + std::to_string(axis) + ".svg"),
          render_histogram(cloud, axis));
    }
  }

  put("table1_stats.csv", capture([&](std::ostream& os) { write_stats_csv(os, reports); }));
  put("table2_norms.csv", capture([&](std::ostream& os) { write_norms_csv(os, reports); }));
  put("table4_moments.csv", capture([&](std::ostream& os) { write_moments_csv(os, reports); }));
  const auto metrics = metrics_from_reports(reports);
  const auto sel3 = metric_selection(metrics, "", 3);
  const auto sel5 = metric_selection(metrics, "", 5);
  put("table3_correlation.csv",
      capture([&](std::ostream& os) { write_correlation_csv(os, correlation_table(metrics, sel3)); }));
  put("table5_correlation.csv",
      capture([&](std::ostream& os) { write_correlation_csv(os, correlation_table(metrics, sel5)); }));
  if (const auto* normal = bundle.find(normal_label)) {
    DatasetBundle only;
    only.add(*normal);
    put("normal.tsv", capture([&](std::ostream& os) { write_tsv(os, only); }));
  }

  SweepOptions sweep_options;
  sweep_options.norms = config;
  for (auto kind : {TransformKind::scale, TransformKind::translate, TransformKind::expand_x1}) {
    const auto results = run_sweep(bundle, TransformSpec::defaults(kind), sweep_options);
    const std::string name(to_string(kind));
    put(fs::path("sweeps") / (name + ".csv"), capture([&](std::ostream& os) { write_sweep_csv(os, results); }));
    put(fs::path("sweeps") / (name + "_L11.svg"), render_sweep(results, "L11"));
    put(fs::path("sweeps") / (name + "_L12.svg"), render_sweep(results, "L12"));
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistence norms of 2-D point clouds: Rips persistent homology, norms, statistics and plots"};
  app.name("persnorm");
  app.require_subcommand(1);

  CommonOptions o;
  BandFlags band;

  auto* stats = app.add_subcommand("stats", "Per-axis summary statistics (mean, sd, quartiles)");
  bool moments = false;
  add_fixtures(stats, o);
  add_output(stats, o, "CSV output");
  add_normal(stats, o);
  stats->add_flag("--moments", moments, "Emit skewness and kurtosis instead");

  auto* norms = app.add_subcommand("norms", "Persistence norms joined with spread statistics");
  add_fixtures(norms, o);
  add_output(norms, o, "CSV output");
  add_engine(norms, o);
  add_normal(norms, o);

  auto* diagram = app.add_subcommand("diagram", "Persistence diagram of one dataset as CSV and SVG");
  std::string dataset;
  std::string svg_path;
  bool show_zero = false;
  add_fixtures(diagram, o);
  add_output(diagram, o, "Diagram CSV");
  add_engine(diagram, o);
  add_band(diagram, band);
  diagram->add_option("--dataset", dataset, "Dataset label")->required();
  diagram->add_option("--svg", svg_path, "Also write the diagram as SVG");
  diagram->add_option("--seed", o.seed, "Seed when --dataset normal is generated")->envname("PERSNORM_SEED");
  diagram->add_flag("--show-zero", show_zero, "Plot zero-persistence pairs");

  auto* sweep = app.add_subcommand("sweep", "Norms across a grid of scale / translate / expand transformations");
  std::string kind_text;
  std::string grid_text;
  std::string svg_dir;
  bool no_shortcut = false;
  add_fixtures(sweep, o);
  add_output(sweep, o, "Sweep CSV");
  add_engine(sweep, o);
  add_normal(sweep, o);
  sweep->add_option("--kind", kind_text, "scale, translate or expand")
      ->required()
      ->check(CLI::IsMember({"scale", "translate", "expand", "expand_x1"}));
  sweep->add_option("--grid", grid_text, "Comma-separated parameter grid (default per kind)");
  sweep->add_flag("--no-shortcut", no_shortcut, "Recompute every grid point and cross-check the equivariances");
  sweep->add_option("--svg-dir", svg_dir, "Write <kind>_L11.svg and <kind>_L12.svg here");

  auto* correlate = app.add_subcommand("correlate", "Pearson (lower) / Spearman (upper) correlation table");
  std::vector<std::string> inputs;
  std::string metrics_text;
  int table = 0;
  correlate->add_option("inputs", inputs, "Metrics or norms CSV files, joined on the dataset column");
  correlate->add_option("--fixtures", o.fixtures, "Compute metrics from this dataset TSV instead")
      ->envname("PERSNORM_FIXTURES");
  add_output(correlate, o, "Correlation CSV");
  add_engine(correlate, o);
  correlate->add_option("--seed", o.seed, "Seed of the generated normal dataset")->envname("PERSNORM_SEED");
  correlate->add_option("--metrics", metrics_text, "Comma-separated metric selection");
  correlate->add_option("--table", table, "3 (norms and MaxDist) or 5 (plus skewness and kurtosis)")
      ->check(CLI::IsMember({0, 3, 5}));

  auto* gen = app.add_subcommand("gen-normal", "Moment-matched bivariate normal dataset as TSV");
  std::size_t gen_n = fixture_size;
  add_output(gen, o, "TSV output");
  gen->add_option("--seed", o.seed, "Generator seed")->envname("PERSNORM_SEED")->capture_default_str();
  gen->add_option("-n,--points", gen_n, "Number of points")->capture_default_str();

  auto* hist = app.add_subcommand("hist", "Density histogram of one axis as SVG");
  int axis = 1;
  std::size_t bins = 20;
  add_fixtures(hist, o);
  add_output(hist, o, "SVG output");
  hist->add_option("--dataset", dataset, "Dataset label")->required();
  hist->add_option("--axis", axis, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  hist->add_option("--bins", bins, "Number of bins")->check(CLI::Range(2, 10000))->capture_default_str();
  hist->add_option("--seed", o.seed, "Seed when --dataset normal is generated")->envname("PERSNORM_SEED");

  auto* all = app.add_subcommand("all", "Write every table and figure into a directory");
  std::string out_dir;
  add_fixtures(all, o);
  add_engine(all, o);
  all->add_option("--seed", o.seed, "Seed of the generated normal dataset")
      ->envname("PERSNORM_SEED")
      ->capture_default_str();
  all->add_option("--out", out_dir, "Output directory")->required();
  all->add_option("--band-alpha", band.alpha, "Band significance level")->envname("PERSNORM_BAND_ALPHA");
  all->add_option("--band-b", band.resamples, "Number of resamples")->envname("PERSNORM_BAND_B");
  all->add_option("--band-seed", band.seed, "Resampling seed")->envname("PERSNORM_BAND_SEED");

  std::vector<std::string> argv_storage;
  argv_storage.push_back("persnorm");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help("", CLI::AppFormatMode::Normal);
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (stats->parsed()) {
      const auto bundle = load_bundle(o, err);
      std::vector<DatasetReport> reports;
      for (const auto& c : bundle.clouds()) reports.push_back({c.label(), {}, summarize(c), std::nullopt});
      write_text(o.output,
                 capture([&](std::ostream& os) { moments ? write_moments_csv(os, reports) : write_stats_csv(os, reports); }),
                 out);
    } else if (norms->parsed()) {
      const auto bundle = load_bundle(o, err);
      const auto reports = norms_table(bundle.clouds(), norms_config(o));
      for (const auto& r : reports) {
        if (!r.ok()) err << "error: " << r.label << ": " << *r.error << '\n';
      }
      write_text(o.output, capture([&](std::ostream& os) { write_norms_csv(os, reports); }), out);
      for (const auto& r : reports) {
        if (!r.ok()) return 1;
      }
    } else if (diagram->parsed()) {
      const auto bundle = load_bundle(o, err);
      std::optional<PointCloud> normal;
      const auto& cloud = pick(bundle, dataset, o, normal);
      const auto d = compute_diagram(cloud, norms_config(o).rips);
      const auto b = maybe_band(cloud, band);
      write_text(o.output, capture([&](std::ostream& os) { write_diagram_csv(os, d, b); }), out);
      if (!svg_path.empty()) write_text(svg_path, render_diagram(d, b, {}, {show_zero}), out);
    } else if (sweep->parsed()) {
      const auto bundle = load_bundle(o, err);
      auto spec = TransformSpec::defaults(parse_transform_kind(kind_text));
      if (!grid_text.empty()) spec.grid = parse_grid(grid_text);
      SweepOptions opts;
      opts.shortcut = !no_shortcut;
      opts.norms = norms_config(o);
      const auto results = run_sweep(bundle, spec, opts);
      write_text(o.output, capture([&](std::ostream& os) { write_sweep_csv(os, results); }), out);
      if (!svg_dir.empty()) {
        fs::create_directories(svg_dir);
        const std::string name(to_string(spec.kind));
        write_text((fs::path(svg_dir) / (name + "_L11.svg")).string(), render_sweep(results, "L11"), out);
        write_text((fs::path(svg_dir) / (name + "_L12.svg")).string(), render_sweep(results, "L12"), out);
      }
    } else if (correlate->parsed()) {
      MetricsMatrix matrix;
      if (!inputs.empty()) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          std::ifstream f(inputs[i], std::ios::binary);
          if (!f) throw InputError("cannot open '" + inputs[i] + "'");
          auto m = read_metrics_csv(f, inputs[i]);
          matrix = i == 0 ? std::move(m) : matrix.joined(m);
        }
      } else {
        const auto bundle = load_bundle(o, err, true);
        matrix = metrics_from_reports(norms_table(bundle.clouds(), norms_config(o)));
      }
      const auto sel = metric_selection(matrix, metrics_text, table);
      write_text(o.output, capture([&](std::ostream& os) { write_correlation_csv(os, correlation_table(matrix, sel)); }),
                 out);
    } else if (gen->parsed()) {
      DatasetBundle b;
      b.add(gen_normal(o.seed, gen_n));
      write_text(o.output, capture([&](std::ostream& os) { write_tsv(os, b); }), out);
    } else if (hist->parsed()) {
      const auto bundle = load_bundle(o, err);
      std::optional<PointCloud> normal;
      const auto& cloud = pick(bundle, dataset, o, normal);
      write_text(o.output, render_histogram(cloud, axis, bins), out);
    } else if (all->parsed()) {
      const auto bundle = load_bundle(o, err, true);
      const fs::path target(out_dir);
      const fs::path parent = target.has_parent_path() ? target.parent_path() : fs::path(".");
      fs::create_directories(parent);
      const fs::path staging = parent / (target.filename().string() + ".partial");
      fs::remove_all(staging);
      try {
        write_all(staging, bundle, o, band);
      } catch (...) {
        fs::remove_all(staging);
        throw;
      }
      fs::remove_all(target);
      fs::rename(staging, target);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace persnorm
