#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "persnorm/cli.hpp"
#include "persnorm/correlate.hpp"
#include "persnorm/csv.hpp"
#include "persnorm/transforms.hpp"
#include "support.hpp"

using namespace persnorm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("persnorm-cli-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

// Small three-dataset file: the first 30 points of three fixtures.
std::string small_tsv() {
  const auto path = scratch() / "small.tsv";
  if (!fs::exists(path)) {
    DatasetBundle b;
    for (const char* label : {"dino", "circle", "star"}) {
      const auto& c = testing::fixtures().at(label);
      b.add(PointCloud(label, {c.points().begin(), c.points().begin() + 30}));
    }
    std::ofstream f(path);
    write_tsv(f, b);
  }
  return path.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors exit 1 with usage on stderr") {
  auto r = run({"norms", small_tsv(), "--bogus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"norms", small_tsv(), "--essential", "sometimes"}).code == 1);
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
  const auto r = run({"sweep", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--no-shortcut") != std::string::npos);
}

TEST_CASE("missing fixture exits 1 naming the path") {
  const auto r = run({"stats", "/no/such/fixtures.tsv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("/no/such/fixtures.tsv") != std::string::npos);
}

TEST_CASE("malformed fixture exits 1 with the line number") {
  const auto path = scratch() / "bad.tsv";
  std::ofstream(path) << "dataset\tx\ty\ndino\t1\t2\ndino\tone\t2\n";
  const auto r = run({"stats", path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find(":3:") != std::string::npos);
}

TEST_CASE("stats and moments tables") {
  auto r = run({"stats", small_tsv()});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(rows.size() == 1 + 6);
  CHECK(r.out.rfind(std::string(stats_csv_header), 0) == 0);
  CHECK(rows[1][0] == "dino");
  CHECK(rows[1][1] == "X1");
  r = run({"stats", small_tsv(), "--moments", "--with-normal"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  CHECK(rows.size() == 1 + 4);
  CHECK(rows[2][0] == "normal");
}

TEST_CASE("norms writes a file and honours flag over environment") {
  const auto out = (scratch() / "norms.csv").string();
  ::setenv("PERSNORM_ESSENTIAL", "clamp", 1);
  auto r = run({"norms", small_tsv(), "--essential", "drop", "-o", out});
  ::unsetenv("PERSNORM_ESSENTIAL");
  REQUIRE(r.code == 0);
  std::ifstream f(out);
  std::stringstream text;
  text << f.rdbuf();
  const auto rows = csv_rows(text.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].size() == 13);
  const auto dropped = parse_real(rows[1][1]);

  ::setenv("PERSNORM_ESSENTIAL", "clamp", 1);
  r = run({"norms", small_tsv()});
  ::unsetenv("PERSNORM_ESSENTIAL");
  REQUIRE(r.code == 0);
  const auto clamped = parse_real(csv_rows(r.out)[1][1]);
  CHECK(clamped > dropped);
  CHECK(testing::rel_diff(clamped - dropped, parse_real(csv_rows(r.out)[1][12])) <= 1e-12);

  std::istringstream again(text.str());
  CHECK(read_metrics_csv(again, "norms.csv").rows().size() == 3);
}

TEST_CASE("bad max scale is an input error") {
  CHECK(run({"norms", small_tsv(), "--max-scale", "wide"}).code == 1);
  CHECK(run({"diagram", small_tsv(), "--dataset", "dino", "--max-scale", "-3"}).code == 1);
}

TEST_CASE("diagram with band and svg") {
  const auto svg = (scratch() / "circle.svg").string();
  const auto r = run({"diagram", testing::fixture_path(), "--dataset", "circle", "--band", "--band-b", "20", "--svg", svg});
  REQUIRE(r.code == 0);
  int long_loops = 0;
  for (const auto& row : csv_rows(r.out)) {
    if (row[0] == "1" && parse_real(row[2]) - parse_real(row[1]) > 40.0) ++long_loops;
  }
  CHECK(long_loops == 1);
  CHECK(r.out.find("# band alpha=0.05 resamples=20 seed=7") != std::string::npos);
  CHECK(fs::file_size(svg) > 0);
  CHECK(run({"diagram", small_tsv(), "--dataset", "away"}).code == 1);
}

TEST_CASE("diagram of the generated normal dataset") {
  const auto r = run({"diagram", small_tsv(), "--dataset", "normal", "--seed", "5"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out).size() > 142);
}

TEST_CASE("translate sweep is flat") {
  const auto dir = (scratch() / "sweep-svg").string();
  const auto r = run({"sweep", small_tsv(), "--kind", "translate", "--svg-dir", dir});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  for (const auto& res : read_sweep_csv(in)) {
    for (const auto& row : res.rows) CHECK(testing::rel_diff(row.norms.l11, res.rows[0].norms.l11) <= 1e-9);
  }
  CHECK(fs::exists(fs::path(dir) / "translate_L11.svg"));
  CHECK(fs::exists(fs::path(dir) / "translate_L12.svg"));
  CHECK(run({"sweep", small_tsv(), "--kind", "scale", "--grid", "0.5,2", "--no-shortcut"}).code == 0);
  CHECK(run({"sweep", small_tsv(), "--kind", "scale", "--grid", "2,1"}).code == 1);
  CHECK(run({"sweep", small_tsv(), "--kind", "shear"}).code == 1);
}

TEST_CASE("correlate from published values") {
  auto r = run({"correlate", testing::test_data("published_metrics.csv"), "--table", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto t = read_correlation_csv(in);
  CHECK(t.size() == 5);
  CHECK(std::abs(t.spearman("L11", "L12") - 0.855) <= 0.001);
  r = run({"correlate", testing::test_data("published_metrics.csv"), "--metrics", "L01,Kt2"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out).size() == 3);
  CHECK(run({"correlate", "/no/such.csv"}).code == 1);
}

TEST_CASE("gen-normal and hist") {
  auto r = run({"gen-normal", "--seed", "42"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto b = read_tsv(in, "gen");
  CHECK(b.at("normal") == gen_normal(42));
  ::setenv("PERSNORM_SEED", "9", 1);
  r = run({"gen-normal"});
  ::unsetenv("PERSNORM_SEED");
  std::istringstream in9(r.out);
  CHECK(read_tsv(in9, "gen").at("normal") == gen_normal(9));

  r = run({"hist", small_tsv(), "--dataset", "circle", "--axis", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("</svg>") != std::string::npos);
  CHECK(run({"hist", small_tsv(), "--dataset", "circle", "--axis", "3"}).code == 1);
}

TEST_CASE("all is atomic: a failing run leaves no directory behind") {
  const auto target = scratch() / "never";
  const auto bad = scratch() / "flat.tsv";
  std::ofstream(bad) << "dataset\tx\ty\ndino\t1\t1\ndino\t1\t2\ndino\t1\t3\n";
  const auto r = run({"all", bad.string(), "--out", target.string()});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(target));
  CHECK_FALSE(fs::exists(scratch() / "never.partial"));
}
