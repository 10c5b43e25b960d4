#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "persnorm/error.hpp"
#include "persnorm/point_cloud.hpp"
#include "support.hpp"

using namespace persnorm;
using doctest::Approx;

TEST_CASE("two-point cloud has closed-form moments") {
  const auto s = summarize(testing::cloud({{0, 0}, {1, 1}}));
  for (const auto& a : {s.x1, s.x2}) {
    CHECK(a.mean == 0.5);
    CHECK(a.sd == Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(a.skewness == 0.0);
    CHECK(a.kurtosis == Approx(1.0).epsilon(1e-15));
  }
  CHECK(s.pearson_r == Approx(1.0).epsilon(1e-15));
  CHECK(s.max_pair_dist == Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("pearson on hand-computed four points") {
  // x = 0..3, y = 0,1,0,1: sxy = 1, sxx = 5, syy = 1.
  CHECK(pearson(testing::cloud({{0, 0}, {1, 1}, {2, 0}, {3, 1}})) == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("pearson of an exact line is one") {
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({double(i), 2.0 * i + 3.0});
  CHECK(pearson(testing::cloud(pts)) == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(pearson(testing::cloud(pts))) <= 1.0);
}

TEST_CASE("pearson rejects a constant axis") {
  CHECK_THROWS_AS(pearson(testing::cloud({{1, 0}, {1, 1}, {1, 2}})), ConstantInputError);
  CHECK_THROWS_AS(summarize(testing::cloud({{1, 0}, {1, 1}, {1, 2}})), ConstantInputError);
}

TEST_CASE("max pair distance") {
  CHECK(max_pair_distance(testing::unit_square()) == std::sqrt(2.0));
  CHECK(max_pair_distance(testing::cloud({{0, 0}, {3, 4}})) == 5.0);
}

TEST_CASE("linear-interpolation quantiles") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(quantile_sorted(v, 0.0) == 1.0);
  CHECK(quantile_sorted(v, 0.25) == Approx(1.75));
  CHECK(quantile_sorted(v, 0.5) == Approx(2.5));
  CHECK(quantile_sorted(v, 1.0) == 4.0);
  const std::vector<double> one{7};
  CHECK(quantile_sorted(one, 0.3) == 7.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(PointCloud("bad", {{0, std::nan("")}}), NonFiniteError);
  CHECK_THROWS_AS(PointCloud("bad", {{INFINITY, 0}}), NonFiniteError);
  CHECK_THROWS_AS(summarize(testing::cloud({{0, 0}})), DegenerateCloudError);
  CHECK_THROWS_AS(summarize(testing::cloud({})), DegenerateCloudError);
}

TEST_CASE("dino summary matches the published table") {
  const auto s = summarize(testing::fixtures().at("dino"));
  CHECK(std::abs(s.x1.mean - 54.26) <= 0.01);
  CHECK(std::abs(s.x1.sd - 16.77) <= 0.01);
  CHECK(std::abs(s.x1.min - 22.31) <= 0.01);
  CHECK(std::abs(s.x1.q25 - 44.10) <= 0.01);
  CHECK(std::abs(s.x1.q50 - 53.33) <= 0.01);
  CHECK(std::abs(s.x1.q75 - 64.74) <= 0.01);
  CHECK(std::abs(s.x1.max - 98.21) <= 0.01);
  CHECK(std::abs(s.x1.skewness - 0.28) <= 0.01);
  CHECK(std::abs(s.x2.skewness - 0.25) <= 0.01);
  CHECK(std::abs(s.x1.kurtosis - 2.75) <= 0.01);
  CHECK(std::abs(s.x2.kurtosis - 1.96) <= 0.01);
  CHECK(std::abs(s.pearson_r - -0.064) <= 0.001);
  CHECK(std::abs(s.max_pair_dist - 97.082) <= 0.001);
}

TEST_CASE("generated normal cloud: distance cross-checked by an independent scan") {
  // Value from an independent O(n^2) scan of the same documented generator.
  CHECK(testing::rel_diff(max_pair_distance(gen_normal(42)), 149.12608475411318) <= 1e-12);
}

TEST_CASE("summary invariants on fixtures") {
  for (const auto& c : testing::fixtures().clouds()) {
    CAPTURE(c.label());
    const auto s = summarize(c);
    for (const auto& a : {s.x1, s.x2}) {
      CHECK(a.min <= a.q25);
      CHECK(a.q25 <= a.q50);
      CHECK(a.q50 <= a.q75);
      CHECK(a.q75 <= a.max);
      CHECK(a.sd >= 0);
      CHECK(a.kurtosis >= a.skewness * a.skewness + 1.0);
    }
    CHECK(s.max_pair_dist >= std::max(s.x1.max - s.x1.min, s.x2.max - s.x2.min));
  }
}

TEST_CASE("kurtosis bound on random clouds") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(3, 40);
  for (int t = 0; t < 1000; ++t) {
    const auto c = testing::random_cloud(rng, size(rng));
    const auto x = c.axis(1);
    CHECK(kurtosis(x) >= skewness(x) * skewness(x) + 1.0 - 1e-12);
  }
  CHECK(kurtosis(gen_normal(42).axis(2)) >= 1.0);
}

TEST_CASE("permutation, translation and scaling") {
  const auto& dino = testing::fixtures().at("dino");
  const auto base = summarize(dino);

  std::vector<Point> shuffled(dino.points().begin(), dino.points().end());
  std::mt19937_64 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto p = summarize(testing::cloud(shuffled));
  for (auto [a, b] : {std::pair{p.x1.mean, base.x1.mean}, {p.x1.sd, base.x1.sd}, {p.x2.q25, base.x2.q25},
                      {p.x1.skewness, base.x1.skewness}, {p.x2.kurtosis, base.x2.kurtosis},
                      {p.pearson_r, base.pearson_r}, {p.max_pair_dist, base.max_pair_dist}}) {
    CHECK(testing::rel_diff(a, b) <= 1e-12);
  }

  std::vector<Point> moved, grown;
  for (const auto& q : dino.points()) {
    moved.push_back({q.x1 + 12.5, q.x2 - 3.0});
    grown.push_back({q.x1 * 2.5, q.x2 * 2.5});
  }
  const auto t = summarize(testing::cloud(moved));
  CHECK(testing::rel_diff(t.x1.mean, base.x1.mean + 12.5) <= 1e-9);
  CHECK(testing::rel_diff(t.x2.mean, base.x2.mean - 3.0) <= 1e-9);
  CHECK(testing::rel_diff(t.x1.sd, base.x1.sd) <= 1e-9);
  CHECK(testing::rel_diff(t.pearson_r, base.pearson_r) <= 1e-9);
  CHECK(testing::rel_diff(t.x1.skewness, base.x1.skewness) <= 1e-9);
  CHECK(testing::rel_diff(t.x2.kurtosis, base.x2.kurtosis) <= 1e-9);
  CHECK(testing::rel_diff(t.max_pair_dist, base.max_pair_dist) <= 1e-9);

  const auto g = summarize(testing::cloud(grown));
  CHECK(testing::rel_diff(g.x1.mean, 2.5 * base.x1.mean) <= 1e-9);
  CHECK(testing::rel_diff(g.x2.sd, 2.5 * base.x2.sd) <= 1e-9);
  CHECK(testing::rel_diff(g.x1.q75, 2.5 * base.x1.q75) <= 1e-9);
  CHECK(testing::rel_diff(g.max_pair_dist, 2.5 * base.max_pair_dist) <= 1e-9);
  CHECK(testing::rel_diff(g.pearson_r, base.pearson_r) <= 1e-9);
  CHECK(testing::rel_diff(g.x1.skewness, base.x1.skewness) <= 1e-9);
  CHECK(testing::rel_diff(g.x1.kurtosis, base.x1.kurtosis) <= 1e-9);
}
