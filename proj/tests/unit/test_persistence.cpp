#include <doctest.h>

#include <cmath>
#include <random>

#include "persnorm/error.hpp"
#include "persnorm/norms.hpp"
#include "persnorm/persistence.hpp"
#include "support.hpp"

using namespace persnorm;

TEST_CASE("unit square diagram by hand") {
  const auto d = compute_diagram(testing::unit_square());
  const auto h0 = d.of_dim(0);
  REQUIRE(h0.size() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(h0[i].birth == 0.0);
    CHECK(h0[i].death == 1.0);
  }
  CHECK(h0[3].essential);
  // The two diagonals each open and close a loop at sqrt 2: retained, but
  // flagged as zero persistence.
  std::vector<PersistencePair> h1;
  for (const auto& p : d.of_dim(1)) {
    if (!p.zero_persistence()) h1.push_back(p);
    else CHECK(p.birth == std::sqrt(2.0));
  }
  CHECK(d.count(1) == 3);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == 1.0);
  CHECK(h1[0].death == std::sqrt(2.0));
  CHECK_FALSE(h1[0].essential);
}

TEST_CASE("two points") {
  const auto d = compute_diagram(testing::cloud({{0, 0}, {3, 4}}));
  REQUIRE(d.count(0) == 2);
  CHECK(d.pairs[0].death == 5.0);
  CHECK(d.pairs[1].essential);
  CHECK(d.count(1) == 0);
}

TEST_CASE("equilateral triangle: only a zero-persistence loop") {
  const double s = 2.0;
  const auto d = compute_diagram(testing::cloud({{0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2}}));
  const auto h0 = d.of_dim(0);
  REQUIRE(h0.size() == 3);
  CHECK(std::abs(h0[0].death - s) <= 1e-12);
  CHECK(std::abs(h0[1].death - s) <= 1e-12);
  CHECK(h0[2].essential);
  const auto h1 = d.of_dim(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].zero_persistence());
}

TEST_CASE("truncated scale leaves loops essential") {
  const auto d = compute_diagram(testing::unit_square(), {1.2});
  CHECK(d.count_essential(0) == 1);
  CHECK(d.count_essential(1) == 1);
  CHECK(d.of_dim(1)[0].birth == 1.0);
}

TEST_CASE("naive oracle on small cases") {
  const auto sq = build_rips(testing::unit_square());
  CHECK(testing::triples(naive_reduction_oracle(sq)) == testing::triples(compute_diagram(sq)));
  const auto one = naive_reduction_oracle(build_rips(testing::cloud({{1, 2}})));
  REQUIRE(one.pairs.size() == 1);
  CHECK(one.pairs[0].essential);
  CHECK(one.pairs[0].dim == 0);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(naive_reduction_oracle(build_rips(testing::random_cloud(rng, 65))), CapacityError);
}

TEST_CASE("engine agrees with the naive oracle on random clouds") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_real_distribution<double> frac(0.3, 1.0);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const auto n = size(rng);
    const auto c = t % 3 == 0 ? testing::grid_cloud(rng, n) : testing::random_cloud(rng, n);
    RipsOptions opts;
    if (t % 4 == 1 && n > 1) opts.max_scale = frac(rng) * max_pair_distance(c);
    if (opts.max_scale && *opts.max_scale <= 0) opts.max_scale.reset();
    const auto fc = build_rips(c, opts);
    CAPTURE(t);
    CHECK(testing::triples(compute_diagram(fc)) == testing::triples(naive_reduction_oracle(fc)));
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("count identities") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto c = testing::random_cloud(rng, 12);
    const auto d = compute_diagram(c);
    CHECK(d.count(0) == c.size());
    CHECK(d.count_essential(0) == 1);
    CHECK(d.count_essential(1) == 0);
    for (const auto& p : d.pairs) {
      if (p.dim == 0) CHECK(p.birth == 0.0);
      if (!p.essential) CHECK(p.birth <= p.death);
    }
  }
}

TEST_CASE("finite H0 lifetimes sum to the Euclidean MST weight") {
  for (const auto& c : testing::fixtures().clouds()) {
    CAPTURE(c.label());
    const auto d = compute_diagram(build_rips(c, {}));
    CHECK(testing::rel_diff(compute_norms(d).l01, testing::mst_weight(c)) <= 1e-9);
  }
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(2, 40);
  for (int t = 0; t < 100; ++t) {
    const auto c = testing::random_cloud(rng, size(rng), 100.0);
    CHECK(testing::rel_diff(compute_norms(compute_diagram(c)).l01, testing::mst_weight(c)) <= 1e-9);
  }
}

TEST_CASE("analytic circle") {
  const double r = 30.0;
  const auto d = compute_diagram(testing::circle(200, r));
  auto h1 = d.of_dim(1);
  std::sort(h1.begin(), h1.end(), [](const auto& a, const auto& b) { return a.lifetime() > b.lifetime(); });
  REQUIRE(!h1.empty());
  const auto& top = h1.front();
  CHECK(std::abs(top.death - std::sqrt(3.0) * r) <= 0.01 * std::sqrt(3.0) * r);
  CHECK(std::abs(top.birth - 2 * r * std::sin(M_PI / 200)) <= 1e-9);
  for (std::size_t i = 1; i < h1.size(); ++i) CHECK(h1[i].lifetime() < 0.05 * top.lifetime());
}

TEST_CASE("smaller circle agrees with the oracle") {
  const auto fc = build_rips(testing::circle(24, 30.0));
  CHECK(testing::triples(compute_diagram(fc)) == testing::triples(naive_reduction_oracle(fc)));
}

TEST_CASE("circle fixture has one long-lived loop") {
  const auto d = compute_diagram(testing::fixtures().at("circle"));
  double longest = 0.0;
  for (const auto& p : d.of_dim(1)) longest = std::max(longest, p.lifetime());
  CHECK(longest > 40.0);
}

TEST_CASE("isometries leave the diagram unchanged") {
  std::mt19937_64 rng(9);
  const auto c = testing::random_cloud(rng, 30);
  std::vector<Point> moved;
  for (const auto& p : c.points()) {
    moved.push_back({std::cos(1.1) * p.x1 - std::sin(1.1) * p.x2 - 20.0, std::sin(1.1) * p.x1 + std::cos(1.1) * p.x2});
  }
  const auto a = testing::triples(compute_diagram(c));
  const auto b = testing::triples(compute_diagram(testing::cloud(moved)));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::get<0>(a[i]) == std::get<0>(b[i]));
    CHECK(std::abs(std::get<1>(a[i]) - std::get<1>(b[i])) <= 1e-9);
    const double da = std::get<2>(a[i]), db = std::get<2>(b[i]);
    if (std::isinf(da)) CHECK(std::isinf(db));
    else CHECK(std::abs(da - db) <= 1e-9);
  }
}

TEST_CASE("stability smoke test on a fixture") {
  // Every off-diagonal point of one diagram lies within 2 eta (sup norm) of a
  // point of the other, or close enough to the diagonal to be matched there.
  const double eta = 1e-3;
  const auto& base = testing::fixtures().at("star");
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> jitter(-eta / std::sqrt(2.0), eta / std::sqrt(2.0));
  std::vector<Point> moved;
  for (const auto& p : base.points()) moved.push_back({p.x1 + jitter(rng), p.x2 + jitter(rng)});
  const auto a = compute_diagram(base);
  const auto b = compute_diagram(testing::cloud(moved));
  auto covered = [&](const PersistenceDiagram& from, const PersistenceDiagram& to) {
    for (const auto& p : from.pairs) {
      if (p.essential || p.lifetime() <= 4 * eta) continue;
      bool hit = false;
      for (const auto& q : to.pairs) {
        if (q.dim == p.dim && !q.essential && std::abs(q.birth - p.birth) <= 2 * eta &&
            std::abs(q.death - p.death) <= 2 * eta) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };
  CHECK(covered(a, b));
  CHECK(covered(b, a));
}
