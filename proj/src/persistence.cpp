#include "persnorm/persistence.hpp"

#include <algorithm>
#include <limits>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "persnorm/error.hpp"

namespace persnorm {

bool pair_less(const PersistencePair& a, const PersistencePair& b) noexcept {
  return std::tie(a.dim, a.birth, a.death, a.essential, a.creator) <
         std::tie(b.dim, b.birth, b.death, b.essential, b.creator);
}

std::vector<PersistencePair> PersistenceDiagram::of_dim(int dim) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs) {
    if (p.dim == dim) out.push_back(p);
  }
  return out;
}

std::size_t PersistenceDiagram::count(int dim) const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [dim](const auto& p) { return p.dim == dim; }));
}

std::size_t PersistenceDiagram::count_essential(int dim) const {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(), [dim](const auto& p) { return p.dim == dim && p.essential; }));
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Roots are always the smallest vertex of their component.
  void attach(std::uint32_t dying, std::uint32_t survivor) { parent_[dying] = survivor; }

 private:
  std::vector<std::uint32_t> parent_;
};

std::vector<std::size_t> vertex_positions(const FilteredComplex& complex) {
  std::vector<std::size_t> pos(complex.n_points(), no_simplex);
  const auto simplices = complex.simplices();
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    if (simplices[i].dim == 0) pos[simplices[i].vertices[0]] = i;
  }
  return pos;
}

struct EdgeIndex {
  std::vector<std::size_t> simplex_of_rank;   // edge rank -> simplex position
  std::vector<std::uint32_t> rank_of_pair;    // u * n + v -> edge rank
  std::vector<bool> negative;                 // merges two H0 components
};

constexpr std::uint32_t no_rank = std::numeric_limits<std::uint32_t>::max();

EdgeIndex index_edges(const FilteredComplex& complex) {
  const std::size_t n = complex.n_points();
  EdgeIndex idx;
  idx.rank_of_pair.assign(n * n, no_rank);
  idx.simplex_of_rank.reserve(complex.count(1));
  idx.negative.reserve(complex.count(1));
  UnionFind uf(n);
  const auto simplices = complex.simplices();
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    if (s.dim != 1) continue;
    const auto u = s.vertices[0];
    const auto v = s.vertices[1];
    const auto rank = static_cast<std::uint32_t>(idx.simplex_of_rank.size());
    idx.rank_of_pair[u * n + v] = rank;
    idx.simplex_of_rank.push_back(i);
    const auto ru = uf.find(u);
    const auto rv = uf.find(v);
    if (ru != rv) {
      uf.attach(std::max(ru, rv), std::min(ru, rv));
      idx.negative.push_back(true);
    } else {
      idx.negative.push_back(false);
    }
  }
  return idx;
}

using Column = std::vector<std::uint32_t>;  // ascending edge ranks

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

std::vector<PersistencePair> compute_h0(const FilteredComplex& complex) {
  const std::size_t n = complex.n_points();
  const auto vpos = vertex_positions(complex);
  UnionFind uf(n);
  std::vector<PersistencePair> out;
  out.reserve(n);
  const auto simplices = complex.simplices();
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    if (s.dim != 1) continue;
    const auto ru = uf.find(s.vertices[0]);
    const auto rv = uf.find(s.vertices[1]);
    if (ru == rv) continue;
    const auto dying = std::max(ru, rv);
    uf.attach(dying, std::min(ru, rv));
    out.push_back({0, 0.0, s.value, false, vpos[dying], i});
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (uf.find(v) == v) out.push_back({0, 0.0, std::numeric_limits<double>::infinity(), true, vpos[v], no_simplex});
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

// Triangle columns over Z/2, reduced left to right. Rows of edges that merge
// H0 components are dropped up front: such an edge is a pivot of the edge
// boundary matrix, so it cannot also pivot a triangle column, and zeroing its
// row leaves every other pivot unchanged.
std::vector<PersistencePair> compute_h1(const FilteredComplex& complex) {
  const std::size_t n = complex.n_points();
  const auto edges = index_edges(complex);
  const auto simplices = complex.simplices();

  // pivot_owner[r] = slot in `reduced` of the column whose lowest entry is r.
  constexpr std::uint32_t unowned = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> pivot_owner(edges.simplex_of_rank.size(), unowned);
  std::vector<Column> reduced;
  std::vector<PersistencePair> out;
  Column column;
  Column scratch;

  // Once every positive edge owns a pivot, all later columns reduce to zero.
  std::size_t unpaired = static_cast<std::size_t>(std::count(edges.negative.begin(), edges.negative.end(), false));

  for (std::size_t i = 0; i < simplices.size() && unpaired > 0; ++i) {
    const auto& s = simplices[i];
    if (s.dim != 2) continue;
    const auto a = s.vertices[0], b = s.vertices[1], c = s.vertices[2];
    column.clear();
    for (const auto r : {edges.rank_of_pair[a * n + b], edges.rank_of_pair[a * n + c], edges.rank_of_pair[b * n + c]}) {
      if (r == no_rank) throw DomainError("compute_h1: triangle without all of its edges");
      if (!edges.negative[r]) column.push_back(r);
    }
    std::sort(column.begin(), column.end());

    while (!column.empty()) {
      const auto owner = pivot_owner[column.back()];
      if (owner == unowned) break;
      add_into(column, reduced[owner], scratch);
    }
    if (column.empty()) continue;

    const auto low = column.back();
    pivot_owner[low] = static_cast<std::uint32_t>(reduced.size());
    reduced.push_back(column);
    --unpaired;
    const auto creator = edges.simplex_of_rank[low];
    out.push_back({1, simplices[creator].value, s.value, false, creator, i});
  }

  for (std::size_t r = 0; r < edges.simplex_of_rank.size(); ++r) {
    if (edges.negative[r] || pivot_owner[r] != unowned) continue;
    const auto creator = edges.simplex_of_rank[r];
    out.push_back({1, simplices[creator].value, std::numeric_limits<double>::infinity(), true, creator, no_simplex});
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

PersistenceDiagram compute_diagram(const FilteredComplex& complex) {
  PersistenceDiagram d;
  d.max_scale = complex.max_scale();
  d.n_points = complex.n_points();
  d.pairs = compute_h0(complex);
  auto h1 = compute_h1(complex);
  d.pairs.insert(d.pairs.end(), h1.begin(), h1.end());
  return d;
}

PersistenceDiagram compute_diagram(const PointCloud& cloud, const RipsOptions& options) {
  return compute_diagram(build_rips(cloud, options));
}

}  // namespace persnorm
