#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "persnorm/point_cloud.hpp"
#include "persnorm/rips.hpp"

namespace persnorm {

inline constexpr std::size_t no_simplex = std::numeric_limits<std::size_t>::max();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  bool essential = false;
  // Indices into FilteredComplex::simplices(), for diagnostics.
  std::size_t creator = no_simplex;
  std::size_t destroyer = no_simplex;

  double lifetime() const noexcept { return death - birth; }
  bool zero_persistence() const noexcept { return !essential && birth == death; }
};

/// Canonical ordering: (dim, birth, death, essential, creator).
bool pair_less(const PersistencePair& a, const PersistencePair& b) noexcept;

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;  // canonical order
  double max_scale = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_points = 0;

  std::vector<PersistencePair> of_dim(int dim) const;
  std::size_t count(int dim) const;
  std::size_t count_essential(int dim) const;
};

/// Union-find over the edges in filtration order. Every merge emits a finite
/// pair (0, edge value); the component with the larger root index dies. One
/// essential pair per component left at max_scale.
std::vector<PersistencePair> compute_h0(const FilteredComplex& complex);

/// Z/2 reduction of the triangle boundary columns, left to right. Edges that
/// merge components (negative for H0) are removed from the rows up front, so
/// every surviving pivot is a cycle-creating edge. Creator edges left
/// unpaired become essential dim-1 pairs.
std::vector<PersistencePair> compute_h1(const FilteredComplex& complex);

PersistenceDiagram compute_diagram(const FilteredComplex& complex);
PersistenceDiagram compute_diagram(const PointCloud& cloud, const RipsOptions& options = {});

/// Reference implementation: full boundary matrix of every simplex (dims 0-2)
/// reduced with the textbook algorithm, no shortcuts. Throws CapacityError
/// when the complex has more than `oracle_max_points` points.
inline constexpr std::size_t oracle_max_points = 64;
PersistenceDiagram naive_reduction_oracle(const FilteredComplex& complex);

}  // namespace persnorm
