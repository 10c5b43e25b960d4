#include <algorithm>
#include <map>
#include <string>

#include "persnorm/error.hpp"
#include "persnorm/persistence.hpp"

namespace persnorm {

PersistenceDiagram naive_reduction_oracle(const FilteredComplex& complex) {
  if (complex.n_points() > oracle_max_points) {
    throw CapacityError("naive_reduction_oracle: " + std::to_string(complex.n_points()) +
                        " points exceed the limit of " + std::to_string(oracle_max_points));
  }
  const auto simplices = complex.simplices();
  const std::size_t m = simplices.size();

  std::map<std::vector<std::uint32_t>, std::size_t> position;
  for (std::size_t j = 0; j < m; ++j) {
    const auto vs = simplices[j].vertex_span();
    position.emplace(std::vector<std::uint32_t>(vs.begin(), vs.end()), j);
  }

  // Boundary columns; a column is the sorted list of its nonzero row indices.
  std::vector<std::vector<std::size_t>> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto vs = simplices[j].vertex_span();
    if (vs.size() < 2) continue;
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      std::vector<std::uint32_t> face;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k != drop) face.push_back(vs[k]);
      }
      const auto it = position.find(face);
      if (it == position.end()) throw DomainError("naive_reduction_oracle: missing face");
      columns[j].push_back(it->second);
    }
    std::sort(columns[j].begin(), columns[j].end());
  }

  auto low = [&](std::size_t j) -> std::ptrdiff_t {
    return columns[j].empty() ? -1 : static_cast<std::ptrdiff_t>(columns[j].back());
  };

  // Textbook reduction: add an earlier column with the same low until the low
  // is unique or the column vanishes.
  for (std::size_t j = 0; j < m; ++j) {
    bool changed = true;
    while (changed && low(j) >= 0) {
      changed = false;
      for (std::size_t i = 0; i < j; ++i) {
        if (low(i) == low(j)) {
          std::vector<std::size_t> sum;
          std::set_symmetric_difference(columns[j].begin(), columns[j].end(), columns[i].begin(),
                                        columns[i].end(), std::back_inserter(sum));
          columns[j] = std::move(sum);
          changed = true;
          break;
        }
      }
    }
  }

  PersistenceDiagram d;
  d.max_scale = complex.max_scale();
  d.n_points = complex.n_points();
  std::vector<bool> paired(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const auto l = low(j);
    if (l < 0) continue;
    const auto i = static_cast<std::size_t>(l);
    paired[i] = paired[j] = true;
    if (simplices[i].dim <= 1) {
      d.pairs.push_back({simplices[i].dim, simplices[i].value, simplices[j].value, false, i, j});
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (paired[j] || simplices[j].dim > 1) continue;
    d.pairs.push_back({simplices[j].dim, simplices[j].value, std::numeric_limits<double>::infinity(), true, j, no_simplex});
  }
  std::sort(d.pairs.begin(), d.pairs.end(), pair_less);
  return d;
}

}  // namespace persnorm
