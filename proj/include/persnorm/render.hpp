#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "persnorm/bootstrap.hpp"
#include "persnorm/persistence.hpp"
#include "persnorm/point_cloud.hpp"
#include "persnorm/transforms.hpp"

namespace persnorm {

struct RenderSpec {
  int width = 480;
  int height = 480;
  int margin = 48;
};

/// Equal-width bins over [min, max] of one axis. Densities integrate to 1.
/// Constant data gets a single bin of unit width.
struct Histogram {
  double lo = 0.0;
  double bin_width = 1.0;
  std::vector<std::size_t> counts;
  std::vector<double> density;
};

/// Throws DomainError for fewer than 2 bins or an axis other than 1 or 2.
Histogram histogram(const PointCloud& cloud, int axis, std::size_t bins = 20);

/// Local maxima of the density profile after merging runs of equal bins.
std::size_t count_modes(const Histogram& h);

std::string render_scatter(const PointCloud& cloud, const RenderSpec& spec = {});

struct DiagramStyle {
  bool show_zero_persistence = false;
};

/// Dim-0 pairs as black dots, dim-1 as red triangles, essential pairs on a
/// dashed line at the top, the diagonal, and the band (if any) as a shaded
/// strip of vertical width band->width above it.
std::string render_diagram(const PersistenceDiagram& diagram, const std::optional<ConfidenceBand>& band,
                           const RenderSpec& spec = {}, const DiagramStyle& style = {});

/// One grey polyline per dataset for the chosen norm ("L01", "L02", "L11" or
/// "L12"); `highlight` is drawn thick and black.
std::string render_sweep(const std::vector<SweepResult>& results, std::string_view metric,
                         std::string_view highlight = "dino", const RenderSpec& spec = {});

std::string render_histogram(const PointCloud& cloud, int axis, std::size_t bins = 20, const RenderSpec& spec = {});

}  // namespace persnorm
