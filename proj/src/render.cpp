#include "persnorm/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "persnorm/error.hpp"

namespace persnorm {

namespace {

std::string fixed(double v, int precision = 2) {
  if (v == 0.0) v = 0.0;  // no "-0.00"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  if (ec != std::errc()) return "0";
  std::string s(buf, ptr);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Maps data coordinates into the plot area; y grows upwards.
class Frame {
 public:
  Frame(const RenderSpec& spec, double x0, double x1, double y0, double y1) : spec_(spec) {
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    x0_ = x0;
    x1_ = x1;
    y0_ = y0;
    y1_ = y1;
  }

  double px(double x) const {
    return spec_.margin + (x - x0_) / (x1_ - x0_) * (spec_.width - 2.0 * spec_.margin);
  }
  double py(double y) const {
    return spec_.height - spec_.margin - (y - y0_) / (y1_ - y0_) * (spec_.height - 2.0 * spec_.margin);
  }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }

 private:
  RenderSpec spec_;
  double x0_, x1_, y0_, y1_;
};

void open_svg(std::ostringstream& os, const RenderSpec& spec, std::string_view title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
     << "<title>" << escape(title) << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& os, const Frame& f, std::string_view xlabel, std::string_view ylabel,
          const RenderSpec& spec) {
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<rect x=\"" << fixed(f.px(f.x0())) << "\" y=\"" << fixed(f.py(f.y1())) << "\" width=\""
     << fixed(f.px(f.x1()) - f.px(f.x0())) << "\" height=\"" << fixed(f.py(f.y0()) - f.py(f.y1())) << "\"/>\n"
     << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = f.x0() + (f.x1() - f.x0()) * t / 4.0;
    const double y = f.y0() + (f.y1() - f.y0()) * t / 4.0;
    os << "<text x=\"" << fixed(f.px(x)) << "\" y=\"" << fixed(f.py(f.y0()) + 14) << "\" text-anchor=\"middle\">"
       << fixed(x, 1) << "</text>\n";
    os << "<text x=\"" << fixed(f.px(f.x0()) - 4) << "\" y=\"" << fixed(f.py(y) + 4) << "\" text-anchor=\"end\">"
       << fixed(y, 1) << "</text>\n";
  }
  os << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 8 << "\" text-anchor=\"middle\">"
     << escape(xlabel) << "</text>\n";
  os << "<text x=\"12\" y=\"" << spec.height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
     << spec.height / 2 << ")\">" << escape(ylabel) << "</text>\n";
  os << "</g>\n";
}

void heading(std::ostringstream& os, const RenderSpec& spec, std::string_view text) {
  os << "<text x=\"" << spec.width / 2 << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
     << "text-anchor=\"middle\">" << escape(text) << "</text>\n";
}

}  // namespace

Histogram histogram(const PointCloud& cloud, int axis, std::size_t bins) {
  if (bins < 2) throw DomainError("histogram: need at least 2 bins");
  if (cloud.empty()) throw DegenerateCloudError("histogram: empty cloud");
  const auto values = cloud.axis(axis);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  Histogram h;
  h.lo = *lo_it;
  const double span = *hi_it - *lo_it;
  if (span == 0.0) {
    h.bin_width = 1.0;
    h.counts = {values.size()};
  } else {
    h.bin_width = span / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (double v : values) {
      auto b = static_cast<std::size_t>((v - h.lo) / h.bin_width);
      h.counts[std::min(b, bins - 1)] += 1;
    }
  }
  for (auto c : h.counts) {
    h.density.push_back(static_cast<double>(c) / (static_cast<double>(values.size()) * h.bin_width));
  }
  return h;
}

std::size_t count_modes(const Histogram& h) {
  std::vector<double> plateaus;
  for (double d : h.density) {
    if (plateaus.empty() || plateaus.back() != d) plateaus.push_back(d);
  }
  std::size_t modes = 0;
  for (std::size_t i = 0; i < plateaus.size(); ++i) {
    const bool left = i == 0 || plateaus[i] > plateaus[i - 1];
    const bool right = i + 1 == plateaus.size() || plateaus[i] > plateaus[i + 1];
    if (left && right && plateaus[i] > 0.0) ++modes;
  }
  return modes;
}

std::string render_scatter(const PointCloud& cloud, const RenderSpec& spec) {
  if (cloud.empty()) throw DegenerateCloudError("render_scatter: empty cloud");
  const auto xs = cloud.axis(1);
  const auto ys = cloud.axis(2);
  const auto [xl, xh] = std::minmax_element(xs.begin(), xs.end());
  const auto [yl, yh] = std::minmax_element(ys.begin(), ys.end());
  const double pad = 0.05 * std::max(*xh - *xl, *yh - *yl);
  const Frame f(spec, *xl - pad, *xh + pad, *yl - pad, *yh + pad);

  std::ostringstream os;
  open_svg(os, spec, cloud.label());
  heading(os, spec, cloud.label());
  axes(os, f, "X1", "X2", spec);
  os << "<g fill=\"black\">\n";
  for (const auto& p : cloud.points()) {
    os << "<circle cx=\"" << fixed(f.px(p.x1)) << "\" cy=\"" << fixed(f.py(p.x2)) << "\" r=\"2.5\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_diagram(const PersistenceDiagram& diagram, const std::optional<ConfidenceBand>& band,
                           const RenderSpec& spec, const DiagramStyle& style) {
  double top = std::isfinite(diagram.max_scale) ? diagram.max_scale : 0.0;
  for (const auto& p : diagram.pairs) {
    if (!p.essential) top = std::max(top, p.death);
  }
  if (!(top > 0.0)) top = 1.0;
  const double inf_level = top * 1.05;
  const Frame f(spec, 0.0, top * 1.1, 0.0, top * 1.1);

  std::ostringstream os;
  open_svg(os, spec, "persistence diagram");
  heading(os, spec, "Persistence diagram");
  if (band && band->width > 0.0) {
    const double w = band->width;
    os << "<polygon class=\"band\" fill=\"#d8d8f0\" stroke=\"none\" points=\"" << fixed(f.px(0)) << ',' << fixed(f.py(0)) << ' '
       << fixed(f.px(f.x1())) << ',' << fixed(f.py(f.x1())) << ' ' << fixed(f.px(f.x1())) << ','
       << fixed(f.py(std::min(f.y1(), f.x1() + w))) << ' ';
    if (w < f.y1()) {
      os << fixed(f.px(std::max(0.0, f.y1() - w))) << ',' << fixed(f.py(f.y1())) << ' ';
    }
    os << fixed(f.px(0)) << ',' << fixed(f.py(std::min(w, f.y1()))) << "\"/>\n";
  }
  axes(os, f, "Birth", "Death", spec);
  os << "<line x1=\"" << fixed(f.px(0)) << "\" y1=\"" << fixed(f.py(0)) << "\" x2=\"" << fixed(f.px(f.x1()))
     << "\" y2=\"" << fixed(f.py(f.y1())) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fixed(f.px(0)) << "\" y1=\"" << fixed(f.py(inf_level)) << "\" x2=\"" << fixed(f.px(f.x1()))
     << "\" y2=\"" << fixed(f.py(inf_level)) << "\" stroke=\"grey\" stroke-dasharray=\"4 3\"/>\n";

  os << "<g fill=\"black\">\n";
  for (const auto& p : diagram.pairs) {
    if (p.dim != 0 || (!style.show_zero_persistence && p.zero_persistence())) continue;
    const double d = p.essential ? inf_level : p.death;
    os << "<circle class=\"h0\" cx=\"" << fixed(f.px(p.birth)) << "\" cy=\"" << fixed(f.py(d)) << "\" r=\"3\"/>\n";
  }
  os << "</g>\n<g fill=\"red\">\n";
  for (const auto& p : diagram.pairs) {
    if (p.dim != 1 || (!style.show_zero_persistence && p.zero_persistence())) continue;
    const double cx = f.px(p.birth);
    const double cy = f.py(p.essential ? inf_level : p.death);
    os << "<polygon class=\"h1\" points=\"" << fixed(cx) << ',' << fixed(cy - 4) << ' ' << fixed(cx - 3.5) << ','
       << fixed(cy + 3) << ' ' << fixed(cx + 3.5) << ',' << fixed(cy + 3) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_sweep(const std::vector<SweepResult>& results, std::string_view metric,
                         std::string_view highlight, const RenderSpec& spec) {
  auto value = [&](const SweepRow& r) {
    if (metric == "L01") return r.norms.l01;
    if (metric == "L02") return r.norms.l02;
    if (metric == "L11") return r.norms.l11;
    if (metric == "L12") return r.norms.l12;
    throw DomainError("render_sweep: unknown metric '" + std::string(metric) + "'");
  };
  double x0 = INFINITY, x1 = -INFINITY, y1 = 0.0;
  for (const auto& res : results) {
    for (const auto& r : res.rows) {
      x0 = std::min(x0, r.parameter);
      x1 = std::max(x1, r.parameter);
      y1 = std::max(y1, value(r));
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  const Frame f(spec, x0, x1, 0.0, y1 * 1.05);
  const std::string kind = results.empty() ? "" : std::string(to_string(results.front().kind));

  std::ostringstream os;
  open_svg(os, spec, kind + " " + std::string(metric));
  heading(os, spec, kind + " sweep: " + std::string(metric));
  axes(os, f, "parameter", std::string(metric), spec);
  auto polyline = [&](const SweepResult& res, const char* colour, double width) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << fixed(width, 1)
       << "\" data-dataset=\"" << escape(res.label) << "\" points=\"";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      os << (i ? " " : "") << fixed(f.px(res.rows[i].parameter)) << ',' << fixed(f.py(value(res.rows[i])));
    }
    os << "\"/>\n";
  };
  for (const auto& res : results) {
    if (res.label != highlight) polyline(res, "#999999", 1.0);
  }
  for (const auto& res : results) {
    if (res.label == highlight) polyline(res, "black", 2.5);
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_histogram(const PointCloud& cloud, int axis, std::size_t bins, const RenderSpec& spec) {
  const auto h = histogram(cloud, axis, bins);
  const double top = *std::max_element(h.density.begin(), h.density.end());
  const double hi = h.lo + h.bin_width * static_cast<double>(h.counts.size());
  const Frame f(spec, h.lo, hi, 0.0, top * 1.1);
  const std::string name = "X" + std::to_string(axis);

  std::ostringstream os;
  open_svg(os, spec, cloud.label() + " " + name);
  heading(os, spec, cloud.label() + ": density of " + name);
  os << "<g fill=\"#7f7f7f\" stroke=\"black\" stroke-width=\"0.5\">\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double left = h.lo + h.bin_width * static_cast<double>(b);
    os << "<rect x=\"" << fixed(f.px(left)) << "\" y=\"" << fixed(f.py(h.density[b])) << "\" width=\""
       << fixed(f.px(left + h.bin_width) - f.px(left)) << "\" height=\"" << fixed(f.py(0) - f.py(h.density[b]))
       << "\"/>\n";
  }
  os << "</g>\n";
  axes(os, f, name, "density", spec);
  os << "</svg>\n";
  return os.str();
}

}  // namespace persnorm
