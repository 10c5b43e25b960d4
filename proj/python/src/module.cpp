#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "persnorm/bootstrap.hpp"
#include "persnorm/datasets.hpp"
#include "persnorm/error.hpp"
#include "persnorm/norms.hpp"
#include "persnorm/persistence.hpp"

namespace py = pybind11;
using namespace persnorm;

namespace {

PointCloud to_cloud(py::array_t<double, py::array::c_style | py::array::forcecast> xy, std::string label) {
  if (xy.ndim() != 2 || xy.shape(1) != 2) throw InputError("points must have shape (n, 2)");
  std::vector<Point> pts(static_cast<std::size_t>(xy.shape(0)));
  auto r = xy.unchecked<2>();
  for (py::ssize_t i = 0; i < xy.shape(0); ++i) pts[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
  return PointCloud(std::move(label), std::move(pts));
}

py::array_t<double> to_array(const PointCloud& cloud) {
  py::array_t<double> out({static_cast<py::ssize_t>(cloud.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    w(static_cast<py::ssize_t>(i), 0) = cloud[i].x1;
    w(static_cast<py::ssize_t>(i), 1) = cloud[i].x2;
  }
  return out;
}

RipsOptions rips_options(std::optional<double> max_scale) {
  RipsOptions o;
  o.max_scale = max_scale;
  return o;
}

py::dict axis_dict(const AxisSummary& a) {
  py::dict d;
  d["mean"] = a.mean;
  d["sd"] = a.sd;
  d["min"] = a.min;
  d["q25"] = a.q25;
  d["q50"] = a.q50;
  d["q75"] = a.q75;
  d["max"] = a.max;
  d["skewness"] = a.skewness;
  d["kurtosis"] = a.kurtosis;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Persistence norms of planar point clouds";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", error.ptr());

  py::class_<PersistencePair>(m, "PersistencePair")
      .def_readonly("dim", &PersistencePair::dim)
      .def_readonly("birth", &PersistencePair::birth)
      .def_readonly("death", &PersistencePair::death)
      .def_readonly("essential", &PersistencePair::essential)
      .def_property_readonly("lifetime", &PersistencePair::lifetime)
      .def_property_readonly("zero_persistence", &PersistencePair::zero_persistence)
      .def("__repr__", [](const PersistencePair& p) {
        return "PersistencePair(dim=" + std::to_string(p.dim) + ", birth=" + std::to_string(p.birth) +
               ", death=" + std::to_string(p.death) + ")";
      });

  py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
      .def_readonly("pairs", &PersistenceDiagram::pairs)
      .def_readonly("max_scale", &PersistenceDiagram::max_scale)
      .def_readonly("n_points", &PersistenceDiagram::n_points)
      .def("of_dim", &PersistenceDiagram::of_dim, py::arg("dim"))
      .def("count", &PersistenceDiagram::count, py::arg("dim"))
      .def("count_essential", &PersistenceDiagram::count_essential, py::arg("dim"));

  py::class_<PersistenceNorms>(m, "PersistenceNorms")
      .def_readonly("l01", &PersistenceNorms::l01)
      .def_readonly("l02", &PersistenceNorms::l02)
      .def_readonly("l11", &PersistenceNorms::l11)
      .def_readonly("l12", &PersistenceNorms::l12)
      .def("as_dict", [](const PersistenceNorms& n) {
        py::dict d;
        d["L01"] = n.l01;
        d["L02"] = n.l02;
        d["L11"] = n.l11;
        d["L12"] = n.l12;
        return d;
      });

  m.def(
      "diagram",
      [](py::array_t<double> points, std::optional<double> max_scale) {
        const auto cloud = to_cloud(points, "points");
        py::gil_scoped_release release;
        return compute_diagram(cloud, rips_options(max_scale));
      },
      py::arg("points"), py::arg("max_scale") = py::none());

  m.def(
      "norms",
      [](py::array_t<double> points, const std::string& essential, std::optional<double> max_scale) {
        const auto cloud = to_cloud(points, "points");
        const auto policy = parse_essential_policy(essential);
        py::gil_scoped_release release;
        return compute_norms(compute_diagram(cloud, rips_options(max_scale)), policy);
      },
      py::arg("points"), py::arg("essential") = "drop", py::arg("max_scale") = py::none());

  m.def(
      "summarize",
      [](py::array_t<double> points) {
        const auto s = summarize(to_cloud(points, "points"));
        py::dict d;
        d["x1"] = axis_dict(s.x1);
        d["x2"] = axis_dict(s.x2);
        d["pearson_r"] = s.pearson_r;
        d["max_pair_dist"] = s.max_pair_dist;
        return d;
      },
      py::arg("points"));

  m.def(
      "band_width",
      [](py::array_t<double> points, double alpha, std::size_t resamples, std::uint64_t seed) {
        const auto cloud = to_cloud(points, "points");
        py::gil_scoped_release release;
        return bootstrap_band(cloud, alpha, resamples, seed).width;
      },
      py::arg("points"), py::arg("alpha") = 0.05, py::arg("resamples") = 100, py::arg("seed") = 7);

  m.def(
      "gen_normal", [](std::uint64_t seed, std::size_t n) { return to_array(gen_normal(seed, n)); },
      py::arg("seed") = 42, py::arg("n") = fixture_size);

  m.def(
      "load_tsv",
      [](const std::string& path) {
        const auto bundle = load_tsv(path);
        py::dict out;
        for (const auto& c : bundle.clouds()) out[py::str(c.label())] = to_array(c);
        return out;
      },
      py::arg("path"));
}
