#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "spinconn/verify.hpp"

namespace py = pybind11;

namespace {

using namespace spinconn;

struct Setup {
  SpacetimeModel model;
  FrameField frame;
  SpinorData data;
  RunConfig cfg;
};

Setup make_setup(const std::string& config_json) {
  Setup s;
  s.cfg = parse_config(config_json);
  s.model = make_builtin_spacetime(s.cfg.spacetime, s.cfg.params);
  if (s.cfg.frame == "tetrad")
    s.frame = orthonormal_tetrad(s.model);
  else if (s.cfg.frame == "coordinate")
    s.frame = coordinate_frame(s.model);
  else
    s.frame = custom_frame(s.cfg.custom_frame_entries);
  s.data = canonical_data(s.model, s.frame);
  if (s.cfg.gauge.enabled) {
    const Box box = s.cfg.points.box_set ? s.cfg.points.box
                                         : default_sampling_box(s.model);
    const GaugeField gauge = make_random_gauge(
        box, s.cfg.gauge.seed, s.cfg.gauge.degree, s.cfg.gauge.amplitude);
    s.data = gauged_data(s.data, gauge);
  }
  return s;
}

SpacetimePoint to_point(const std::array<double, 4>& x) {
  SpacetimePoint p;
  p.x = {x[0], x[1], x[2], x[3]};
  return p;
}

using PyMat = std::vector<std::vector<cplx>>;

PyMat mat_to_py(const Mat4c& m) {
  PyMat out(4, std::vector<cplx>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = m.m[i][j];
  return out;
}

std::vector<std::vector<std::vector<double>>> ten3d_to_py(const Ten3d& t) {
  std::vector<std::vector<std::vector<double>>> out(
      4, std::vector<std::vector<double>>(4, std::vector<double>(4)));
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[k][i][j] = t.t[k][i][j];
  return out;
}

std::vector<std::vector<std::vector<cplx>>> ten3c_to_py(const Ten3c& t) {
  std::vector<std::vector<std::vector<cplx>>> out(
      4, std::vector<std::vector<cplx>>(4, std::vector<cplx>(4)));
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int b = 0; b < 4; ++b) out[a][i][b] = t.t[a][i][b];
  return out;
}

SpinVariant variant_from(const std::string& name) {
  if (name == "decorated") return SpinVariant::decorated;
  if (name == "projector") return SpinVariant::projector;
  if (name == "compact") return SpinVariant::compact;
  throw ConfigError("unknown variant '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Metric-compatible connections and curvature in the bundle of Dirac "
      "spinors";

  const auto err = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", err.ptr());
  py::register_exception<DomainError>(m, "DomainError", err.ptr());
  py::register_exception<InvalidParam>(m, "InvalidParam", err.ptr());
  py::register_exception<UnknownSpacetime>(m, "UnknownSpacetime", err.ptr());

  m.def(
      "canonical_algebra",
      [] {
        const CanonicalConstants c = canonical_constants();
        py::dict out;
        std::vector<std::vector<double>> g(4, std::vector<double>(4));
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) g[i][j] = c.g.m[i][j];
        out["metric"] = g;
        out["d_lo"] = mat_to_py(c.d_lo);
        out["d_hi"] = mat_to_py(c.d_hi);
        out["chirality"] = mat_to_py(c.H);
        out["dirac_form"] = mat_to_py(c.D);
        std::vector<PyMat> gam;
        for (int k = 0; k < 4; ++k) gam.push_back(mat_to_py(c.gamma[k]));
        out["gamma"] = gam;
        return out;
      },
      "Canonical constant spinor algebra of the orthonormal tetrad gauge");

  m.def(
      "christoffel",
      [](const std::string& config_json, const std::array<double, 4>& x) {
        const Setup s = make_setup(config_json);
        return ten3d_to_py(
            christoffel_frame(s.model, s.frame, to_point(x), s.cfg.scheme));
      },
      py::arg("config_json"), py::arg("point"),
      "Christoffel components at a point, indexed [component][direction]"
      "[argument]");

  m.def(
      "spin_connection",
      [](const std::string& config_json, const std::array<double, 4>& x,
         const std::string& variant) {
        const Setup s = make_setup(config_json);
        return ten3c_to_py(spin_connection_general(
            s.model, s.frame, s.data, variant_from(variant), to_point(x),
            s.cfg.scheme));
      },
      py::arg("config_json"), py::arg("point"),
      py::arg("variant") = "decorated",
      "Spin connection components at a point, indexed [upper][direction]"
      "[lower]");

  m.def(
      "curvature_residual",
      [](const std::string& config_json, const std::array<double, 4>& x) {
        const Setup s = make_setup(config_json);
        const SpacetimePoint p = to_point(x);
        const SpinorDataValues vals = s.data.eval(p);
        const Mat4d ginv = frame_metric_inverse(s.model, s.frame, p);
        const Ten4d riem = riemann_frame(s.model, s.frame, p, s.cfg.scheme);
        const Ten4c rspin = spinor_curvature(s.model, s.frame, s.data,
                                             s.cfg.variant, p, s.cfg.scheme,
                                             false);
        return curvature_relation_residual(riem, rspin, vals.gamma, ginv);
      },
      py::arg("config_json"), py::arg("point"),
      "Max deviation between the spinor curvature and its expression "
      "through the Riemann tensor at a point");

  m.def(
      "verify_json",
      [](const std::string& config_json) {
        return report_to_json(run_verify(parse_config(config_json)));
      },
      py::arg("config_json"),
      "Run the full identity check suite; returns the report as JSON");

  m.def(
      "compare_json",
      [](const std::string& config_json) {
        return compare_to_json(run_compare(parse_config(config_json)));
      },
      py::arg("config_json"),
      "Pairwise deviation table between the connection formulas as JSON");

  m.def(
      "inspect_json",
      [](const std::string& config_json, const std::array<double, 4>& x,
         const std::string& what) {
        return run_inspect(parse_config(config_json), to_point(x), what,
                           true);
      },
      py::arg("config_json"), py::arg("point"),
      py::arg("what") = "connection",
      "Tensor dump at one point as JSON");

  m.def(
      "default_tolerances",
      [] {
        py::dict out;
        for (const auto& [name, tol] : default_tolerances())
          out[name.c_str()] = tol;
        return out;
      },
      "Default tolerance for every registered check");

  m.attr("__version__") = "0.1.0";
}
