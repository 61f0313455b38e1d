// Acceptance gate: one line per criterion, exit status counts failures.
// argv[1] must point at the command line binary.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinconn/verify.hpp"

using namespace spinconn;
using nlohmann::json;

namespace {

int failures = 0;

void line(bool ok, const char* label, const std::string& detail) {
  std::printf("%s: %s (%s)\n", ok ? "PASS" : "FAIL", label, detail.c_str());
  if (!ok) ++failures;
}

std::string residual_detail(double worst, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max residual %.3e, tolerance %.0e", worst,
                tol);
  return buf;
}

SpacetimeModel schwarzschild_unit() {
  ModelParams params;
  params.scalars["rs"] = 1.0;
  return make_builtin_spacetime("schwarzschild", params);
}

ModelParams poly_params() {
  ModelParams params;
  params.has_poly = true;
  params.poly[0].terms = {{2.0, {0, 0, 0, 0}},
                          {0.3, {1, 0, 0, 0}},
                          {0.1, {0, 2, 0, 0}}};
  params.poly[1].terms = {{1.5, {0, 0, 0, 0}},
                          {-0.2, {0, 1, 0, 0}},
                          {0.05, {2, 0, 0, 0}}};
  params.poly[2].terms = {{1.0, {0, 0, 0, 0}},
                          {0.1, {0, 0, 1, 0}},
                          {0.1, {1, 1, 0, 0}}};
  params.poly[3].terms = {{1.2, {0, 0, 0, 0}}, {0.2, {0, 0, 0, 1}}};
  params.box = {{{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
  return params;
}

SpacetimeModel poly_model() {
  return make_builtin_spacetime("diag_poly", poly_params());
}

Mat4d flat_inverse() {
  Mat4d g{};
  g.m[0][0] = 1.0;
  g.m[1][1] = g.m[2][2] = g.m[3][3] = -1.0;
  return g;
}

double ten4c_conj_defect(const Ten4c& conj_assembled, const Ten4c& plain) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          worst = std::max(worst,
                           std::abs(conj_assembled.t[a][b][i][j] -
                                    std::conj(plain.t[a][b][i][j])));
  return worst;
}

void criterion_canonical_algebra() {
  const CanonicalConstants c = canonical_constants();
  const Mat4c ident = identity4c();
  const ChiralityProjectors proj = chirality_projectors(c.H);
  double exact = 0.0;
  exact = std::max(exact, max_abs(matmul(c.H, c.H) - ident));
  exact = std::max(exact, std::abs(trace(c.H)));
  exact = std::max(exact, max_abs(matmul(c.d_hi, c.d_lo) - ident));
  exact = std::max(exact, max_abs(matmul(proj.bul, proj.bul) +
                                  matmul(proj.circ, proj.circ) - ident));

  double res = 0.0;
  res = std::max(res, max_abs(matmul(c.d_lo, proj.bul) -
                              matmul(transpose(proj.bul), c.d_lo)));
  res = std::max(res, max_abs(matmul(c.d_lo, proj.circ) -
                              matmul(transpose(proj.circ), c.d_lo)));
  res = std::max(res, max_abs(matmul(c.d_hi, transpose(proj.bul)) -
                              matmul(proj.bul, c.d_hi)));
  res = std::max(res, max_abs(matmul(c.d_hi, transpose(proj.circ)) -
                              matmul(proj.circ, c.d_hi)));
  for (int k = 0; k < 4; ++k) {
    res = std::max(res, max_abs(matmul(c.gamma[k], proj.bul) -
                                matmul(proj.circ, c.gamma[k])));
    res = std::max(res, max_abs(matmul(c.gamma[k], proj.circ) -
                                matmul(proj.bul, c.gamma[k])));
  }
  const DecoratedGamma dec = decorated_gamma(c.gamma, c.H);
  for (int n = 0; n < 4; ++n)
    for (int r = 0; r < 4; ++r)
      res = std::max(res, max_abs(matmul(dec.circ_bul[n], dec.bul_circ[r]) +
                                  matmul(dec.bul_circ[n], dec.circ_bul[r]) -
                                  matmul(c.gamma[n], c.gamma[r])));
  res = std::max(res, gamma_identity_residual(c.gamma, flat_inverse(),
                                              c.d_lo, c.d_hi, c.H));

  char buf[96];
  std::snprintf(buf, sizeof buf, "exact part %.1e, residual part %.3e", exact,
                res);
  line(exact == 0.0 && res < 1e-14,
       "canonical spinor algebra identities hold", buf);
}

void criterion_flatness() {
  const SpacetimeModel model = make_builtin_spacetime("minkowski", ModelParams{});
  const FrameField frame = coordinate_frame(model);
  const SpinorData data = canonical_data(model, frame);
  const DerivativeScheme scheme;
  const Box box = default_sampling_box(model);

  double worst = 0.0;
  for (const SpacetimePoint& p : sample_points(model, box, 5, 42)) {
    worst = std::max(worst, max_abs(christoffel_frame(model, frame, p,
                                                      scheme)));
    for (SpinVariant v : {SpinVariant::decorated, SpinVariant::projector,
                          SpinVariant::compact})
      worst = std::max(
          worst, max_abs(spin_connection_general(model, frame, data, v, p,
                                                 scheme)));
    const CurvatureAt curv =
        curvature_at(model, frame, data, SpinVariant::decorated, p, scheme);
    worst = std::max(worst, max_abs(curv.riemann));
    worst = std::max(worst, max_abs(curv.spin));
  }
  line(worst < 1e-10, "flat spacetime gives zero connection and curvature",
       residual_detail(worst, 1e-10));
}

void criterion_formula_equivalence() {
  double worst = 0.0;
  for (const char* name : {"schwarzschild", "diag_poly"}) {
    RunConfig cfg;
    cfg.spacetime = name;
    if (std::string(name) == "schwarzschild")
      cfg.params.scalars["rs"] = 1.0;
    else
      cfg.params = poly_params();
    cfg.frame = "tetrad";
    cfg.points.count = 100;
    cfg.points.seed = 42;
    const CompareTable table = run_compare(cfg);
    for (int u = 0; u < 4; ++u)
      for (int w = 0; w < 4; ++w)
        if (table.applicable[u] && table.applicable[w])
          worst = std::max(worst, table.dev[u][w]);
  }
  line(worst < 1e-6, "all connection formulas agree on curved backgrounds",
       residual_detail(worst, 1e-6));
}

void criterion_metricity() {
  const DerivativeScheme scheme;
  double field_worst = 0.0;
  double tau_worst = 0.0;
  for (const SpacetimeModel& model : {schwarzschild_unit(), poly_model()}) {
    const FrameField frame = orthonormal_tetrad(model);
    const SpinorData data = canonical_data(model, frame);
    const Box box = default_sampling_box(model);
    const auto points = sample_points(model, box, 100, 42);
    const MetricityReport rep = metricity_report(
        model, frame, data, SpinVariant::decorated, points, scheme, 42);
    for (double r : {rep.metric, rep.spinor_metric, rep.gamma, rep.chirality,
                     rep.dirac_form, rep.spinor_metric_conj,
                     rep.chirality_conj, rep.gamma_conj})
      field_worst = std::max(field_worst, r);
    tau_worst = std::max(tau_worst, rep.tau_naturality);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "field residual %.3e (tol 1e-6), tau residual %.3e (tol 1e-8)",
                field_worst, tau_worst);
  line(field_worst < 1e-6 && tau_worst < 1e-8,
       "covariant derivatives preserve every basic field", buf);
}

void criterion_torsion() {
  const DerivativeScheme scheme;
  double torsion_worst = 0.0;
  double symmetry_worst = 0.0;
  for (const SpacetimeModel& model :
       {make_builtin_spacetime("minkowski", ModelParams{}), schwarzschild_unit(),
        poly_model()}) {
    const Box box = default_sampling_box(model);
    const auto points = sample_points(model, box, 20, 42);
    for (const FrameField& frame :
         {coordinate_frame(model), orthonormal_tetrad(model)}) {
      const bool holonomic = frame.kind == FrameField::Kind::holonomic;
      for (const SpacetimePoint& p : points) {
        torsion_worst =
            std::max(torsion_worst, torsion_defect(model, frame, p, scheme));
        if (holonomic) {
          const Ten3d chris = christoffel_frame(model, frame, p, scheme);
          for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j)
                symmetry_worst =
                    std::max(symmetry_worst,
                             std::fabs(chris.t[k][i][j] - chris.t[k][j][i]));
        }
      }
    }
  }
  char buf[120];
  std::snprintf(
      buf, sizeof buf,
      "torsion %.3e (tol 1e-6), holonomic symmetry %.3e (tol 1e-8)",
      torsion_worst, symmetry_worst);
  line(torsion_worst < 1e-6 && symmetry_worst < 1e-8,
       "connection is torsion free in every frame", buf);
}

void criterion_curvature_relation() {
  const DerivativeScheme scheme;
  double worst = 0.0;
  for (const SpacetimeModel& model : {schwarzschild_unit(), poly_model()}) {
    const Box box = default_sampling_box(model);
    const auto points = sample_points(model, box, 10, 42);
    const GaugeField gauge = make_random_gauge(box, 7, 2, 0.25);

    struct Sweep {
      FrameField frame;
      bool gauged;
    };
    const Sweep sweeps[] = {{orthonormal_tetrad(model), false},
                            {coordinate_frame(model), false},
                            {orthonormal_tetrad(model), true}};
    for (const Sweep& sweep : sweeps) {
      SpinorData data = canonical_data(model, sweep.frame);
      if (sweep.gauged) data = gauged_data(data, gauge);
      for (const SpacetimePoint& p : points) {
        const SpinorDataValues vals = data.eval(p);
        const Mat4d ginv = frame_metric_inverse(model, sweep.frame, p);
        const CurvatureAt curv = curvature_at(
            model, sweep.frame, data, SpinVariant::decorated, p, scheme);
        worst = std::max(worst,
                         curvature_relation_residual(curv.riemann, curv.spin,
                                                     vals.gamma, ginv));
      }
    }
  }
  line(worst < 1e-5, "spinor curvature matches the riemann contraction",
       residual_detail(worst, 1e-5));
}

void criterion_chirality_derivative() {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const Box box = default_sampling_box(model);
  const GaugeField gauge = make_random_gauge(box, 7, 2, 0.25);
  const SpinorData data = gauged_data(canonical_data(model, frame), gauge);
  const DerivativeScheme scheme;
  auto eval = data.eval;

  double worst = 0.0;
  for (const SpacetimePoint& p : sample_points(model, box, 50, 42)) {
    const Mat4d E = frame.components(p);
    for (int i = 0; i < 4; ++i) {
      const Vec4 v{E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
      const Mat4c fd = directional_derivative(
          [&eval](const SpacetimePoint& q) { return eval(q).H; }, v, p,
          scheme);
      const Mat4c formula =
          chirality_derivative(frame, data, model, i, p, scheme);
      worst = std::max(worst, max_abs(formula - fd));
    }
  }
  line(worst < 1e-6,
       "chirality derivative formula matches finite differences under gauge",
       residual_detail(worst, 1e-6));
}

void criterion_gauge_covariance() {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const Box box = default_sampling_box(model);
  const GaugeField gauge = make_random_gauge(box, 7, 2, 0.25);
  const SpinorData base = canonical_data(model, frame);
  const SpinorData data = gauged_data(base, gauge);
  const DerivativeScheme scheme;

  double conn_worst = 0.0;
  double curv_worst = 0.0;
  for (const SpacetimePoint& p : sample_points(model, box, 10, 42)) {
    const Mat4d E = frame.components(p);
    const Mat4c S = gauge.S(p);
    const Mat4c S_inv = gauge.S_inv(p);
    const Ten3c A_base = spin_connection_general(
        model, frame, base, SpinVariant::decorated, p, scheme);
    const Ten3c A_gauged = spin_connection_general(
        model, frame, data, SpinVariant::decorated, p, scheme);
    for (int i = 0; i < 4; ++i) {
      Mat4c Ab, Ag;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          Ab.m[a][b] = A_base.t[a][i][b];
          Ag.m[a][b] = A_gauged.t[a][i][b];
        }
      const Vec4 v{E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
      const Mat4c dS = directional_derivative(gauge.S, v, p, scheme);
      conn_worst = std::max(
          conn_worst, max_abs(Ag - (matmul(S_inv, matmul(Ab, S)) +
                                    matmul(S_inv, dS))));
    }

    const Ten4c r_base = spinor_curvature(
        model, frame, base, SpinVariant::decorated, p, scheme, false);
    const Ten4c r_gauged = spinor_curvature(
        model, frame, data, SpinVariant::decorated, p, scheme, false);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Mat4c rb, rg;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            rb.m[a][b] = r_base.t[a][b][i][j];
            rg.m[a][b] = r_gauged.t[a][b][i][j];
          }
        curv_worst = std::max(curv_worst,
                              max_abs(rg - matmul(S_inv, matmul(rb, S))));
      }
  }
  char buf[120];
  std::snprintf(
      buf, sizeof buf,
      "connection %.3e (tol 1e-6), curvature %.3e (tol 1e-5)", conn_worst,
      curv_worst);
  line(conn_worst < 1e-6 && curv_worst < 1e-5,
       "connection and curvature transform covariantly under gauge", buf);
}

void criterion_reality() {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const Box box = default_sampling_box(model);
  const GaugeField gauge = make_random_gauge(box, 7, 2, 0.25);
  const SpinorData data = gauged_data(canonical_data(model, frame), gauge);
  const DerivativeScheme scheme;

  double conn_defect = 0.0;
  double curv_defect = 0.0;
  for (const SpacetimePoint& p : sample_points(model, box, 10, 42)) {
    const Ten3c A = spin_connection_general(model, frame, data,
                                            SpinVariant::decorated, p,
                                            scheme);
    const Ten3c Abar = conjugate_connection(A);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int b = 0; b < 4; ++b)
          conn_defect = std::max(conn_defect,
                                 std::abs(Abar.t[a][i][b] -
                                          std::conj(A.t[a][i][b])));

    const Ten4c plain = spinor_curvature(
        model, frame, data, SpinVariant::decorated, p, scheme, false);
    const Ten4c conj_assembled = spinor_curvature(
        model, frame, data, SpinVariant::decorated, p, scheme, true);
    curv_defect = std::max(curv_defect,
                           ten4c_conj_defect(conj_assembled, plain));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "connection defect %.1e (exact), curvature defect %.3e "
                "(tol 1e-10)",
                conn_defect, curv_defect);
  line(conn_defect == 0.0 && curv_defect < 1e-10,
       "conjugate connection and curvature are complex conjugates", buf);
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& command) {
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

void criterion_cli(const std::string& cli) {
  const std::string base_cmd =
      "\"" + cli +
      "\" verify --spacetime schwarzschild --rs 1 --points 5 --seed 42 "
      "--format json 2>/dev/null";
  const CliResult first = run_cli(base_cmd);
  const CliResult second = run_cli(base_cmd);
  const bool deterministic = first.exit_code == 0 && second.exit_code == 0 &&
                             !first.output.empty() &&
                             first.output == second.output;

  const std::string cfg_path = "/tmp/spinconn_defect_cfg.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"spacetime": {"name": "schwarzschild", "params": {"rs": 1.0}},
               "points": {"count": 5, "seed": 42},
               "defect": {"gamma": [1, 0, 2], "amount": 0.001}})";
  }
  const CliResult defect = run_cli("\"" + cli + "\" verify --config " +
                                   cfg_path + " --format json 2>/dev/null");
  bool defect_flagged = defect.exit_code == 1;
  double defect_residual = 0.0;
  if (defect_flagged) {
    try {
      const json rep = json::parse(defect.output);
      for (const json& c : rep["checks"])
        if (c["name"] == "gamma-identity")
          defect_residual = c["max_residual"].get<double>();
    } catch (...) {
      defect_flagged = false;
    }
  }
  defect_flagged = defect_flagged && defect_residual >= 1e-4;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "repeat runs identical: %s; defect exit %d with residual "
                "%.3e (needs >= 1e-4)",
                deterministic ? "yes" : "no", defect.exit_code,
                defect_residual);
  line(deterministic && defect_flagged,
       "cli is deterministic and flags injected defects", buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <cli-binary>\n", argv[0]);
    return 64;
  }

  criterion_canonical_algebra();
  criterion_flatness();
  criterion_formula_equivalence();
  criterion_metricity();
  criterion_torsion();
  criterion_curvature_relation();
  criterion_chirality_derivative();
  criterion_gauge_covariance();
  criterion_reality();
  criterion_cli(argv[1]);

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
