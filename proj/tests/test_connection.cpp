#include <doctest.h>

#include <cmath>

#include "spinconn/connection.hpp"
#include "spinconn/errors.hpp"

using namespace spinconn;

namespace {

const double kHalfPi = 1.5707963267948966;

SpacetimeModel schwarzschild_unit() {
  ModelParams params;
  params.scalars["rs"] = 1.0;
  return make_builtin_spacetime("schwarzschild", params);
}

SpacetimePoint equator_point() {
  SpacetimePoint p;
  p.x = {0.0, 2.0, kHalfPi, 0.0};
  return p;
}

}  // namespace

TEST_CASE("flat christoffel components vanish exactly") {
  const SpacetimeModel model = make_builtin_spacetime("minkowski", ModelParams{});
  const Ten3d chris =
      christoffel_holonomic(model, equator_point(), DerivativeScheme{});
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(chris.t[k][i][j] == 0.0);
}

TEST_CASE("schwarzschild christoffel values at the equator") {
  const SpacetimeModel model = schwarzschild_unit();
  const Ten3d chris =
      christoffel_holonomic(model, equator_point(), DerivativeScheme{});

  // rs = 1, r = 2: f = 1/2, f' = 1/4
  CHECK(chris.t[1][0][0] == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(chris.t[0][0][1] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(chris.t[0][1][0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(chris.t[1][1][1] == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(chris.t[1][2][2] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(chris.t[1][3][3] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(chris.t[3][1][3] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(chris.t[2][3][3] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("frame christoffel reduces to the holonomic one") {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = coordinate_frame(model);
  const Ten3d a =
      christoffel_holonomic(model, equator_point(), DerivativeScheme{});
  const Ten3d b =
      christoffel_frame(model, frame, equator_point(), DerivativeScheme{});
  CHECK(max_abs(a - b) < 1e-11);
}

TEST_CASE("tetrad christoffel is torsion free") {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const Box box = default_sampling_box(model);
  for (const SpacetimePoint& p : sample_points(model, box, 10, 5))
    CHECK(torsion_defect(model, frame, p, DerivativeScheme{}) < 1e-9);
}

TEST_CASE("constant-data formula on a handmade christoffel") {
  const CanonicalConstants c = canonical_constants();
  Mat4d eta{};
  eta.m[0][0] = 1.0;
  eta.m[1][1] = eta.m[2][2] = eta.m[3][3] = -1.0;

  Ten3d chris{};
  chris.t[1][0][0] = 1.0;
  const Ten3c A = spin_connection_special(chris, c.gamma, eta);

  // only the time slice is populated, with a quarter of gamma_1 gamma_0
  CHECK(A.t[0][0][1] == cplx(0.25));
  CHECK(A.t[1][0][0] == cplx(0.25));
  CHECK(A.t[2][0][3] == cplx(-0.25));
  CHECK(A.t[3][0][2] == cplx(-0.25));
  CHECK(A.t[0][0][0] == cplx(0));
  CHECK(A.t[0][0][2] == cplx(0));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(A.t[a][1][b] == cplx(0));
      CHECK(A.t[a][2][b] == cplx(0));
      CHECK(A.t[a][3][b] == cplx(0));
    }
}

TEST_CASE("all formulas agree on a curved tetrad background") {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const SpinorData data = canonical_data(model, frame);
  const DerivativeScheme scheme;
  const SpacetimePoint p = equator_point();

  const Ten3d chris = christoffel_frame(model, frame, p, scheme);
  const Mat4d ginv = frame_metric_inverse(model, frame, p);
  const SpinorDataValues vals = data.eval(p);
  const Ten3c special = spin_connection_special(chris, vals.gamma, ginv);
  const Ten3c dec = spin_connection_general(model, frame, data,
                                            SpinVariant::decorated, p, scheme);
  const Ten3c proj = spin_connection_general(model, frame, data,
                                             SpinVariant::projector, p,
                                             scheme);
  const Ten3c comp = spin_connection_general(model, frame, data,
                                             SpinVariant::compact, p, scheme);

  CHECK(max_abs(special - dec) < 1e-10);
  CHECK(max_abs(special - proj) < 1e-10);
  CHECK(max_abs(special - comp) < 1e-10);
  CHECK(max_abs(dec - proj) < 1e-10);
}

TEST_CASE("general formulas agree in the coordinate frame") {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = coordinate_frame(model);
  const SpinorData data = canonical_data(model, frame);
  const DerivativeScheme scheme;
  SpacetimePoint p;
  p.x = {0.2, 2.7, 1.1, -0.5};

  const Ten3c dec = spin_connection_general(model, frame, data,
                                            SpinVariant::decorated, p, scheme);
  const Ten3c proj = spin_connection_general(model, frame, data,
                                             SpinVariant::projector, p,
                                             scheme);
  const Ten3c comp = spin_connection_general(model, frame, data,
                                             SpinVariant::compact, p, scheme);
  CHECK(max_abs(dec - proj) < 1e-10);
  CHECK(max_abs(dec - comp) < 1e-10);
}

TEST_CASE("flat spin connection vanishes exactly") {
  const SpacetimeModel model = make_builtin_spacetime("minkowski", ModelParams{});
  const FrameField frame = coordinate_frame(model);
  const SpinorData data = canonical_data(model, frame);
  SpacetimePoint p;
  p.x = {0.4, -0.8, 0.1, 0.9};
  for (SpinVariant variant : {SpinVariant::decorated, SpinVariant::projector,
                              SpinVariant::compact}) {
    const Ten3c A = spin_connection_general(model, frame, data, variant, p,
                                            DerivativeScheme{});
    CHECK(max_abs(A) == 0.0);
  }
}

TEST_CASE("conjugate connection components") {
  Ten3c A{};
  A.t[0][1][2] = cplx(0.5, -0.25);
  A.t[3][0][0] = cplx(-1.0, 2.0);
  const Ten3c Abar = conjugate_connection(A);
  CHECK(Abar.t[0][1][2] == std::conj(A.t[0][1][2]));
  CHECK(Abar.t[3][0][0] == std::conj(A.t[3][0][0]));
  CHECK(Abar.t[1][1][1] == cplx(0));
}

TEST_CASE("pointwise connection bundle") {
  const SpacetimeModel model = schwarzschild_unit();
  const FrameField frame = orthonormal_tetrad(model);
  const SpinorData data = canonical_data(model, frame);
  const ConnectionAt conn =
      connection_at(model, frame, data, SpinVariant::decorated,
                    equator_point(), DerivativeScheme{});
  const Ten3d chris =
      christoffel_frame(model, frame, equator_point(), DerivativeScheme{});
  CHECK(max_abs(conn.christoffel - chris) == 0.0);
  CHECK(max_abs(conn.spin) > 0.01);
}
