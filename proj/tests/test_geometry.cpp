#include <doctest.h>

#include <cmath>

#include "spinconn/errors.hpp"
#include "spinconn/geometry.hpp"

using namespace spinconn;

namespace {

const double kHalfPi = 1.5707963267948966;

ModelParams schwarzschild_params(double rs) {
  ModelParams params;
  params.scalars["rs"] = rs;
  return params;
}

ModelParams diag_poly_params() {
  ModelParams params;
  params.has_poly = true;
  // 2 + 0.3 x0 + 0.1 x1^2
  params.poly[0].terms = {{2.0, {0, 0, 0, 0}},
                          {0.3, {1, 0, 0, 0}},
                          {0.1, {0, 2, 0, 0}}};
  // 1.5 - 0.2 x1 + 0.05 x0^2
  params.poly[1].terms = {{1.5, {0, 0, 0, 0}},
                          {-0.2, {0, 1, 0, 0}},
                          {0.05, {2, 0, 0, 0}}};
  // 1 + 0.1 x2 + 0.1 x0 x1
  params.poly[2].terms = {{1.0, {0, 0, 0, 0}},
                          {0.1, {0, 0, 1, 0}},
                          {0.1, {1, 1, 0, 0}}};
  // 1.2 + 0.2 x3
  params.poly[3].terms = {{1.2, {0, 0, 0, 0}}, {0.2, {0, 0, 0, 1}}};
  params.box = {{{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}};
  return params;
}

}  // namespace

TEST_CASE("polynomial evaluation") {
  Poly poly;
  poly.terms = {{2.0, {0, 0, 0, 0}}, {-1.5, {1, 2, 0, 0}}, {0.5, {0, 0, 0, 3}}};
  const Vec4 x{2.0, 3.0, -1.0, 2.0};
  CHECK(poly.eval(x) == doctest::Approx(2.0 - 1.5 * 2 * 9 + 0.5 * 8));
}

TEST_CASE("directional derivative matches an exact gradient") {
  SpacetimePoint p;
  p.x = {0.3, -0.2, 0.7, 1.1};
  const Vec4 v{1.0, 2.0, -1.0, 0.5};
  auto f = [](const SpacetimePoint& q) {
    return q.x[0] * q.x[0] * q.x[0] + 2.0 * q.x[1] * q.x[2] - q.x[3];
  };
  DerivativeScheme scheme;
  CHECK(directional_derivative(f, v, p, scheme) ==
        doctest::Approx(2.97).epsilon(1e-10));

  scheme.order = 2;
  scheme.richardson = false;
  CHECK(directional_derivative(f, v, p, scheme) ==
        doctest::Approx(2.97).epsilon(1e-6));
}

TEST_CASE("derivative along the zero vector is exactly zero") {
  SpacetimePoint p;
  p.x = {0.3, -0.2, 0.7, 1.1};
  auto f = [](const SpacetimePoint& q) { return std::exp(q.x[0]); };
  const double d = directional_derivative(f, Vec4{0, 0, 0, 0}, p,
                                          DerivativeScheme{});
  CHECK(d == 0.0);
}

TEST_CASE("minkowski model") {
  const SpacetimeModel model = make_builtin_spacetime("minkowski", ModelParams{});
  CHECK(model.constant_metric);
  SpacetimePoint p;
  p.x = {5.0, -3.0, 100.0, 0.25};
  CHECK(model.admissible(p));
  const Mat4d g = model.metric(p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double want = i != j ? 0.0 : (i == 0 ? 1.0 : -1.0);
      CHECK(g.m[i][j] == want);
    }
}

TEST_CASE("minkowski rejects stray parameters") {
  CHECK_THROWS_AS(make_builtin_spacetime("minkowski", schwarzschild_params(1)),
                  InvalidParam);
}

TEST_CASE("unknown model name") {
  CHECK_THROWS_AS(make_builtin_spacetime("nowhere", ModelParams{}), UnknownSpacetime);
}

TEST_CASE("schwarzschild metric values") {
  const SpacetimeModel model =
      make_builtin_spacetime("schwarzschild", schwarzschild_params(1.0));
  CHECK_FALSE(model.constant_metric);
  SpacetimePoint p;
  p.x = {0.0, 2.0, kHalfPi, 0.0};
  const Mat4d g = model.metric(p);
  CHECK(g.m[0][0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.m[1][1] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(g.m[2][2] == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(g.m[3][3] == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(g.m[0][1] == 0.0);

  const Mat4d ginv = inverse_metric(model, p);
  CHECK(ginv.m[0][0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ginv.m[1][1] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(ginv.m[2][2] == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(ginv.m[3][3] == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("schwarzschild chart guard") {
  const SpacetimeModel model =
      make_builtin_spacetime("schwarzschild", schwarzschild_params(1.0));
  SpacetimePoint ok;
  ok.x = {0.0, 1.01, kHalfPi, 0.0};
  CHECK(model.admissible(ok));

  SpacetimePoint horizon;
  horizon.x = {0.0, 1.0, kHalfPi, 0.0};
  CHECK_FALSE(model.admissible(horizon));
  CHECK_THROWS_AS(model.metric(horizon), DomainError);

  SpacetimePoint axis;
  axis.x = {0.0, 2.0, 0.0005, 0.0};
  CHECK_FALSE(model.admissible(axis));
}

TEST_CASE("schwarzschild parameter validation") {
  CHECK_THROWS_AS(
      make_builtin_spacetime("schwarzschild", schwarzschild_params(0.0)),
      InvalidParam);
  CHECK_THROWS_AS(
      make_builtin_spacetime("schwarzschild", schwarzschild_params(-2.0)),
      InvalidParam);
}

TEST_CASE("diag_poly metric and domain") {
  const SpacetimeModel model =
      make_builtin_spacetime("diag_poly", diag_poly_params());
  SpacetimePoint p;
  p.x = {0.1, -0.2, 0.3, 0.0};
  CHECK(model.admissible(p));
  const Mat4d g = model.metric(p);
  CHECK(g.m[0][0] == doctest::Approx(2.0 + 0.03 + 0.1 * 0.04));
  CHECK(g.m[1][1] == doctest::Approx(-(1.5 + 0.04 + 0.05 * 0.01)));
  CHECK(g.m[2][2] == doctest::Approx(-(1.0 + 0.03 - 0.002)));
  CHECK(g.m[3][3] == doctest::Approx(-1.2));

  SpacetimePoint outside;
  outside.x = {0.8, 0.0, 0.0, 0.0};
  CHECK_FALSE(model.admissible(outside));

  CHECK(model.has_domain_box);
  const Box box = default_sampling_box(model);
  CHECK(box[0][0] == -0.5);
  CHECK(box[0][1] == 0.5);
}

TEST_CASE("diag_poly rejects non-positive factors") {
  ModelParams params = diag_poly_params();
  // x0 changes sign inside the box
  params.poly[0].terms = {{0.0, {0, 0, 0, 0}}, {1.0, {1, 0, 0, 0}}};
  CHECK_THROWS_AS(make_builtin_spacetime("diag_poly", params), InvalidParam);

  ModelParams missing;
  missing.box = diag_poly_params().box;
  CHECK_THROWS_AS(make_builtin_spacetime("diag_poly", missing), InvalidParam);
}

TEST_CASE("point sampling is deterministic and admissible") {
  const SpacetimeModel model =
      make_builtin_spacetime("schwarzschild", schwarzschild_params(1.0));
  const Box box = default_sampling_box(model);
  const auto pts1 = sample_points(model, box, 25, 42);
  const auto pts2 = sample_points(model, box, 25, 42);
  REQUIRE(pts1.size() == 25);
  for (std::size_t k = 0; k < pts1.size(); ++k)
    for (int c = 0; c < 4; ++c) CHECK(pts1[k].x[c] == pts2[k].x[c]);
  for (const SpacetimePoint& p : pts1) {
    CHECK(model.admissible(p));
    for (int c = 0; c < 4; ++c) {
      CHECK(p.x[c] > box[c][0]);
      CHECK(p.x[c] < box[c][1]);
    }
  }

  const auto other = sample_points(model, box, 25, 43);
  bool differs = false;
  for (std::size_t k = 0; k < other.size(); ++k)
    if (other[k].x[0] != pts1[k].x[0]) differs = true;
  CHECK(differs);
}

TEST_CASE("sampling an empty chart region fails") {
  const SpacetimeModel model =
      make_builtin_spacetime("schwarzschild", schwarzschild_params(1.0));
  Box inside_horizon = {{{-1, 1}, {0.1, 0.9}, {0.4, 2.7}, {-3, 3}}};
  CHECK_THROWS_AS(sample_points(model, inside_horizon, 2, 1), DomainError);
}

TEST_CASE("singular metric inversion is reported") {
  SpacetimeModel model = make_builtin_spacetime("minkowski", ModelParams{});
  model.metric_fn = [](const SpacetimePoint&) { return Mat4d{}; };
  SpacetimePoint p;
  CHECK_THROWS_AS(inverse_metric(model, p), SingularMetric);
}
