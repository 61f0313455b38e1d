#include "spinconn/curvature.hpp"

#include <algorithm>

namespace spinconn {

namespace {

// The curvature assembly differentiates quantities that are themselves
// finite-difference results.  A wider outer step keeps the inner truncation
// error from being amplified by the outer division.
DerivativeScheme outer_scheme(const DerivativeScheme& scheme) {
  DerivativeScheme outer = scheme;
  outer.step = scheme.step * 10.0;
  return outer;
}

Vec4 frame_vector(const Mat4d& E, int i) {
  return {E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
}

}  // namespace

Ten4d riemann_frame(const SpacetimeModel& model, const FrameField& frame,
                    const SpacetimePoint& p, const DerivativeScheme& scheme) {
  const Mat4d E = frame.components(p);
  const Ten3d chris = christoffel_frame(model, frame, p, scheme);
  const StructureConstants sc = structure_constants(frame, model, p, scheme);
  const DerivativeScheme outer = outer_scheme(scheme);

  std::array<Ten3d, 4> dG;
  for (int i = 0; i < 4; ++i)
    dG[i] = directional_derivative(
        [&model, &frame, &scheme](const SpacetimePoint& q) {
          return christoffel_frame(model, frame, q, scheme);
        },
        frame_vector(E, i), p, outer);

  Ten4d out{};
  for (int pp = 0; pp < 4; ++pp)
    for (int q = 0; q < 4; ++q)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          double val = dG[i].t[pp][j][q] - dG[j].t[pp][i][q];
          for (int h = 0; h < 4; ++h)
            val += chris.t[pp][i][h] * chris.t[h][j][q] -
                   chris.t[pp][j][h] * chris.t[h][i][q];
          for (int k = 0; k < 4; ++k)
            val -= sc.c.t[k][i][j] * chris.t[pp][k][q];
          out.t[pp][q][i][j] = val;
          out.t[pp][q][j][i] = -val;
        }
  return out;
}

Ten4c spinor_curvature(const SpacetimeModel& model, const FrameField& frame,
                       const SpinorData& data, SpinVariant variant,
                       const SpacetimePoint& p, const DerivativeScheme& scheme,
                       bool conjugated) {
  const Mat4d E = frame.components(p);
  const StructureConstants sc = structure_constants(frame, model, p, scheme);
  const DerivativeScheme outer = outer_scheme(scheme);

  auto A_at = [&model, &frame, &data, variant, &scheme,
               conjugated](const SpacetimePoint& q) {
    const Ten3c A = spin_connection_general(model, frame, data, variant, q,
                                            scheme);
    return conjugated ? conjugate_connection(A) : A;
  };

  const Ten3c A0 = A_at(p);
  std::array<Ten3c, 4> dA;
  for (int i = 0; i < 4; ++i)
    dA[i] = directional_derivative(A_at, frame_vector(E, i), p, outer);

  Ten4c out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          cplx val = dA[i].t[a][j][b] - dA[j].t[a][i][b];
          for (int h = 0; h < 4; ++h)
            val += A0.t[a][i][h] * A0.t[h][j][b] -
                   A0.t[a][j][h] * A0.t[h][i][b];
          for (int k = 0; k < 4; ++k)
            val -= sc.c.t[k][i][j] * A0.t[a][k][b];
          out.t[a][b][i][j] = val;
          out.t[a][b][j][i] = -val;
        }
  return out;
}

CurvatureAt curvature_at(const SpacetimeModel& model, const FrameField& frame,
                         const SpinorData& data, SpinVariant variant,
                         const SpacetimePoint& p,
                         const DerivativeScheme& scheme) {
  CurvatureAt out;
  out.riemann = riemann_frame(model, frame, p, scheme);
  out.spin = spinor_curvature(model, frame, data, variant, p, scheme, false);
  return out;
}

double curvature_relation_residual(const Ten4d& riemann, const Ten4c& spin,
                                   const GammaSet& gamma, const Mat4d& g_inv) {
  Mat4c products[4][4];
  for (int r = 0; r < 4; ++r)
    for (int n = 0; n < 4; ++n) products[r][n] = matmul(gamma[r], gamma[n]);

  double worst = 0.0;
  for (int pp = 0; pp < 4; ++pp)
    for (int q = 0; q < 4; ++q)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          cplx rhs = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
              if (g_inv.m[m][n] == 0.0) continue;
              for (int r = 0; r < 4; ++r)
                rhs += riemann.t[r][m][i][j] * g_inv.m[m][n] *
                       products[r][n].m[pp][q];
            }
          rhs *= 0.25;
          worst = std::max(worst, std::abs(spin.t[pp][q][i][j] - rhs));
        }
  return worst;
}

}  // namespace spinconn
