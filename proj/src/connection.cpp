#include "spinconn/connection.hpp"

namespace spinconn {

namespace {

Vec4 frame_vector(const Mat4d& E, int i) {
  return {E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
}

Mat4c bullet_projector(const Mat4c& H) {
  return 0.5 * (identity4c() + H);
}

Mat4c circle_projector(const Mat4c& H) {
  return 0.5 * (identity4c() - H);
}

// gamma contracted with the inverse frame metric on the spacial index:
// G[n] = sum_m g^{mn} gamma_m, evaluated pointwise for differentiation.
GammaSet metric_weighted_gamma(const SpinorDataValues& vals,
                               const Mat4d& ginv) {
  GammaSet G{};
  for (int n = 0; n < 4; ++n) {
    Mat4c acc;
    for (int m = 0; m < 4; ++m) acc = acc + ginv.m[m][n] * vals.gamma[m];
    G[n] = acc;
  }
  return G;
}

struct GeneralContext {
  const SpacetimeModel& model;
  const FrameField& frame;
  const std::function<SpinorDataValues(const SpacetimePoint&)>& eval;
  const SpinorDataValues& vals;
  const ChiralityProjectors& proj;
  const Mat4d& ginv;
  const Ten3d& chris;
  const SpacetimePoint& p;
  const DerivativeScheme& scheme;
};

// Gamma-derivative and Christoffel terms shared by the projector and
// trace-reduced formulas.
Mat4c shared_gamma_terms(const GeneralContext& ctx, int i, const Vec4& v) {
  const GammaSet dG = directional_derivative(
      [&ctx](const SpacetimePoint& q) {
        const SpinorDataValues w = ctx.eval(q);
        return metric_weighted_gamma(
            w, frame_metric_inverse(ctx.model, ctx.frame, q));
      },
      v, ctx.p, ctx.scheme);

  Mat4c deriv_term;
  for (int n = 0; n < 4; ++n)
    deriv_term = deriv_term + matmul(ctx.vals.gamma[n], dG[n]);

  Mat4c chris_term;
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      double coef = 0.0;
      for (int s = 0; s < 4; ++s)
        coef += ctx.chris.t[n][i][s] * ctx.ginv.m[m][s];
      if (coef != 0.0)
        chris_term =
            chris_term + coef * matmul(ctx.vals.gamma[n], ctx.vals.gamma[m]);
    }

  return 0.25 * (deriv_term + chris_term);
}

Mat4c slice_decorated(const GeneralContext& ctx, int i, const Vec4& v) {
  const auto& eval = ctx.eval;
  const Mat4c d_bul_lo = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        const Mat4c Pb = bullet_projector(w.H);
        return matmul(transpose(Pb), matmul(w.d_lo, Pb));
      },
      v, ctx.p, ctx.scheme);
  const Mat4c d_circ_lo = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        const Mat4c Pc = circle_projector(w.H);
        return matmul(transpose(Pc), matmul(w.d_lo, Pc));
      },
      v, ctx.p, ctx.scheme);
  const GammaSet d_bul_circ = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        const Mat4c Pb = bullet_projector(w.H);
        const Mat4c Pc = circle_projector(w.H);
        GammaSet out{};
        for (int k = 0; k < 4; ++k)
          out[k] = matmul(Pb, matmul(w.gamma[k], Pc));
        return out;
      },
      v, ctx.p, ctx.scheme);
  const GammaSet d_circ_bul = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        const Mat4c Pb = bullet_projector(w.H);
        const Mat4c Pc = circle_projector(w.H);
        GammaSet out{};
        for (int k = 0; k < 4; ++k)
          out[k] = matmul(Pc, matmul(w.gamma[k], Pb));
        return out;
      },
      v, ctx.p, ctx.scheme);

  const DecoratedMetric dec_d =
      decorated_metric(ctx.vals.d_lo, ctx.vals.d_hi, ctx.vals.H);
  const DecoratedGamma dec_g = decorated_gamma(ctx.vals.gamma, ctx.vals.H);

  const cplx s_bul = trace(matmul(d_bul_lo, dec_d.bul_hi));
  const cplx s_circ = trace(matmul(d_circ_lo, dec_d.circ_hi));
  const Mat4c term1 = s_bul * ctx.proj.circ + s_circ * ctx.proj.bul;

  Mat4c term2;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const double w = ctx.ginv.m[m][n];
      if (w == 0.0) continue;
      term2 = term2 + w * (matmul(dec_g.circ_bul[n], d_bul_circ[m]) +
                           matmul(dec_g.bul_circ[n], d_circ_bul[m]));
    }

  Mat4c term3;
  for (int r = 0; r < 4; ++r)
    for (int m = 0; m < 4; ++m) {
      const double gc = ctx.chris.t[r][i][m];
      if (gc == 0.0) continue;
      for (int n = 0; n < 4; ++n) {
        const double coef = gc * ctx.ginv.m[m][n];
        if (coef == 0.0) continue;
        term3 =
            term3 + coef * (matmul(dec_g.circ_bul[n], dec_g.bul_circ[r]) +
                            matmul(dec_g.bul_circ[n], dec_g.circ_bul[r]));
      }
    }

  return 0.25 * (term1 + term2 - term3);
}

Mat4c slice_projector(const GeneralContext& ctx, int i, const Vec4& v) {
  const auto& eval = ctx.eval;
  const Mat4c d_dlo = directional_derivative(
      [&eval](const SpacetimePoint& q) { return eval(q).d_lo; }, v, ctx.p,
      ctx.scheme);
  const Mat4c d_Pb = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        return bullet_projector(eval(q).H);
      },
      v, ctx.p, ctx.scheme);
  const Mat4c d_Pc = directional_derivative(
      [&eval](const SpacetimePoint& q) {
        return circle_projector(eval(q).H);
      },
      v, ctx.p, ctx.scheme);

  cplx s_bul = 0.0, s_circ = 0.0;
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta)
      for (int d = 0; d < 4; ++d) {
        const cplx base = d_dlo.m[alpha][beta] * ctx.vals.d_hi.m[beta][d];
        s_bul += base * ctx.proj.bul.m[alpha][d];
        s_circ += base * ctx.proj.circ.m[alpha][d];
      }
  const Mat4c term1 =
      0.25 * (s_bul * ctx.proj.circ + s_circ * ctx.proj.bul);

  const Mat4c term2 =
      0.5 * transpose(matmul(
                ctx.vals.d_lo,
                matmul(d_Pb, matmul(ctx.proj.circ, ctx.vals.d_hi))));
  const Mat4c term3 =
      0.5 * transpose(matmul(
                ctx.vals.d_lo,
                matmul(d_Pc, matmul(ctx.proj.bul, ctx.vals.d_hi))));

  return term1 + term2 + term3 + shared_gamma_terms(ctx, i, v);
}

Mat4c slice_compact(const GeneralContext& ctx, int i, const Vec4& v) {
  const auto& eval = ctx.eval;
  const Mat4c d_dlo = directional_derivative(
      [&eval](const SpacetimePoint& q) { return eval(q).d_lo; }, v, ctx.p,
      ctx.scheme);
  const Mat4c d_H = directional_derivative(
      [&eval](const SpacetimePoint& q) { return eval(q).H; }, v, ctx.p,
      ctx.scheme);

  const cplx full_trace = trace(matmul(d_dlo, ctx.vals.d_hi));
  cplx h_weighted = 0.0;
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta)
      for (int d = 0; d < 4; ++d)
        h_weighted += d_dlo.m[alpha][beta] * ctx.vals.d_hi.m[beta][d] *
                      ctx.vals.H.m[alpha][d];

  const Mat4c term1 = (0.125 * full_trace) * identity4c();
  const Mat4c term2 = (-0.125 * h_weighted) * ctx.vals.H;
  const Mat4c term3 =
      -0.25 *
      transpose(matmul(ctx.vals.d_lo,
                       matmul(d_H, matmul(ctx.vals.H, ctx.vals.d_hi))));

  return term1 + term2 + term3 + shared_gamma_terms(ctx, i, v);
}

}  // namespace

Ten3d christoffel_holonomic(const SpacetimeModel& model,
                            const SpacetimePoint& p,
                            const DerivativeScheme& scheme) {
  Ten3d out;
  if (model.constant_metric) return out;
  const Mat4d ginv = inverse_metric(model, p);
  Mat4d dg[4];
  for (int n = 0; n < 4; ++n) {
    Vec4 axis{};
    axis[n] = 1.0;
    dg[n] = directional_derivative(
        [&model](const SpacetimePoint& q) { return model.metric(q); }, axis,
        p, scheme);
  }
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r)
          s += 0.5 * ginv.m[k][r] *
               (dg[i].m[r][j] + dg[j].m[i][r] - dg[r].m[i][j]);
        out.t[k][i][j] = s;
      }
  return out;
}

Ten3d christoffel_frame(const SpacetimeModel& model, const FrameField& frame,
                        const SpacetimePoint& p,
                        const DerivativeScheme& scheme) {
  const Mat4d E = frame.components(p);
  const Mat4d gf = frame_metric_components(model, frame, p);
  Mat4d ginv;
  if (!invert4(gf, ginv))
    throw SingularMetric(model.name + ": frame metric not invertible");
  const StructureConstants sc = structure_constants(frame, model, p, scheme);

  Mat4d dg[4];
  for (int i = 0; i < 4; ++i) {
    dg[i] = directional_derivative(
        [&model, &frame](const SpacetimePoint& q) {
          return frame_metric_components(model, frame, q);
        },
        frame_vector(E, i), p, scheme);
  }

  Ten3d out;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r)
          s += 0.5 * ginv.m[k][r] *
               (dg[i].m[r][j] + dg[j].m[i][r] - dg[r].m[i][j]);
        s += 0.5 * sc.c.t[k][i][j];
        for (int r = 0; r < 4; ++r)
          for (int u = 0; u < 4; ++u)
            s -= 0.5 * ginv.m[k][r] *
                 (sc.c.t[u][i][r] * gf.m[u][j] + sc.c.t[u][j][r] * gf.m[u][i]);
        out.t[k][i][j] = s;
      }
  return out;
}

Ten3c spin_connection_special(const Ten3d& christoffel, const GammaSet& gamma,
                              const Mat4d& g_inv) {
  Mat4c products[4][4];
  for (int r = 0; r < 4; ++r)
    for (int n = 0; n < 4; ++n) products[r][n] = matmul(gamma[r], gamma[n]);

  Ten3c out;
  for (int i = 0; i < 4; ++i) {
    Mat4c acc;
    for (int r = 0; r < 4; ++r)
      for (int m = 0; m < 4; ++m) {
        const double gc = christoffel.t[r][i][m];
        if (gc == 0.0) continue;
        for (int n = 0; n < 4; ++n) {
          const double coef = gc * g_inv.m[m][n];
          if (coef == 0.0) continue;
          acc = acc + coef * products[r][n];
        }
      }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out.t[a][i][b] = 0.25 * acc.m[a][b];
  }
  return out;
}

Ten3c spin_connection_general(const SpacetimeModel& model,
                              const FrameField& frame, const SpinorData& data,
                              SpinVariant variant, const SpacetimePoint& p,
                              const DerivativeScheme& scheme) {
  const Mat4d E = frame.components(p);
  const SpinorDataValues vals = data.eval(p);
  const Mat4d ginv = frame_metric_inverse(model, frame, p);
  const Ten3d chris = christoffel_frame(model, frame, p, scheme);
  const ChiralityProjectors proj = chirality_projectors(vals.H);

  const GeneralContext ctx{model, frame, data.eval, vals, proj,
                           ginv,  chris, p,         scheme};

  Ten3c out;
  for (int i = 0; i < 4; ++i) {
    const Vec4 v = frame_vector(E, i);
    Mat4c Ai;
    switch (variant) {
      case SpinVariant::decorated:
        Ai = slice_decorated(ctx, i, v);
        break;
      case SpinVariant::projector:
        Ai = slice_projector(ctx, i, v);
        break;
      case SpinVariant::compact:
        Ai = slice_compact(ctx, i, v);
        break;
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out.t[a][i][b] = Ai.m[a][b];
  }
  return out;
}

Ten3c conjugate_connection(const Ten3c& A) {
  Ten3c out;
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int b = 0; b < 4; ++b) out.t[a][i][b] = std::conj(A.t[a][i][b]);
  return out;
}

double torsion_defect(const SpacetimeModel& model, const FrameField& frame,
                      const SpacetimePoint& p, const DerivativeScheme& scheme) {
  const Ten3d chris = christoffel_frame(model, frame, p, scheme);
  const StructureConstants sc = structure_constants(frame, model, p, scheme);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::fabs(chris.t[k][i][j] -
                                          chris.t[k][j][i] - sc.c.t[k][i][j]));
  return worst;
}

ConnectionAt connection_at(const SpacetimeModel& model, const FrameField& frame,
                           const SpinorData& data, SpinVariant variant,
                           const SpacetimePoint& p,
                           const DerivativeScheme& scheme) {
  ConnectionAt out;
  out.christoffel = christoffel_frame(model, frame, p, scheme);
  out.spin = spin_connection_general(model, frame, data, variant, p, scheme);
  return out;
}

}  // namespace spinconn
