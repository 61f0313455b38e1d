#include "spinconn/spinor_algebra.hpp"

#include <random>

namespace spinconn {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat4c from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  Mat4c r;
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const cplx& v : row) r.m[i][j++] = v;
    ++i;
  }
  return r;
}

// Projector sandwiches used by the decorated blocks; the route checks in
// the public functions guard these against inconsistent inputs.
Mat4c sandwich_lo(const Mat4c& d_lo, const Mat4c& proj) {
  return matmul(transpose(proj), matmul(d_lo, proj));
}

Mat4c sandwich_hi(const Mat4c& d_hi, const Mat4c& proj) {
  return matmul(proj, matmul(d_hi, transpose(proj)));
}

Mat4c sandwich_gamma(const Mat4c& gamma_k, const Mat4c& left,
                     const Mat4c& right) {
  return matmul(left, matmul(gamma_k, right));
}

}  // namespace

CanonicalConstants canonical_constants() {
  CanonicalConstants c;
  c.g.m[0][0] = 1.0;
  c.g.m[1][1] = -1.0;
  c.g.m[2][2] = -1.0;
  c.g.m[3][3] = -1.0;

  c.d_lo = from_rows({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  if (!invert4(c.d_lo, c.d_hi))
    throw InconsistentAlgebra("canonical spinor metric not invertible");

  c.H = from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
  c.D = from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});

  c.gamma[0] =
      from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  c.gamma[1] =
      from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}});
  c.gamma[2] = from_rows(
      {{0, 0, 0, -kI}, {0, 0, kI, 0}, {0, kI, 0, 0}, {-kI, 0, 0, 0}});
  c.gamma[3] =
      from_rows({{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}});
  return c;
}

ChiralityProjectors chirality_projectors(const Mat4c& H) {
  if (max_abs(matmul(H, H) - identity4c()) > 1e-12)
    throw NotInvolutive("chirality operator does not square to the identity");
  ChiralityProjectors p;
  p.bul = 0.5 * (identity4c() + H);
  p.circ = 0.5 * (identity4c() - H);
  return p;
}

DecoratedMetric decorated_metric(const Mat4c& d_lo, const Mat4c& d_hi,
                                 const Mat4c& H) {
  const ChiralityProjectors proj = chirality_projectors(H);
  DecoratedMetric out;
  out.bul_lo = sandwich_lo(d_lo, proj.bul);
  out.circ_lo = sandwich_lo(d_lo, proj.circ);
  out.bul_hi = sandwich_hi(d_hi, proj.bul);
  out.circ_hi = sandwich_hi(d_hi, proj.circ);

  // The sandwich must agree with both one-sided projections; a mismatch
  // means d and H do not satisfy the expected commutation relations.
  const struct {
    const Mat4c& sandwich;
    Mat4c one_sided_a, one_sided_b;
  } routes[] = {
      {out.bul_lo, matmul(d_lo, proj.bul), matmul(transpose(proj.bul), d_lo)},
      {out.circ_lo, matmul(d_lo, proj.circ),
       matmul(transpose(proj.circ), d_lo)},
      {out.bul_hi, matmul(d_hi, transpose(proj.bul)), matmul(proj.bul, d_hi)},
      {out.circ_hi, matmul(d_hi, transpose(proj.circ)),
       matmul(proj.circ, d_hi)},
  };
  for (const auto& r : routes)
    if (max_abs(r.sandwich - r.one_sided_a) > 1e-12 ||
        max_abs(r.sandwich - r.one_sided_b) > 1e-12)
      throw InconsistentAlgebra(
          "spinor metric does not commute with the chirality projectors");
  return out;
}

DecoratedGamma decorated_gamma(const GammaSet& gamma, const Mat4c& H) {
  const ChiralityProjectors proj = chirality_projectors(H);
  DecoratedGamma out;
  for (int k = 0; k < 4; ++k) {
    out.circ_bul[k] = sandwich_gamma(gamma[k], proj.circ, proj.bul);
    out.bul_circ[k] = sandwich_gamma(gamma[k], proj.bul, proj.circ);
    const Mat4c cb_right = matmul(gamma[k], proj.bul);
    const Mat4c cb_left = matmul(proj.circ, gamma[k]);
    const Mat4c bc_right = matmul(gamma[k], proj.circ);
    const Mat4c bc_left = matmul(proj.bul, gamma[k]);
    if (max_abs(out.circ_bul[k] - cb_right) > 1e-12 ||
        max_abs(out.circ_bul[k] - cb_left) > 1e-12 ||
        max_abs(out.bul_circ[k] - bc_right) > 1e-12 ||
        max_abs(out.bul_circ[k] - bc_left) > 1e-12)
      throw InconsistentAlgebra(
          "gamma operators do not anticommute with the chirality operator");
  }
  return out;
}

double gamma_identity_residual(const GammaSet& gamma, const Mat4d& g_inv,
                               const Mat4c& d_lo, const Mat4c& d_hi,
                               const Mat4c& H) {
  double worst = 0.0;
  for (int d = 0; d < 4; ++d)
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
          cplx lhs = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
              lhs += gamma[m].m[d][b] * g_inv.m[m][n] * gamma[n].m[a][c];
          cplx rhs = 0.0;
          if (d == c && a == b) rhs += 1.0;
          rhs -= H.m[d][c] * H.m[a][b];
          rhs += d_hi.m[d][a] * d_lo.m[b][c];
          cplx last = 0.0;
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s)
              last += H.m[d][r] * d_hi.m[r][a] * d_lo.m[b][s] * H.m[s][c];
          rhs -= last;
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

SpinorData canonical_data(const SpacetimeModel& model, const FrameField& frame) {
  const CanonicalConstants cc = canonical_constants();
  SpinorData data;
  data.constant_components =
      frame.kind == FrameField::Kind::tetrad ||
      (model.constant_metric && frame.kind == FrameField::Kind::holonomic);

  const bool gamma_is_canonical = frame.kind == FrameField::Kind::tetrad;
  if (gamma_is_canonical) {
    data.eval = [cc](const SpacetimePoint&) {
      return SpinorDataValues{cc.d_lo, cc.d_hi, cc.H, cc.D, cc.gamma};
    };
    return data;
  }

  // In a non-orthonormal frame the spinor-space constants stay canonical
  // while the gamma components follow the frame: each frame vector is
  // expanded through the tetrad and the expansion matrix re-mixes the
  // spacial gamma index.
  const FrameField tetrad = orthonormal_tetrad(model);
  auto frame_components = frame.components;
  auto tetrad_components = tetrad.components;
  const std::string model_name = model.name;
  data.eval = [cc, frame_components, tetrad_components,
               model_name](const SpacetimePoint& p) {
    const Mat4d E = frame_components(p);
    const Mat4d Et = tetrad_components(p);
    Mat4d Et_inv;
    if (!invert4(Et, Et_inv))
      throw DegenerateFrame(model_name + ": tetrad not invertible");
    const Mat4d M = matmul(Et_inv, E);
    SpinorDataValues vals{cc.d_lo, cc.d_hi, cc.H, cc.D, {}};
    for (int i = 0; i < 4; ++i) {
      Mat4c acc;
      for (int k = 0; k < 4; ++k) acc = acc + M.m[k][i] * cc.gamma[k];
      vals.gamma[i] = acc;
    }
    return vals;
  };
  return data;
}

GaugeField make_random_gauge(const Box& box, std::uint64_t seed, int degree,
                             double amplitude) {
  if (degree < 0 || degree > 4)
    throw InvalidParam("gauge: polynomial degree must be between 0 and 4");
  if (!(amplitude > 0.0))
    throw InvalidParam("gauge: amplitude must be positive");
  Vec4 center, halfw;
  for (int k = 0; k < 4; ++k) {
    center[k] = 0.5 * (box[k][0] + box[k][1]);
    halfw[k] = 0.5 * (box[k][1] - box[k][0]);
    if (!(halfw[k] > 0.0))
      throw InvalidParam("gauge: box must have positive extent");
  }

  // Fixed traceless generator directions: rotations inside each chirality
  // block, block-mixing parts, and an imaginary diagonal.  exp of any real
  // combination is invertible with unit determinant.
  std::array<Mat4c, 6> basis{};
  basis[0].m[0][1] = 1.0;
  basis[0].m[1][0] = -1.0;
  basis[1].m[0][1] = kI;
  basis[1].m[1][0] = kI;
  basis[2].m[2][3] = 1.0;
  basis[2].m[3][2] = -1.0;
  basis[3].m[0][2] = 1.0;
  basis[3].m[2][0] = -1.0;
  basis[3].m[1][3] = 1.0;
  basis[3].m[3][1] = -1.0;
  basis[4].m[0][2] = kI;
  basis[4].m[2][0] = kI;
  basis[4].m[1][3] = -kI;
  basis[4].m[3][1] = -kI;
  basis[5].m[0][0] = kI;
  basis[5].m[1][1] = -kI;
  basis[5].m[2][2] = -kI;
  basis[5].m[3][3] = kI;

  // Monomial exponents of total degree <= degree, in degree-then-lex
  // order so the coefficient draw is reproducible.
  std::vector<std::array<int, 4>> monomials;
  for (int total = 0; total <= degree; ++total)
    for (int e0 = total; e0 >= 0; --e0)
      for (int e1 = total - e0; e1 >= 0; --e1)
        for (int e2 = total - e0 - e1; e2 >= 0; --e2) {
          const int e3 = total - e0 - e1 - e2;
          monomials.push_back({e0, e1, e2, e3});
        }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  const double scale = amplitude / static_cast<double>(monomials.size());
  std::array<std::vector<double>, 6> coeffs;
  for (int j = 0; j < 6; ++j) {
    coeffs[j].reserve(monomials.size());
    for (std::size_t m = 0; m < monomials.size(); ++m)
      coeffs[j].push_back(scale * (2.0 * uniform() - 1.0));
  }

  auto generator = [basis, monomials, coeffs, center,
                    halfw](const SpacetimePoint& p) {
    Vec4 u;
    for (int k = 0; k < 4; ++k) u[k] = (p.x[k] - center[k]) / halfw[k];
    Mat4c X;
    for (int j = 0; j < 6; ++j) {
      double f = 0.0;
      for (std::size_t m = 0; m < monomials.size(); ++m) {
        double v = coeffs[j][m];
        for (int k = 0; k < 4; ++k)
          for (int e = 0; e < monomials[m][k]; ++e) v *= u[k];
        f += v;
      }
      X = X + f * basis[j];
    }
    return X;
  };

  GaugeField gf;
  gf.S = [generator](const SpacetimePoint& p) { return expm(generator(p)); };
  gf.S_inv = [generator](const SpacetimePoint& p) {
    return expm(-1.0 * generator(p));
  };
  return gf;
}

SpinorData gauged_data(const SpinorData& base, const GaugeField& gauge) {
  auto base_eval = base.eval;
  auto S_fn = gauge.S;
  auto S_inv_fn = gauge.S_inv;
  SpinorData out;
  out.constant_components = false;
  out.eval = [base_eval, S_fn, S_inv_fn](const SpacetimePoint& p) {
    const SpinorDataValues vals = base_eval(p);
    const Mat4c S = S_fn(p);
    const Mat4c S_inv = S_inv_fn(p);
    SpinorDataValues out_vals;
    out_vals.d_lo = matmul(transpose(S), matmul(vals.d_lo, S));
    if (!invert4(out_vals.d_lo, out_vals.d_hi))
      throw SingularGauge("gauged spinor metric not invertible");
    out_vals.H = matmul(S_inv, matmul(vals.H, S));
    out_vals.D = matmul(transpose(S), matmul(vals.D, conjugate(S)));
    for (int k = 0; k < 4; ++k)
      out_vals.gamma[k] = matmul(S_inv, matmul(vals.gamma[k], S));
    return out_vals;
  };
  return out;
}

Mat4c chirality_derivative(const FrameField& frame, const SpinorData& data,
                           const SpacetimeModel& model, int i,
                           const SpacetimePoint& p,
                           const DerivativeScheme& scheme) {
  if (i < 0 || i > 3)
    throw InvalidParam("chirality_derivative: direction index out of range");
  const Mat4d E = frame.components(p);
  Vec4 v;
  for (int n = 0; n < 4; ++n) v[n] = E.m[n][i];

  const SpinorDataValues vals = data.eval(p);
  auto eval = data.eval;

  const Mat4c d_dlo = directional_derivative(
      [eval](const SpacetimePoint& q) { return eval(q).d_lo; }, v, p, scheme);

  // Derivative of the literal product d^{c alpha} d_{beta d}.
  const Ten4c d_theta = directional_derivative(
      [eval](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        Ten4c theta;
        for (int c = 0; c < 4; ++c)
          for (int alpha = 0; alpha < 4; ++alpha)
            for (int beta = 0; beta < 4; ++beta)
              for (int d = 0; d < 4; ++d)
                theta.t[c][alpha][beta][d] =
                    w.d_hi.m[c][alpha] * w.d_lo.m[beta][d];
        return theta;
      },
      v, p, scheme);

  // Derivative of the literal contraction
  // sum_{m,n} gamma^c_{beta n} g^{nm} gamma^alpha_{d m}.
  const Ten4c d_psi = directional_derivative(
      [eval, &frame, &model](const SpacetimePoint& q) {
        const SpinorDataValues w = eval(q);
        const Mat4d ginv = frame_metric_inverse(model, frame, q);
        Ten4c psi;
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d)
            for (int beta = 0; beta < 4; ++beta)
              for (int alpha = 0; alpha < 4; ++alpha) {
                cplx s = 0.0;
                for (int m = 0; m < 4; ++m)
                  for (int n = 0; n < 4; ++n)
                    s += w.gamma[n].m[c][beta] * ginv.m[n][m] *
                         w.gamma[m].m[alpha][d];
                psi.t[c][d][beta][alpha] = s;
              }
        return psi;
      },
      v, p, scheme);

  const Mat4c term1 = matmul(vals.H, matmul(vals.d_hi, d_dlo));
  const Mat4c term2 = matmul(vals.d_hi, matmul(d_dlo, vals.H));
  Mat4c term3, term4;
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      cplx s3 = 0.0, s4 = 0.0;
      for (int alpha = 0; alpha < 4; ++alpha)
        for (int beta = 0; beta < 4; ++beta) {
          s3 += d_theta.t[c][alpha][beta][d] * vals.H.m[beta][alpha];
          s4 += d_psi.t[c][d][beta][alpha] * vals.H.m[beta][alpha];
        }
      term3.m[c][d] = s3;
      term4.m[c][d] = s4;
    }

  return (1.0 / 6.0) * (term1 - term2 + term3 - term4);
}

}  // namespace spinconn
