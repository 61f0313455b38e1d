#include "spinconn/frames.hpp"

namespace spinconn {

FrameField coordinate_frame(const SpacetimeModel& model) {
  (void)model;
  FrameField f;
  f.kind = FrameField::Kind::holonomic;
  f.components = [](const SpacetimePoint&) { return identity4d(); };
  return f;
}

FrameField orthonormal_tetrad(const SpacetimeModel& model) {
  FrameField f;
  f.kind = FrameField::Kind::tetrad;
  f.components = [model](const SpacetimePoint& p) {
    const Mat4d g = model.metric(p);
    // Columns of E are the frame vectors; start from the coordinate basis
    // and orthogonalize in order with signs (+,-,-,-).
    double e[4][4] = {};
    for (int i = 0; i < 4; ++i) e[i][i] = 1.0;

    auto inner = [&g](const double a[4], const double b[4]) {
      double s = 0.0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) s += a[m] * g.m[m][n] * b[n];
      return s;
    };

    double cols[4][4];
    for (int i = 0; i < 4; ++i) {
      double v[4];
      for (int n = 0; n < 4; ++n) v[n] = e[n][i];
      for (int j = 0; j < i; ++j) {
        const double sign = (j == 0) ? 1.0 : -1.0;
        const double proj = sign * inner(v, cols[j]);
        for (int n = 0; n < 4; ++n) v[n] -= proj * cols[j][n];
      }
      const double expected = (i == 0) ? 1.0 : -1.0;
      const double q = inner(v, v);
      if (!(expected * q > 1e-10))
        throw DegenerateFrame(
            model.name + ": metric signature defect during orthonormalization");
      const double scale = 1.0 / std::sqrt(expected * q);
      for (int n = 0; n < 4; ++n) cols[i][n] = scale * v[n];
    }

    if (cols[0][0] < 0.0)
      for (int n = 0; n < 4; ++n) cols[0][n] = -cols[0][n];

    Mat4d E;
    for (int i = 0; i < 4; ++i)
      for (int n = 0; n < 4; ++n) E.m[n][i] = cols[i][n];
    if (det4(E) < 0.0)
      for (int n = 0; n < 4; ++n) E.m[n][3] = -E.m[n][3];
    return E;
  };
  return f;
}

FrameField custom_frame(const std::array<Poly, 16>& entries) {
  FrameField f;
  f.kind = FrameField::Kind::custom;
  f.components = [entries](const SpacetimePoint& p) {
    Mat4d E;
    for (int n = 0; n < 4; ++n)
      for (int i = 0; i < 4; ++i) E.m[n][i] = entries[n * 4 + i].eval(p.x);
    return E;
  };
  return f;
}

StructureConstants structure_constants(const FrameField& frame,
                                       const SpacetimeModel& model,
                                       const SpacetimePoint& p,
                                       const DerivativeScheme& scheme) {
  StructureConstants out;
  if (frame.kind == FrameField::Kind::holonomic) return out;

  const Mat4d E = frame.components(p);
  Mat4d E_inv;
  if (!invert4(E, E_inv))
    throw DegenerateFrame(model.name + ": frame not invertible");

  // dE[i] holds the derivative of the component matrix along frame vector
  // i, so dE[i].m[m][j] is the i-derivative of E^m_j.
  Mat4d dE[4];
  for (int i = 0; i < 4; ++i) {
    Vec4 v;
    for (int n = 0; n < 4; ++n) v[n] = E.m[n][i];
    dE[i] = directional_derivative(
        [&frame](const SpacetimePoint& q) { return frame.components(q); }, v,
        p, scheme);
  }

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double comm[4];
      for (int m = 0; m < 4; ++m) comm[m] = dE[i].m[m][j] - dE[j].m[m][i];
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int m = 0; m < 4; ++m) s += E_inv.m[k][m] * comm[m];
        out.c.t[k][i][j] = s;
        out.c.t[k][j][i] = -s;
      }
    }
  return out;
}

Mat4d frame_metric_components(const SpacetimeModel& model,
                              const FrameField& frame,
                              const SpacetimePoint& p) {
  const Mat4d g = model.metric(p);
  if (frame.kind == FrameField::Kind::holonomic) return g;
  const Mat4d E = frame.components(p);
  Mat4d r = matmul(transpose(E), matmul(g, E));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double avg = 0.5 * (r.m[i][j] + r.m[j][i]);
      r.m[i][j] = avg;
      r.m[j][i] = avg;
    }
  return r;
}

Mat4d frame_metric_inverse(const SpacetimeModel& model, const FrameField& frame,
                           const SpacetimePoint& p) {
  const Mat4d g = frame_metric_components(model, frame, p);
  Mat4d inv;
  if (!invert4(g, inv))
    throw SingularMetric(model.name + ": frame metric not invertible");
  return inv;
}

}  // namespace spinconn
