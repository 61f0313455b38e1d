#include "spinconn/covariant.hpp"

#include <random>

namespace spinconn {

namespace {

void validate_type(const SpinTensorType& type) {
  if (type.r < 0 || type.s < 0 || type.rbar < 0 || type.sbar < 0 ||
      type.p < 0 || type.q < 0)
    throw InvalidParam("spin tensor type: negative index count");
  if (type.rank() > kMaxRank)
    throw InvalidParam("spin tensor type: rank exceeds the supported cap");
}

void decode(std::size_t flat, int rank, int* digits) {
  for (int k = rank - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(flat & 3u);
    flat >>= 2;
  }
}

}  // namespace

std::size_t flat_size(const SpinTensorType& type) {
  return std::size_t{1} << (2 * type.rank());
}

std::size_t flat_index(const SpinTensorType& type, const int* idx) {
  std::size_t f = 0;
  for (int k = 0; k < type.rank(); ++k)
    f = (f << 2) | static_cast<unsigned>(idx[k]);
  return f;
}

SpinTensorValue zero_value(const SpinTensorType& type) {
  validate_type(type);
  SpinTensorValue v;
  v.type = type;
  v.data.assign(flat_size(type), cplx(0.0));
  return v;
}

SpinTensorType tau_type(const SpinTensorType& type) {
  SpinTensorType t;
  t.r = type.rbar;
  t.s = type.sbar;
  t.rbar = type.r;
  t.sbar = type.s;
  t.p = type.p;
  t.q = type.q;
  return t;
}

SpinTensorValue tau_value(const SpinTensorValue& value) {
  const SpinTensorType& t = value.type;
  validate_type(t);
  SpinTensorValue out = zero_value(tau_type(t));
  const int rank = t.rank();

  // Group start offsets within a source multi-index.
  const int at_r = 0;
  const int at_s = at_r + t.r;
  const int at_rbar = at_s + t.s;
  const int at_sbar = at_rbar + t.rbar;
  const int at_space = at_sbar + t.sbar;
  const int n_space = t.p + t.q;

  int src[kMaxRank > 0 ? kMaxRank : 1];
  int dst[kMaxRank > 0 ? kMaxRank : 1];
  for (std::size_t f = 0; f < value.data.size(); ++f) {
    decode(f, rank, src);
    int w = 0;
    for (int k = 0; k < t.rbar; ++k) dst[w++] = src[at_rbar + k];
    for (int k = 0; k < t.sbar; ++k) dst[w++] = src[at_sbar + k];
    for (int k = 0; k < t.r; ++k) dst[w++] = src[at_r + k];
    for (int k = 0; k < t.s; ++k) dst[w++] = src[at_s + k];
    for (int k = 0; k < n_space; ++k) dst[w++] = src[at_space + k];
    out.data[flat_index(out.type, dst)] = std::conj(value.data[f]);
  }
  return out;
}

SpinTensorValue covariant_derivative_at(const SpinTensorField& field,
                                        const FrameField& frame,
                                        const Ten3d& christoffel,
                                        const Ten3c& spin,
                                        const SpacetimePoint& p,
                                        const DerivativeScheme& scheme) {
  const SpinTensorType& t = field.type;
  validate_type(t);
  if (t.rank() + 1 > kMaxRank)
    throw InvalidParam(
        "covariant derivative would exceed the supported rank cap");

  SpinTensorType rt = t;
  rt.q += 1;
  SpinTensorValue out = zero_value(rt);

  const Mat4d E = frame.components(p);
  const SpinTensorValue T0 = field.eval(p);
  SpinTensorValue dT[4];
  for (int i = 0; i < 4; ++i) {
    const Vec4 v{E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
    dT[i] = directional_derivative(field.eval, v, p, scheme);
  }

  const Ten3c conj_spin = conjugate_connection(spin);
  const int rank = t.rank();
  const int der_pos = t.r + t.s + t.rbar + t.sbar + t.p;

  int rd[kMaxRank + 1];
  int src[kMaxRank > 0 ? kMaxRank : 1];
  int probe[kMaxRank > 0 ? kMaxRank : 1];
  for (std::size_t f = 0; f < out.data.size(); ++f) {
    decode(f, rank + 1, rd);
    const int i = rd[der_pos];
    for (int k = 0; k < der_pos; ++k) src[k] = rd[k];
    for (int k = der_pos + 1; k < rank + 1; ++k) src[k - 1] = rd[k];

    cplx val = dT[i].data[flat_index(t, src)];

    auto value_with = [&](int pos, int c) {
      for (int k = 0; k < rank; ++k) probe[k] = src[k];
      probe[pos] = c;
      return T0.data[flat_index(t, probe)];
    };

    int pos = 0;
    for (int k = 0; k < t.r; ++k, ++pos) {
      const int a = src[pos];
      for (int c = 0; c < 4; ++c)
        val += spin.t[a][i][c] * value_with(pos, c);
    }
    for (int k = 0; k < t.s; ++k, ++pos) {
      const int b = src[pos];
      for (int c = 0; c < 4; ++c)
        val -= spin.t[c][i][b] * value_with(pos, c);
    }
    for (int k = 0; k < t.rbar; ++k, ++pos) {
      const int a = src[pos];
      for (int c = 0; c < 4; ++c)
        val += conj_spin.t[a][i][c] * value_with(pos, c);
    }
    for (int k = 0; k < t.sbar; ++k, ++pos) {
      const int b = src[pos];
      for (int c = 0; c < 4; ++c)
        val -= conj_spin.t[c][i][b] * value_with(pos, c);
    }
    for (int k = 0; k < t.p; ++k, ++pos) {
      const int m = src[pos];
      for (int h = 0; h < 4; ++h)
        val += christoffel.t[m][i][h] * value_with(pos, h);
    }
    for (int k = 0; k < t.q; ++k, ++pos) {
      const int m = src[pos];
      for (int h = 0; h < 4; ++h)
        val -= christoffel.t[h][i][m] * value_with(pos, h);
    }

    out.data[f] = val;
  }
  return out;
}

SpinTensorValue covariant_derivative(const SpinTensorField& field,
                                     const FrameField& frame,
                                     const SpinorData& data,
                                     const SpacetimeModel& model,
                                     SpinVariant variant,
                                     const SpacetimePoint& p,
                                     const DerivativeScheme& scheme) {
  const ConnectionAt conn =
      connection_at(model, frame, data, variant, p, scheme);
  return covariant_derivative_at(field, frame, conn.christoffel, conn.spin, p,
                                 scheme);
}

namespace {

double max_abs(const SpinTensorValue& v) {
  double r = 0.0;
  for (const cplx& x : v.data) r = std::max(r, std::abs(x));
  return r;
}

SpinTensorField basic_metric_field(const SpacetimeModel& model,
                                   const FrameField& frame) {
  SpinTensorField f;
  f.type = SpinTensorType{0, 0, 0, 0, 0, 2};
  f.eval = [&model, &frame](const SpacetimePoint& q) {
    const Mat4d g = frame_metric_components(model, frame, q);
    SpinTensorValue v = zero_value(SpinTensorType{0, 0, 0, 0, 0, 2});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) v.data[4 * i + j] = g.m[i][j];
    return v;
  };
  return f;
}

SpinTensorField component_field(const SpinorData& data,
                                const SpinTensorType& type,
                                cplx (*pick)(const SpinorDataValues&,
                                             const int*)) {
  SpinTensorField f;
  f.type = type;
  auto eval = data.eval;
  f.eval = [eval, type, pick](const SpacetimePoint& q) {
    const SpinorDataValues w = eval(q);
    SpinTensorValue v = zero_value(type);
    const int rank = type.rank();
    int idx[kMaxRank > 0 ? kMaxRank : 1];
    for (std::size_t k = 0; k < v.data.size(); ++k) {
      decode(k, rank, idx);
      v.data[k] = pick(w, idx);
    }
    return v;
  };
  return f;
}

}  // namespace

MetricityReport metricity_report(const SpacetimeModel& model,
                                 const FrameField& frame,
                                 const SpinorData& data, SpinVariant variant,
                                 const std::vector<SpacetimePoint>& points,
                                 const DerivativeScheme& scheme,
                                 std::uint64_t seed) {
  const SpinTensorField metric_f = basic_metric_field(model, frame);
  const SpinTensorField d_f = component_field(
      data, SpinTensorType{0, 2, 0, 0, 0, 0},
      [](const SpinorDataValues& w, const int* i) {
        return w.d_lo.m[i[0]][i[1]];
      });
  const SpinTensorField gamma_f = component_field(
      data, SpinTensorType{1, 1, 0, 0, 0, 1},
      [](const SpinorDataValues& w, const int* i) {
        return w.gamma[i[2]].m[i[0]][i[1]];
      });
  const SpinTensorField h_f = component_field(
      data, SpinTensorType{1, 1, 0, 0, 0, 0},
      [](const SpinorDataValues& w, const int* i) {
        return w.H.m[i[0]][i[1]];
      });
  const SpinTensorField dirac_f = component_field(
      data, SpinTensorType{0, 1, 0, 1, 0, 0},
      [](const SpinorDataValues& w, const int* i) {
        return w.D.m[i[0]][i[1]];
      });
  const SpinTensorField d_conj_f = component_field(
      data, SpinTensorType{0, 0, 0, 2, 0, 0},
      [](const SpinorDataValues& w, const int* i) {
        return std::conj(w.d_lo.m[i[0]][i[1]]);
      });
  const SpinTensorField h_conj_f = component_field(
      data, SpinTensorType{0, 0, 1, 1, 0, 0},
      [](const SpinorDataValues& w, const int* i) {
        return std::conj(w.H.m[i[0]][i[1]]);
      });
  const SpinTensorField gamma_conj_f = component_field(
      data, SpinTensorType{0, 0, 1, 1, 0, 1},
      [](const SpinorDataValues& w, const int* i) {
        return std::conj(w.gamma[i[2]].m[i[0]][i[1]]);
      });

  // Seeded degree-one test field used for the commutation check between
  // the conjugation involution and the covariant derivative.
  const SpinTensorType test_type{1, 0, 0, 1, 0, 1};
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  const std::size_t n_components = flat_size(test_type);
  std::vector<std::array<cplx, 5>> test_coeffs(n_components);
  for (std::size_t k = 0; k < n_components; ++k)
    for (int c = 0; c < 5; ++c)
      test_coeffs[k][c] =
          cplx(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0);

  SpinTensorField test_f;
  test_f.type = test_type;
  test_f.eval = [test_type, test_coeffs](const SpacetimePoint& q) {
    SpinTensorValue v = zero_value(test_type);
    for (std::size_t k = 0; k < v.data.size(); ++k) {
      cplx s = test_coeffs[k][0];
      for (int c = 0; c < 4; ++c) s += test_coeffs[k][1 + c] * q.x[c];
      v.data[k] = s;
    }
    return v;
  };
  SpinTensorField test_tau_f;
  test_tau_f.type = tau_type(test_type);
  test_tau_f.eval = [test_f](const SpacetimePoint& q) {
    return tau_value(test_f.eval(q));
  };

  MetricityReport rep;
  for (const SpacetimePoint& p : points) {
    const ConnectionAt conn =
        connection_at(model, frame, data, variant, p, scheme);
    auto defect = [&](const SpinTensorField& f) {
      return max_abs(covariant_derivative_at(f, frame, conn.christoffel,
                                             conn.spin, p, scheme));
    };
    rep.metric = std::max(rep.metric, defect(metric_f));
    rep.spinor_metric = std::max(rep.spinor_metric, defect(d_f));
    rep.gamma = std::max(rep.gamma, defect(gamma_f));
    rep.chirality = std::max(rep.chirality, defect(h_f));
    rep.dirac_form = std::max(rep.dirac_form, defect(dirac_f));
    rep.spinor_metric_conj = std::max(rep.spinor_metric_conj, defect(d_conj_f));
    rep.chirality_conj = std::max(rep.chirality_conj, defect(h_conj_f));
    rep.gamma_conj = std::max(rep.gamma_conj, defect(gamma_conj_f));

    const SpinTensorValue lhs = tau_value(covariant_derivative_at(
        test_f, frame, conn.christoffel, conn.spin, p, scheme));
    const SpinTensorValue rhs = covariant_derivative_at(
        test_tau_f, frame, conn.christoffel, conn.spin, p, scheme);
    rep.tau_naturality = std::max(rep.tau_naturality, max_abs(lhs - rhs));
  }
  return rep;
}

}  // namespace spinconn
