#pragma once

// Spin-tensorial fields of mixed type, the conjugation involution tau, the
// covariant derivative acting on arbitrary mixed types, and the metricity
// report that measures how well the connection preserves the basic fields.

#include "spinconn/connection.hpp"

namespace spinconn {

// Index signature of a spin-tensorial object: counts of upper/lower spinor
// indices, upper/lower conjugate-spinor indices, and upper/lower spacial
// indices.  Flattened storage orders index groups exactly in that
// sequence, each index running 0..3, last index fastest.
struct SpinTensorType {
  int r = 0, s = 0, rbar = 0, sbar = 0, p = 0, q = 0;
  int rank() const { return r + s + rbar + sbar + p + q; }
  bool operator==(const SpinTensorType& o) const {
    return r == o.r && s == o.s && rbar == o.rbar && sbar == o.sbar &&
           p == o.p && q == o.q;
  }
};

inline constexpr int kMaxRank = 6;

struct SpinTensorValue {
  SpinTensorType type;
  std::vector<cplx> data;
};

inline SpinTensorValue operator+(const SpinTensorValue& a,
                                 const SpinTensorValue& b) {
  SpinTensorValue r = a;
  for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] += b.data[k];
  return r;
}

inline SpinTensorValue operator-(const SpinTensorValue& a,
                                 const SpinTensorValue& b) {
  SpinTensorValue r = a;
  for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] -= b.data[k];
  return r;
}

inline SpinTensorValue operator*(double s, const SpinTensorValue& a) {
  SpinTensorValue r = a;
  for (cplx& v : r.data) v *= s;
  return r;
}

SpinTensorValue zero_value(const SpinTensorType& type);

// Multi-index helpers for the flattened layout.
std::size_t flat_size(const SpinTensorType& type);
std::size_t flat_index(const SpinTensorType& type, const int* idx);

struct SpinTensorField {
  SpinTensorType type;
  std::function<SpinTensorValue(const SpacetimePoint&)> eval;
};

// Conjugation involution on types and values: swaps the plain and
// conjugate spinor index groups and conjugates every component.
SpinTensorType tau_type(const SpinTensorType& type);
SpinTensorValue tau_value(const SpinTensorValue& value);

// Covariant derivative at a point.  The result has one extra lower spacial
// index, placed first within the lower spacial group, carrying the frame
// direction of differentiation.
SpinTensorValue covariant_derivative(const SpinTensorField& field,
                                     const FrameField& frame,
                                     const SpinorData& data,
                                     const SpacetimeModel& model,
                                     SpinVariant variant,
                                     const SpacetimePoint& p,
                                     const DerivativeScheme& scheme);

// Same computation against precomputed connection coefficients, for
// callers that differentiate many fields at one point.
SpinTensorValue covariant_derivative_at(const SpinTensorField& field,
                                        const FrameField& frame,
                                        const Ten3d& christoffel,
                                        const Ten3c& spin,
                                        const SpacetimePoint& p,
                                        const DerivativeScheme& scheme);

// Max-norm defects of the covariant derivatives of the basic fields: the
// tangent metric, spinor metric, gamma field, chirality operator, Dirac
// form, and the conjugates of the spinor metric, chirality operator and
// gamma field.  All vanish for a metric connection.  Also reports the
// commutation defect of tau with the covariant derivative on a seeded
// random test field.
struct MetricityReport {
  double metric = 0;
  double spinor_metric = 0;
  double gamma = 0;
  double chirality = 0;
  double dirac_form = 0;
  double spinor_metric_conj = 0;
  double chirality_conj = 0;
  double gamma_conj = 0;
  double tau_naturality = 0;
};

MetricityReport metricity_report(const SpacetimeModel& model,
                                 const FrameField& frame,
                                 const SpinorData& data, SpinVariant variant,
                                 const std::vector<SpacetimePoint>& points,
                                 const DerivativeScheme& scheme,
                                 std::uint64_t seed);

}  // namespace spinconn
