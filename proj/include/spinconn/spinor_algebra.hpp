#pragma once

// Algebraic data living in the spinor bundle: the skew-symmetric spinor
// metric d, the chirality operator H, the Dirac form D, the Dirac gamma
// operators, chirality projectors, chirality-restricted (decorated)
// versions of d and gamma, gauge transforms of all of the above, and the
// derivative of H induced by derivatives of d and gamma.

#include "spinconn/frames.hpp"

namespace spinconn {

struct CanonicalConstants {
  Mat4d g;      // tangent metric in an orthonormal frame, diag(1,-1,-1,-1)
  Mat4c d_lo;   // spinor metric components d_{ab}
  Mat4c d_hi;   // dual components d^{ab}, inverse transpose convention
  Mat4c H;      // chirality operator H^a_b
  Mat4c D;      // Dirac form D_{a bbar}
  GammaSet gamma;  // gamma[k][a][b] = gamma^a_{b k}
};

CanonicalConstants canonical_constants();

struct ChiralityProjectors {
  Mat4c bul;   // (I + H) / 2
  Mat4c circ;  // (I - H) / 2
};

// Requires H to be an involution; throws NotInvolutive otherwise.
ChiralityProjectors chirality_projectors(const Mat4c& H);

struct DecoratedMetric {
  // Restrictions of d to the two chirality eigenspaces.  Lower-index
  // blocks are stored as [alpha][beta], upper-index blocks as
  // [beta][alpha].
  Mat4c bul_lo, bul_hi, circ_lo, circ_hi;
};

// Computes each block by sandwiching between projectors and cross-checks
// against the equivalent one-sided projections; throws InconsistentAlgebra
// if the two routes disagree beyond 1e-12.
DecoratedMetric decorated_metric(const Mat4c& d_lo, const Mat4c& d_hi,
                                 const Mat4c& H);

struct DecoratedGamma {
  // Chirality-split gamma blocks: circ_bul[k] maps the + eigenspace into
  // the - eigenspace, bul_circ[k] the other way around.
  GammaSet circ_bul, bul_circ;
};

// Splits each gamma operator by the projectors and cross-checks that
// one-sided projection gives the same blocks; throws InconsistentAlgebra
// on disagreement beyond 1e-12.
DecoratedGamma decorated_gamma(const GammaSet& gamma, const Mat4c& H);

// Residual of the contraction identity tying gamma, the inverse tangent
// metric, the spinor metric, and the chirality operator together.  Zero
// for data that actually comes from a Dirac bundle.
double gamma_identity_residual(const GammaSet& gamma, const Mat4d& g_inv,
                               const Mat4c& d_lo, const Mat4c& d_hi,
                               const Mat4c& H);

// Pointwise values of the spinor-bundle data in a given tangent frame.
struct SpinorDataValues {
  Mat4c d_lo, d_hi, H, D;
  GammaSet gamma;
};

struct SpinorData {
  std::function<SpinorDataValues(const SpacetimePoint&)> eval;
  // True when every component function is constant over the chart, which
  // unlocks the short connection formula.
  bool constant_components = false;
};

// Canonical constant d, H, D attached to the given frame.  In an
// orthonormal tetrad (or a holonomic frame of a flat metric in standard
// coordinates) the gamma components are the canonical constants too;
// otherwise gamma is re-expressed through the frame's relation to the
// tetrad and varies from point to point.
SpinorData canonical_data(const SpacetimeModel& model, const FrameField& frame);

// Smooth pointwise change of spinor frame.
struct GaugeField {
  std::function<Mat4c(const SpacetimePoint&)> S;
  std::function<Mat4c(const SpacetimePoint&)> S_inv;
};

// Gauge of the form exp(X(p)) with X a fixed set of direction matrices
// weighted by random polynomials in box-centered scaled coordinates.
// The inverse is exp(-X), exact up to series truncation.
GaugeField make_random_gauge(const Box& box, std::uint64_t seed,
                             int degree = 2, double amplitude = 0.25);

// Transforms all component functions to the new spinor frame.
SpinorData gauged_data(const SpinorData& base, const GaugeField& gauge);

// Derivative of the chirality operator along frame vector i, evaluated
// through derivatives of d and of gamma contractions only.  Matches the
// finite-difference derivative of H itself whenever the data is smooth.
Mat4c chirality_derivative(const FrameField& frame, const SpinorData& data,
                           const SpacetimeModel& model, int i,
                           const SpacetimePoint& p,
                           const DerivativeScheme& scheme);

}  // namespace spinconn
