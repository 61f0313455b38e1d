#pragma once

// Curvature tensors of the tangent and spinor connections, assembled from
// frame derivatives of the connection coefficients, and the contraction
// identity linking the two.

#include "spinconn/connection.hpp"

namespace spinconn {

// riemann.t[p][q][i][j]: curvature operator component p over q for the
// frame direction pair (i, j); antisymmetric in (i, j).
Ten4d riemann_frame(const SpacetimeModel& model, const FrameField& frame,
                    const SpacetimePoint& p, const DerivativeScheme& scheme);

// spin.t[a][b][i][j]: curvature of the spinor connection.  With
// `conjugated` the assembly runs on the conjugate connection coefficients
// and yields the curvature of the conjugate bundle.
Ten4c spinor_curvature(const SpacetimeModel& model, const FrameField& frame,
                       const SpinorData& data, SpinVariant variant,
                       const SpacetimePoint& p, const DerivativeScheme& scheme,
                       bool conjugated = false);

struct CurvatureAt {
  Ten4d riemann;
  Ten4c spin;
};

CurvatureAt curvature_at(const SpacetimeModel& model, const FrameField& frame,
                         const SpinorData& data, SpinVariant variant,
                         const SpacetimePoint& p,
                         const DerivativeScheme& scheme);

// Residual of the quarter-contraction expressing the spinor curvature
// through the Riemann tensor, the gamma field and the inverse frame
// metric.
double curvature_relation_residual(const Ten4d& riemann, const Ten4c& spin,
                                   const GammaSet& gamma, const Mat4d& g_inv);

}  // namespace spinconn
