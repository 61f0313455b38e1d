#pragma once

// The Levi-Civita connection on the tangent bundle (Christoffel symbols in
// holonomic and general frames) and the induced metric connection in the
// spinor bundle, computed by several independent formulas that must agree.

#include "spinconn/spinor_algebra.hpp"

namespace spinconn {

// Index layout: christoffel.t[k][i][j] is the coefficient multiplying the
// j-th frame vector in the covariant derivative of that vector along frame
// direction i, read off on component k.
Ten3d christoffel_holonomic(const SpacetimeModel& model,
                            const SpacetimePoint& p,
                            const DerivativeScheme& scheme);

// General-frame version built from frame metric components and structure
// constants; reduces to the holonomic formula when the frame commutes.
Ten3d christoffel_frame(const SpacetimeModel& model, const FrameField& frame,
                        const SpacetimePoint& p,
                        const DerivativeScheme& scheme);

// Independent formulas for the spin connection.  "decorated" works through
// chirality-restricted components of d and gamma, "projector" through
// projector-weighted derivative terms, "compact" through the trace-reduced
// five-term form.  All three accept position-dependent spinor data.
enum class SpinVariant { decorated, projector, compact };

// Short formula valid only when every spinor-data component is constant
// over the chart.  Layout: result.t[a][i][b] with i the derivative
// direction.
Ten3c spin_connection_special(const Ten3d& christoffel, const GammaSet& gamma,
                              const Mat4d& g_inv);

Ten3c spin_connection_general(const SpacetimeModel& model,
                              const FrameField& frame, const SpinorData& data,
                              SpinVariant variant, const SpacetimePoint& p,
                              const DerivativeScheme& scheme);

// Components of the induced connection on conjugate spinors.
Ten3c conjugate_connection(const Ten3c& A);

// Max-norm of Gamma^k_ij - Gamma^k_ji + c^k_ij over all index triples.
double torsion_defect(const SpacetimeModel& model, const FrameField& frame,
                      const SpacetimePoint& p, const DerivativeScheme& scheme);

// One-stop pointwise bundle for callers that need both connections.
struct ConnectionAt {
  Ten3d christoffel;
  Ten3c spin;
};

ConnectionAt connection_at(const SpacetimeModel& model, const FrameField& frame,
                           const SpinorData& data, SpinVariant variant,
                           const SpacetimePoint& p,
                           const DerivativeScheme& scheme);

}  // namespace spinconn
