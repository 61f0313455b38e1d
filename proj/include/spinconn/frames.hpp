#pragma once

// Tangent-bundle frames: the coordinate frame, orthonormal tetrads built
// by Gram-Schmidt, custom polynomial frames, their structure constants,
// and frame components of the metric.

#include "spinconn/geometry.hpp"

namespace spinconn {

struct FrameField {
  enum class Kind { holonomic, tetrad, custom };
  Kind kind = Kind::holonomic;
  // E(p): column i holds the coordinate components E^n_i of the i-th
  // frame vector.
  std::function<Mat4d(const SpacetimePoint&)> components;
};

struct StructureConstants {
  // c[k][i][j], antisymmetric in (i,j) by construction.
  Ten3d c;
};

FrameField coordinate_frame(const SpacetimeModel& model);

// Gram-Schmidt on the coordinate frame in order (0,1,2,3) under the metric,
// normalizing the timelike leg to +1 and spacelike legs to -1.  Sign
// conventions: E^0_0 > 0 and det E > 0.
FrameField orthonormal_tetrad(const SpacetimeModel& model);

// Frame with polynomial component entries, row-major: entries[n*4 + i]
// gives E^n_i.
FrameField custom_frame(const std::array<Poly, 16>& entries);

// Commutator components [v_i, v_j]^m = sum_n (E^n_i d_n E^m_j -
// E^n_j d_n E^m_i) resolved against E(p), antisymmetrized in (i,j).
StructureConstants structure_constants(const FrameField& frame,
                                       const SpacetimeModel& model,
                                       const SpacetimePoint& p,
                                       const DerivativeScheme& scheme);

// E^T g E with exact output symmetry.
Mat4d frame_metric_components(const SpacetimeModel& model,
                              const FrameField& frame,
                              const SpacetimePoint& p);

Mat4d frame_metric_inverse(const SpacetimeModel& model,
                           const FrameField& frame, const SpacetimePoint& p);

}  // namespace spinconn
