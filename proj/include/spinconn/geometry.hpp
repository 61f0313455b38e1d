#pragma once

// Charts, analytic metric fields, and the directional-derivative operator
// that stands in for the frame derivatives L_v used by every formula in
// the library.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "spinconn/errors.hpp"
#include "spinconn/linalg.hpp"

namespace spinconn {

struct SpacetimePoint {
  Vec4 x{};
  int chart_id = 0;
};

// Finite-difference control: relative step, central-difference order (2 or
// 4), optional single Richardson extrapolation level.
struct DerivativeScheme {
  double step = 1e-5;
  int order = 4;
  bool richardson = true;
};

// Sparse polynomial in the four chart coordinates: sum of terms
// c * x0^e0 * x1^e1 * x2^e2 * x3^e3.
struct Poly {
  struct Term {
    double c = 0.0;
    std::array<int, 4> e{};
  };
  std::vector<Term> terms;

  double eval(const Vec4& x) const {
    double s = 0.0;
    for (const Term& t : terms) {
      double v = t.c;
      for (int k = 0; k < 4; k++)
        for (int j = 0; j < t.e[k]; j++) v *= x[k];
      s += v;
    }
    return s;
  }
};

using Box = std::array<std::array<double, 2>, 4>;

struct SpacetimeModel {
  std::string name;
  std::map<std::string, double> params;
  std::function<Mat4d(const SpacetimePoint&)> metric_fn;
  std::function<bool(const SpacetimePoint&)> domain_guard;
  bool constant_metric = false;
  // Set for models whose chart is a coordinate box.
  Box domain_box{};
  bool has_domain_box = false;

  bool admissible(const SpacetimePoint& p) const { return domain_guard(p); }

  Mat4d metric(const SpacetimePoint& p) const {
    if (!domain_guard(p))
      throw DomainError(name + ": point outside chart domain");
    return metric_fn(p);
  }
};

// Parameter bundle for make_builtin_spacetime.  The scalar map covers
// minkowski and schwarzschild; diag_poly additionally needs the four
// diagonal polynomials and the box on which they are guaranteed positive.
struct ModelParams {
  std::map<std::string, double> scalars;
  std::array<Poly, 4> poly{};
  Box box{};
  bool has_poly = false;

  ModelParams() = default;
  explicit ModelParams(std::map<std::string, double> s) : scalars(std::move(s)) {}
};

SpacetimeModel make_builtin_spacetime(const std::string& name,
                                      const ModelParams& params);

inline SpacetimeModel make_builtin_spacetime(
    const std::string& name, const std::map<std::string, double>& scalars) {
  return make_builtin_spacetime(name, ModelParams(scalars));
}

Mat4d inverse_metric(const SpacetimeModel& model, const SpacetimePoint& p);

// Directional derivative sum_n v^n df/dx^n at p by central differences of
// the configured order, with one Richardson level if enabled.  f may return
// any of the arithmetic value types (scalars, matrices, tensors, component
// vectors); v = 0 yields exact zeros.
template <class F>
auto directional_derivative(F&& f, const Vec4& v, const SpacetimePoint& p,
                            const DerivativeScheme& scheme) {
  using R = std::invoke_result_t<F&, const SpacetimePoint&>;
  const double vn = norm2(v);
  if (vn == 0.0) {
    R base = f(p);
    return static_cast<R>(0.0 * base);
  }
  const Vec4 u = (1.0 / vn) * v;
  const double h0 = scheme.step * std::max(1.0, norm_inf(p.x));

  auto at = [&](double t) {
    SpacetimePoint q = p;
    q.x = q.x + t * u;
    return f(q);
  };
  auto central = [&](double h) -> R {
    if (scheme.order == 2) return (0.5 / h) * (at(h) - at(-h));
    R inner = 8.0 * (at(h) - at(-h));
    R outer = at(-2.0 * h) - at(2.0 * h);
    return (1.0 / (12.0 * h)) * (inner + outer);
  };

  R d = central(h0);
  if (scheme.richardson) {
    R dh = central(0.5 * h0);
    if (scheme.order == 2)
      d = (1.0 / 3.0) * (4.0 * dh - d);
    else
      d = (1.0 / 15.0) * (16.0 * dh - d);
  }
  return static_cast<R>(vn * d);
}

// Deterministic uniform sampling of admissible points in a box, shrunk by
// a small relative margin so stencils stay inside the chart domain.
std::vector<SpacetimePoint> sample_points(const SpacetimeModel& model,
                                          const Box& box, int count,
                                          std::uint64_t seed,
                                          double margin_frac = 0.01);

// Model-appropriate default sampling box (used by the CLI when the config
// does not carry one).
Box default_sampling_box(const SpacetimeModel& model);

}  // namespace spinconn
