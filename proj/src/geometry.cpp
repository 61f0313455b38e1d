#include "spinconn/geometry.hpp"

#include <random>

namespace spinconn {

namespace {

double require_scalar(const ModelParams& params, const std::string& key,
                      double fallback) {
  auto it = params.scalars.find(key);
  return it == params.scalars.end() ? fallback : it->second;
}

void reject_unknown_scalars(const ModelParams& params,
                            std::initializer_list<const char*> known,
                            const std::string& model) {
  for (const auto& [key, value] : params.scalars) {
    (void)value;
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw InvalidParam(model + ": unknown parameter '" + key + "'");
  }
}

bool inside_box(const Box& box, const Vec4& x) {
  for (int k = 0; k < 4; ++k)
    if (x[k] < box[k][0] || x[k] > box[k][1]) return false;
  return true;
}

SpacetimeModel make_minkowski(const ModelParams& params) {
  reject_unknown_scalars(params, {}, "minkowski");
  Mat4d g;
  g.m[0][0] = 1.0;
  g.m[1][1] = -1.0;
  g.m[2][2] = -1.0;
  g.m[3][3] = -1.0;
  SpacetimeModel model;
  model.name = "minkowski";
  model.metric_fn = [g](const SpacetimePoint&) { return g; };
  model.domain_guard = [](const SpacetimePoint&) { return true; };
  model.constant_metric = true;
  return model;
}

SpacetimeModel make_schwarzschild(const ModelParams& params) {
  reject_unknown_scalars(params, {"rs"}, "schwarzschild");
  const double rs = require_scalar(params, "rs", 1.0);
  if (!(rs > 0.0))
    throw InvalidParam("schwarzschild: rs must be positive");
  SpacetimeModel model;
  model.name = "schwarzschild";
  model.params["rs"] = rs;
  model.domain_guard = [rs](const SpacetimePoint& p) {
    const double r = p.x[1];
    return r > rs * (1.0 + 1e-3) && std::sin(p.x[2]) > 1e-3;
  };
  model.metric_fn = [rs](const SpacetimePoint& p) {
    const double r = p.x[1];
    const double st = std::sin(p.x[2]);
    const double f = 1.0 - rs / r;
    Mat4d g;
    g.m[0][0] = f;
    g.m[1][1] = -1.0 / f;
    g.m[2][2] = -r * r;
    g.m[3][3] = -r * r * st * st;
    return g;
  };
  return model;
}

SpacetimeModel make_diag_poly(const ModelParams& params) {
  reject_unknown_scalars(params, {}, "diag_poly");
  if (!params.has_poly)
    throw InvalidParam("diag_poly: four diagonal polynomials required");
  const Box box = params.box;
  for (int k = 0; k < 4; ++k)
    if (!(box[k][1] > box[k][0]))
      throw InvalidParam("diag_poly: box must have positive extent");

  // Positivity screen on a 7^4 grid including box corners; rejects
  // polynomials that change sign (and hence make the metric degenerate)
  // inside the configured box.
  constexpr int kGrid = 7;
  Vec4 x;
  for (int i0 = 0; i0 < kGrid; ++i0)
    for (int i1 = 0; i1 < kGrid; ++i1)
      for (int i2 = 0; i2 < kGrid; ++i2)
        for (int i3 = 0; i3 < kGrid; ++i3) {
          const int idx[4] = {i0, i1, i2, i3};
          for (int k = 0; k < 4; ++k)
            x[k] = box[k][0] +
                   (box[k][1] - box[k][0]) * idx[k] / double(kGrid - 1);
          for (int k = 0; k < 4; ++k)
            if (!(params.poly[k].eval(x) > 0.0))
              throw InvalidParam(
                  "diag_poly: diagonal polynomial not positive on the box");
        }

  auto poly = params.poly;
  SpacetimeModel model;
  model.name = "diag_poly";
  model.domain_box = box;
  model.has_domain_box = true;
  model.domain_guard = [box](const SpacetimePoint& p) {
    return inside_box(box, p.x);
  };
  model.metric_fn = [poly](const SpacetimePoint& p) {
    Mat4d g;
    g.m[0][0] = poly[0].eval(p.x);
    g.m[1][1] = -poly[1].eval(p.x);
    g.m[2][2] = -poly[2].eval(p.x);
    g.m[3][3] = -poly[3].eval(p.x);
    return g;
  };
  return model;
}

}  // namespace

SpacetimeModel make_builtin_spacetime(const std::string& name,
                                      const ModelParams& params) {
  if (name == "minkowski") return make_minkowski(params);
  if (name == "schwarzschild") return make_schwarzschild(params);
  if (name == "diag_poly") return make_diag_poly(params);
  throw UnknownSpacetime("unknown spacetime '" + name + "'");
}

Mat4d inverse_metric(const SpacetimeModel& model, const SpacetimePoint& p) {
  const Mat4d g = model.metric(p);
  Mat4d inv;
  if (!invert4(g, inv))
    throw SingularMetric(model.name + ": metric not invertible");
  return inv;
}

std::vector<SpacetimePoint> sample_points(const SpacetimeModel& model,
                                          const Box& box, int count,
                                          std::uint64_t seed,
                                          double margin_frac) {
  Box inner = box;
  for (int k = 0; k < 4; ++k) {
    const double margin = margin_frac * (box[k][1] - box[k][0]);
    inner[k][0] += margin;
    inner[k][1] -= margin;
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  std::vector<SpacetimePoint> points;
  points.reserve(static_cast<std::size_t>(count));
  const long max_attempts = 10000L * count + 10000L;
  long attempts = 0;
  while (static_cast<int>(points.size()) < count) {
    if (++attempts > max_attempts)
      throw DomainError(model.name +
                        ": sampling box lies mostly outside the chart domain");
    SpacetimePoint p;
    for (int k = 0; k < 4; ++k)
      p.x[k] = inner[k][0] + (inner[k][1] - inner[k][0]) * uniform();
    if (model.admissible(p)) points.push_back(p);
  }
  return points;
}

Box default_sampling_box(const SpacetimeModel& model) {
  if (model.has_domain_box) return model.domain_box;
  if (model.name == "schwarzschild") {
    const double rs = model.params.at("rs");
    return Box{{{-1.0, 1.0},
                {1.5 * rs, 5.0 * rs},
                {0.4, 2.7},
                {-3.0, 3.0}}};
  }
  return Box{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
}

}  // namespace spinconn
