#include "spinconn/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace spinconn {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct CheckDef {
  const char* name;
  double tol;
};

// Registered checks in report order.  The listed tolerance is the default
// and can be overridden per run.
const CheckDef kCheckDefs[] = {
    {"algebra-involution", 1e-12},
    {"algebra-metric-inverse", 1e-12},
    {"algebra-projector-sum", 1e-12},
    {"algebra-commutation-d", 1e-12},
    {"algebra-commutation-gamma", 1e-12},
    {"algebra-gamma-split", 1e-12},
    {"gamma-identity", 1e-8},
    {"torsion", 1e-6},
    {"holonomic-symmetry", 1e-8},
    {"variant-agreement", 1e-6},
    {"metricity-metric", 1e-6},
    {"metricity-spinor-metric", 1e-6},
    {"metricity-gamma", 1e-6},
    {"metricity-chirality", 1e-6},
    {"metricity-dirac-form", 1e-6},
    {"metricity-spinor-metric-conj", 1e-6},
    {"metricity-chirality-conj", 1e-6},
    {"metricity-gamma-conj", 1e-6},
    {"tau-naturality", 1e-8},
    {"connection-reality", 1e-30},
    {"chirality-derivative", 1e-6},
    {"curvature-relation", 1e-5},
    {"curvature-reality", 1e-10},
    {"gauge-covariance-connection", 1e-6},
    {"gauge-covariance-curvature", 1e-5},
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string variant_name(SpinVariant v) {
  switch (v) {
    case SpinVariant::decorated: return "decorated";
    case SpinVariant::projector: return "projector";
    case SpinVariant::compact: return "compact";
  }
  return "decorated";
}

SpinVariant variant_from_name(const std::string& s) {
  if (s == "decorated") return SpinVariant::decorated;
  if (s == "projector") return SpinVariant::projector;
  if (s == "compact") return SpinVariant::compact;
  throw ConfigError("config: unknown variant '" + s + "'");
}

Poly parse_poly(const json& arr, const char* where) {
  if (!arr.is_array())
    throw ConfigError(std::string("config: ") + where +
                      " polynomial must be an array of term rows");
  Poly poly;
  for (const json& row : arr) {
    if (!row.is_array() || row.size() != 5)
      throw ConfigError(std::string("config: ") + where +
                        " polynomial term must be [coeff, e0, e1, e2, e3]");
    Poly::Term term;
    term.c = row[0].get<double>();
    for (int k = 0; k < 4; ++k) {
      const json& e = row[1 + k];
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() > 6)
        throw ConfigError(std::string("config: ") + where +
                          " polynomial exponents must be integers in [0,6]");
      term.e[k] = e.get<int>();
    }
    poly.terms.push_back(term);
  }
  return poly;
}

json poly_to_json(const Poly& poly) {
  json arr = json::array();
  for (const Poly::Term& t : poly.terms)
    arr.push_back({t.c, t.e[0], t.e[1], t.e[2], t.e[3]});
  return arr;
}

Box parse_box(const json& arr, const char* where) {
  if (!arr.is_array() || arr.size() != 4)
    throw ConfigError(std::string("config: ") + where +
                      " box must be four [lo, hi] pairs");
  Box box{};
  for (int k = 0; k < 4; ++k) {
    const json& pair = arr[k];
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigError(std::string("config: ") + where +
                        " box entries must be [lo, hi] pairs");
    box[k][0] = pair[0].get<double>();
    box[k][1] = pair[1].get<double>();
    if (!(box[k][1] > box[k][0]))
      throw ConfigError(std::string("config: ") + where +
                        " box must have positive extent in every coordinate");
  }
  return box;
}

void parse_spacetime(const json& j, RunConfig& cfg) {
  if (j.is_string()) {
    cfg.spacetime = j.get<std::string>();
    return;
  }
  if (!j.is_object())
    throw ConfigError("config: spacetime must be a name or an object");
  for (const auto& [key, val] : j.items()) {
    if (key == "name") {
      cfg.spacetime = val.get<std::string>();
    } else if (key == "params") {
      if (!val.is_object())
        throw ConfigError("config: spacetime params must be an object");
      for (const auto& [pk, pv] : val.items())
        cfg.params.scalars[pk] = pv.get<double>();
    } else if (key == "poly") {
      if (!val.is_array() || val.size() != 4)
        throw ConfigError("config: spacetime poly must list four polynomials");
      for (int k = 0; k < 4; ++k)
        cfg.params.poly[k] = parse_poly(val[k], "spacetime");
      cfg.params.has_poly = true;
    } else if (key == "box") {
      cfg.params.box = parse_box(val, "spacetime");
    } else {
      throw ConfigError("config: unknown spacetime key '" + key + "'");
    }
  }
}

void parse_frame(const json& j, RunConfig& cfg) {
  if (j.is_string()) {
    cfg.frame = j.get<std::string>();
    if (cfg.frame != "tetrad" && cfg.frame != "coordinate")
      throw ConfigError("config: frame must be tetrad, coordinate, or custom");
    return;
  }
  if (!j.is_object() || j.size() != 1 || !j.contains("custom"))
    throw ConfigError("config: frame must be a name or {\"custom\": [...]}");
  const json& entries = j["custom"];
  if (!entries.is_array() || entries.size() != 16)
    throw ConfigError(
        "config: custom frame needs 16 polynomial entries (row-major)");
  for (int k = 0; k < 16; ++k)
    cfg.custom_frame_entries[k] = parse_poly(entries[k], "frame");
  cfg.frame = "custom";
}

void parse_gauge(const json& j, RunConfig& cfg) {
  if (j.is_string()) {
    if (j.get<std::string>() != "none")
      throw ConfigError("config: gauge must be \"none\" or an object");
    cfg.gauge.enabled = false;
    return;
  }
  if (!j.is_object())
    throw ConfigError("config: gauge must be \"none\" or an object");
  cfg.gauge.enabled = true;
  for (const auto& [key, val] : j.items()) {
    if (key == "seed")
      cfg.gauge.seed = val.get<std::uint64_t>();
    else if (key == "degree")
      cfg.gauge.degree = val.get<int>();
    else if (key == "amplitude")
      cfg.gauge.amplitude = val.get<double>();
    else
      throw ConfigError("config: unknown gauge key '" + key + "'");
  }
  if (cfg.gauge.degree < 0 || cfg.gauge.degree > 4)
    throw ConfigError("config: gauge degree must be between 0 and 4");
  if (!(cfg.gauge.amplitude > 0.0))
    throw ConfigError("config: gauge amplitude must be positive");
}

RunConfig parse_config_object(const json& j) {
  if (!j.is_object())
    throw ConfigError("config: top level must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "spacetime") {
      parse_spacetime(val, cfg);
    } else if (key == "frame") {
      parse_frame(val, cfg);
    } else if (key == "gauge") {
      parse_gauge(val, cfg);
    } else if (key == "points") {
      if (!val.is_object())
        throw ConfigError("config: points must be an object");
      for (const auto& [pk, pv] : val.items()) {
        if (pk == "count")
          cfg.points.count = pv.get<int>();
        else if (pk == "seed")
          cfg.points.seed = pv.get<std::uint64_t>();
        else if (pk == "box") {
          cfg.points.box = parse_box(pv, "points");
          cfg.points.box_set = true;
        } else {
          throw ConfigError("config: unknown points key '" + pk + "'");
        }
      }
      if (cfg.points.count < 1)
        throw ConfigError("config: points count must be at least 1");
    } else if (key == "scheme") {
      if (!val.is_object())
        throw ConfigError("config: scheme must be an object");
      for (const auto& [sk, sv] : val.items()) {
        if (sk == "step")
          cfg.scheme.step = sv.get<double>();
        else if (sk == "order")
          cfg.scheme.order = sv.get<int>();
        else if (sk == "richardson")
          cfg.scheme.richardson = sv.get<bool>();
        else
          throw ConfigError("config: unknown scheme key '" + sk + "'");
      }
      if (!(cfg.scheme.step > 0.0))
        throw ConfigError("config: scheme step must be positive");
      if (cfg.scheme.order != 2 && cfg.scheme.order != 4)
        throw ConfigError("config: scheme order must be 2 or 4");
    } else if (key == "variant") {
      cfg.variant = variant_from_name(val.get<std::string>());
    } else if (key == "tolerances") {
      if (!val.is_object())
        throw ConfigError("config: tolerances must be an object");
      for (const auto& [tk, tv] : val.items()) {
        const double t = tv.get<double>();
        if (!(t > 0.0))
          throw ConfigError("config: tolerance for '" + tk +
                            "' must be positive");
        cfg.tolerances[tk] = t;
      }
    } else if (key == "output") {
      if (!val.is_object())
        throw ConfigError("config: output must be an object");
      for (const auto& [ok, ov] : val.items()) {
        if (ok == "json")
          cfg.output.json_path = ov.get<std::string>();
        else if (ok == "pretty")
          cfg.output.pretty = ov.get<bool>();
        else
          throw ConfigError("config: unknown output key '" + ok + "'");
      }
    } else if (key == "defect") {
      if (!val.is_object())
        throw ConfigError("config: defect must be an object");
      cfg.defect.enabled = true;
      for (const auto& [dk, dv] : val.items()) {
        if (dk == "gamma") {
          if (!dv.is_array() || dv.size() != 3)
            throw ConfigError("config: defect gamma must be [k, a, b]");
          cfg.defect.k = dv[0].get<int>();
          cfg.defect.a = dv[1].get<int>();
          cfg.defect.b = dv[2].get<int>();
          for (int idx : {cfg.defect.k, cfg.defect.a, cfg.defect.b})
            if (idx < 0 || idx > 3)
              throw ConfigError("config: defect indices must be in [0,3]");
        } else if (dk == "amount") {
          cfg.defect.amount = dv.get<double>();
        } else {
          throw ConfigError("config: unknown defect key '" + dk + "'");
        }
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  for (const auto& [name, tol] : cfg.tolerances) {
    (void)tol;
    if (default_tolerances().find(name) == default_tolerances().end())
      throw ConfigError("config: unknown check name in tolerances: '" + name +
                        "'");
  }
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  std::ostringstream o;
  o << "{\"spacetime\":{\"name\":\"" << json_escape(cfg.spacetime) << "\"";
  o << ",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : cfg.params.scalars) {
    if (!first) o << ",";
    first = false;
    o << "\"" << json_escape(k) << "\":" << fmt_double(v);
  }
  o << "}";
  if (cfg.params.has_poly) {
    o << ",\"poly\":[";
    for (int k = 0; k < 4; ++k) {
      if (k) o << ",";
      o << poly_to_json(cfg.params.poly[k]).dump();
    }
    o << "],\"box\":[";
    for (int k = 0; k < 4; ++k) {
      if (k) o << ",";
      o << "[" << fmt_double(cfg.params.box[k][0]) << ","
        << fmt_double(cfg.params.box[k][1]) << "]";
    }
    o << "]";
  }
  o << "},\"frame\":\"" << json_escape(cfg.frame) << "\"";
  if (cfg.frame == "custom") {
    o << ",\"frame_entries\":[";
    for (int k = 0; k < 16; ++k) {
      if (k) o << ",";
      o << poly_to_json(cfg.custom_frame_entries[k]).dump();
    }
    o << "]";
  }
  o << ",\"gauge\":";
  if (!cfg.gauge.enabled) {
    o << "\"none\"";
  } else {
    o << "{\"seed\":" << cfg.gauge.seed << ",\"degree\":" << cfg.gauge.degree
      << ",\"amplitude\":" << fmt_double(cfg.gauge.amplitude) << "}";
  }
  o << ",\"points\":{\"count\":" << cfg.points.count
    << ",\"seed\":" << cfg.points.seed;
  if (cfg.points.box_set) {
    o << ",\"box\":[";
    for (int k = 0; k < 4; ++k) {
      if (k) o << ",";
      o << "[" << fmt_double(cfg.points.box[k][0]) << ","
        << fmt_double(cfg.points.box[k][1]) << "]";
    }
    o << "]";
  }
  o << "},\"scheme\":{\"step\":" << fmt_double(cfg.scheme.step)
    << ",\"order\":" << cfg.scheme.order << ",\"richardson\":"
    << (cfg.scheme.richardson ? "true" : "false") << "}";
  o << ",\"variant\":\"" << variant_name(cfg.variant) << "\"";
  o << ",\"tolerances\":{";
  first = true;
  for (const auto& [k, v] : cfg.tolerances) {
    if (!first) o << ",";
    first = false;
    o << "\"" << json_escape(k) << "\":" << fmt_double(v);
  }
  o << "}";
  if (cfg.defect.enabled) {
    o << ",\"defect\":{\"gamma\":[" << cfg.defect.k << "," << cfg.defect.a
      << "," << cfg.defect.b
      << "],\"amount\":" << fmt_double(cfg.defect.amount) << "}";
  }
  o << "}";
  return o.str();
}

SpacetimeModel build_model(const RunConfig& cfg) {
  return make_builtin_spacetime(cfg.spacetime, cfg.params);
}

FrameField build_frame(const RunConfig& cfg, const SpacetimeModel& model) {
  if (cfg.frame == "tetrad") return orthonormal_tetrad(model);
  if (cfg.frame == "coordinate") return coordinate_frame(model);
  if (cfg.frame == "custom") return custom_frame(cfg.custom_frame_entries);
  throw ConfigError("config: frame must be tetrad, coordinate, or custom");
}

SpinorData inject_defect(const SpinorData& data, const DefectConfig& defect) {
  auto eval = data.eval;
  const int k = defect.k, a = defect.a, b = defect.b;
  const double amount = defect.amount;
  SpinorData out;
  out.constant_components = data.constant_components;
  out.eval = [eval, k, a, b, amount](const SpacetimePoint& p) {
    SpinorDataValues vals = eval(p);
    vals.gamma[k].m[a][b] += amount;
    return vals;
  };
  return out;
}

double resolve_tol(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.tolerances.find(name);
  if (it != cfg.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

struct ResidualAccumulator {
  double worst = 0.0;
  Vec4 worst_point{};
  bool touched = false;

  void update(double r, const Vec4& x) {
    if (!touched || r > worst) {
      worst = r;
      worst_point = x;
    }
    touched = true;
  }
};

double ten4c_conj_mismatch(const Ten4c& conj_assembled, const Ten4c& plain) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          worst = std::max(worst,
                           std::abs(conj_assembled.t[a][b][i][j] -
                                    std::conj(plain.t[a][b][i][j])));
  return worst;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = [] {
    std::map<std::string, double> m;
    for (const CheckDef& def : kCheckDefs) m[def.name] = def.tol;
    return m;
  }();
  return defaults;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  try {
    return parse_config_object(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

VerificationReport run_verify(const RunConfig& config) {
  const SpacetimeModel model = build_model(config);
  const FrameField frame = build_frame(config, model);
  const Box box =
      config.points.box_set ? config.points.box : default_sampling_box(model);

  const SpinorData base = canonical_data(model, frame);
  GaugeField gauge;
  SpinorData data = base;
  if (config.gauge.enabled) {
    gauge = make_random_gauge(box, config.gauge.seed, config.gauge.degree,
                              config.gauge.amplitude);
    data = gauged_data(base, gauge);
  }
  if (config.defect.enabled) data = inject_defect(data, config.defect);

  RunConfig effective = config;
  effective.points.box = box;
  effective.points.box_set = true;
  for (const CheckDef& def : kCheckDefs)
    effective.tolerances[def.name] = resolve_tol(config, def.name);

  VerificationReport rep;
  rep.version = kVersion;
  rep.config_echo = config_to_json(effective);

  const bool holonomic = frame.kind == FrameField::Kind::holonomic;
  const DerivativeScheme& scheme = config.scheme;
  const Mat4c ident = identity4c();

  std::map<std::string, ResidualAccumulator> acc;
  auto upd = [&acc](const char* name, double r, const Vec4& x) {
    acc[name].update(r, x);
  };

  try {
    const std::vector<SpacetimePoint> points = sample_points(
        model, box, config.points.count, config.points.seed);

    for (const SpacetimePoint& p : points) {
      const SpinorDataValues vals = data.eval(p);
      const Mat4c Pb = 0.5 * (ident + vals.H);
      const Mat4c Pc = 0.5 * (ident - vals.H);

      upd("algebra-involution", max_abs(matmul(vals.H, vals.H) - ident), p.x);
      upd("algebra-metric-inverse",
          max_abs(matmul(vals.d_hi, vals.d_lo) - ident), p.x);
      upd("algebra-projector-sum",
          max_abs(matmul(Pb, Pb) + matmul(Pc, Pc) - ident), p.x);

      double comm_d = 0.0;
      comm_d = std::max(comm_d, max_abs(matmul(vals.d_lo, Pb) -
                                        matmul(transpose(Pb), vals.d_lo)));
      comm_d = std::max(comm_d, max_abs(matmul(vals.d_lo, Pc) -
                                        matmul(transpose(Pc), vals.d_lo)));
      comm_d = std::max(comm_d, max_abs(matmul(vals.d_hi, transpose(Pb)) -
                                        matmul(Pb, vals.d_hi)));
      comm_d = std::max(comm_d, max_abs(matmul(vals.d_hi, transpose(Pc)) -
                                        matmul(Pc, vals.d_hi)));
      upd("algebra-commutation-d", comm_d, p.x);

      double comm_g = 0.0;
      for (int k = 0; k < 4; ++k) {
        comm_g = std::max(comm_g, max_abs(matmul(vals.gamma[k], Pb) -
                                          matmul(Pc, vals.gamma[k])));
        comm_g = std::max(comm_g, max_abs(matmul(vals.gamma[k], Pc) -
                                          matmul(Pb, vals.gamma[k])));
      }
      upd("algebra-commutation-gamma", comm_g, p.x);

      GammaSet circ_bul{}, bul_circ{};
      for (int k = 0; k < 4; ++k) {
        circ_bul[k] = matmul(Pc, matmul(vals.gamma[k], Pb));
        bul_circ[k] = matmul(Pb, matmul(vals.gamma[k], Pc));
      }
      double split = 0.0;
      for (int n = 0; n < 4; ++n)
        for (int r = 0; r < 4; ++r)
          split = std::max(
              split, max_abs(matmul(circ_bul[n], bul_circ[r]) +
                             matmul(bul_circ[n], circ_bul[r]) -
                             matmul(vals.gamma[n], vals.gamma[r])));
      upd("algebra-gamma-split", split, p.x);

      const Mat4d ginv = frame_metric_inverse(model, frame, p);
      upd("gamma-identity",
          gamma_identity_residual(vals.gamma, ginv, vals.d_lo, vals.d_hi,
                                  vals.H),
          p.x);

      const Ten3d chris = christoffel_frame(model, frame, p, scheme);
      const StructureConstants sc =
          structure_constants(frame, model, p, scheme);
      double torsion = 0.0;
      double symmetry = 0.0;
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            torsion = std::max(
                torsion, std::fabs(chris.t[k][i][j] - chris.t[k][j][i] -
                                   sc.c.t[k][i][j]));
            symmetry = std::max(
                symmetry, std::fabs(chris.t[k][i][j] - chris.t[k][j][i]));
          }
      upd("torsion", torsion, p.x);
      if (holonomic) upd("holonomic-symmetry", symmetry, p.x);

      const Ten3c A_dec = spin_connection_general(
          model, frame, data, SpinVariant::decorated, p, scheme);
      const Ten3c A_proj = spin_connection_general(
          model, frame, data, SpinVariant::projector, p, scheme);
      const Ten3c A_comp = spin_connection_general(
          model, frame, data, SpinVariant::compact, p, scheme);
      double agree = std::max(
          {max_abs(A_dec - A_proj), max_abs(A_dec - A_comp),
           max_abs(A_proj - A_comp)});
      if (data.constant_components) {
        const Ten3c A_const =
            spin_connection_special(chris, vals.gamma, ginv);
        agree = std::max({agree, max_abs(A_const - A_dec),
                          max_abs(A_const - A_proj),
                          max_abs(A_const - A_comp)});
      }
      upd("variant-agreement", agree, p.x);

      const Ten3c& A = config.variant == SpinVariant::projector  ? A_proj
                       : config.variant == SpinVariant::compact ? A_comp
                                                                : A_dec;

      const MetricityReport met =
          metricity_report(model, frame, data, config.variant, {p}, scheme,
                           config.points.seed + 0x9e3779b9u);
      upd("metricity-metric", met.metric, p.x);
      upd("metricity-spinor-metric", met.spinor_metric, p.x);
      upd("metricity-gamma", met.gamma, p.x);
      upd("metricity-chirality", met.chirality, p.x);
      upd("metricity-dirac-form", met.dirac_form, p.x);
      upd("metricity-spinor-metric-conj", met.spinor_metric_conj, p.x);
      upd("metricity-chirality-conj", met.chirality_conj, p.x);
      upd("metricity-gamma-conj", met.gamma_conj, p.x);
      upd("tau-naturality", met.tau_naturality, p.x);

      const Ten3c Abar = conjugate_connection(A);
      double reality = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
          for (int b = 0; b < 4; ++b)
            reality = std::max(reality, std::abs(Abar.t[a][i][b] -
                                                 std::conj(A.t[a][i][b])));
      upd("connection-reality", reality, p.x);

      const Mat4d E = frame.components(p);
      auto eval = data.eval;
      double chih = 0.0;
      for (int i = 0; i < 4; ++i) {
        const Mat4c formula =
            chirality_derivative(frame, data, model, i, p, scheme);
        const Vec4 v{E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
        const Mat4c fd = directional_derivative(
            [&eval](const SpacetimePoint& q) { return eval(q).H; }, v, p,
            scheme);
        chih = std::max(chih, max_abs(formula - fd));
      }
      upd("chirality-derivative", chih, p.x);

      const Ten4d riem = riemann_frame(model, frame, p, scheme);
      const Ten4c rspin = spinor_curvature(model, frame, data, config.variant,
                                           p, scheme, false);
      upd("curvature-relation",
          curvature_relation_residual(riem, rspin, vals.gamma, ginv), p.x);
      const Ten4c rconj = spinor_curvature(model, frame, data, config.variant,
                                           p, scheme, true);
      upd("curvature-reality", ten4c_conj_mismatch(rconj, rspin), p.x);

      if (config.gauge.enabled) {
        const Ten3c A_base = spin_connection_general(
            model, frame, base, config.variant, p, scheme);
        const Mat4c S = gauge.S(p);
        const Mat4c S_inv = gauge.S_inv(p);
        double gc = 0.0;
        for (int i = 0; i < 4; ++i) {
          Mat4c Ab_i, Ag_i;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              Ab_i.m[a][b] = A_base.t[a][i][b];
              Ag_i.m[a][b] = A.t[a][i][b];
            }
          const Vec4 v{E.m[0][i], E.m[1][i], E.m[2][i], E.m[3][i]};
          const Mat4c dS = directional_derivative(gauge.S, v, p, scheme);
          const Mat4c expected =
              matmul(S_inv, matmul(Ab_i, S)) + matmul(S_inv, dS);
          gc = std::max(gc, max_abs(Ag_i - expected));
        }
        upd("gauge-covariance-connection", gc, p.x);

        const Ten4c r_base = spinor_curvature(
            model, frame, base, config.variant, p, scheme, false);
        double gr = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            Mat4c rb, rg;
            for (int a = 0; a < 4; ++a)
              for (int b = 0; b < 4; ++b) {
                rb.m[a][b] = r_base.t[a][b][i][j];
                rg.m[a][b] = rspin.t[a][b][i][j];
              }
            gr = std::max(gr,
                          max_abs(rg - matmul(S_inv, matmul(rb, S))));
          }
        upd("gauge-covariance-curvature", gr, p.x);
      }
    }
  } catch (const DomainError& e) {
    rep.error = e.what();
  }

  for (const CheckDef& def : kCheckDefs) {
    CheckResult res;
    res.name = def.name;
    res.tolerance = resolve_tol(config, def.name);
    const bool is_gauge_check =
        res.name == "gauge-covariance-connection" ||
        res.name == "gauge-covariance-curvature";
    const bool applicable =
        (res.name != "holonomic-symmetry" || holonomic) &&
        (!is_gauge_check || config.gauge.enabled);
    auto it = acc.find(res.name);
    if (!applicable || it == acc.end()) {
      res.skipped = true;
      res.pass = true;
    } else {
      res.max_residual = it->second.worst;
      res.worst_point = it->second.worst_point;
      res.pass = res.max_residual <= res.tolerance;
    }
    if (!res.pass) rep.all_pass = false;
    rep.checks.push_back(res);
  }
  if (!rep.error.empty()) rep.all_pass = false;
  return rep;
}

CompareTable run_compare(const RunConfig& config) {
  const SpacetimeModel model = build_model(config);
  const FrameField frame = build_frame(config, model);
  const Box box =
      config.points.box_set ? config.points.box : default_sampling_box(model);

  const SpinorData base = canonical_data(model, frame);
  SpinorData data = base;
  if (config.gauge.enabled) {
    const GaugeField gauge =
        make_random_gauge(box, config.gauge.seed, config.gauge.degree,
                          config.gauge.amplitude);
    data = gauged_data(base, gauge);
  }
  if (config.defect.enabled) data = inject_defect(data, config.defect);

  CompareTable table;
  table.labels = {"constant", "decorated", "projector", "compact"};
  table.applicable = {data.constant_components, true, true, true};
  table.tolerance = resolve_tol(config, "variant-agreement");

  const std::vector<SpacetimePoint> points =
      sample_points(model, box, config.points.count, config.points.seed);
  for (const SpacetimePoint& p : points) {
    const SpinorDataValues vals = data.eval(p);
    const Mat4d ginv = frame_metric_inverse(model, frame, p);
    const Ten3d chris = christoffel_frame(model, frame, p, config.scheme);

    Ten3c A[4];
    if (table.applicable[0])
      A[0] = spin_connection_special(chris, vals.gamma, ginv);
    A[1] = spin_connection_general(model, frame, data, SpinVariant::decorated,
                                   p, config.scheme);
    A[2] = spin_connection_general(model, frame, data, SpinVariant::projector,
                                   p, config.scheme);
    A[3] = spin_connection_general(model, frame, data, SpinVariant::compact,
                                   p, config.scheme);

    for (int u = 0; u < 4; ++u)
      for (int w = u + 1; w < 4; ++w) {
        if (!table.applicable[u] || !table.applicable[w]) continue;
        const double dev = max_abs(A[u] - A[w]);
        table.dev[u][w] = std::max(table.dev[u][w], dev);
        table.dev[w][u] = table.dev[u][w];
      }
  }

  for (int u = 0; u < 4; ++u)
    for (int w = 0; w < 4; ++w)
      if (table.applicable[u] && table.applicable[w] &&
          table.dev[u][w] > table.tolerance)
        table.all_pass = false;
  return table;
}

namespace {

void append_mat4c(std::ostringstream& o, const Mat4c& m) {
  o << "[";
  for (int i = 0; i < 4; ++i) {
    if (i) o << ",";
    o << "[";
    for (int j = 0; j < 4; ++j) {
      if (j) o << ",";
      o << "[" << fmt_double(m.m[i][j].real()) << ","
        << fmt_double(m.m[i][j].imag()) << "]";
    }
    o << "]";
  }
  o << "]";
}

void append_ten3d(std::ostringstream& o, const Ten3d& t) {
  o << "[";
  for (int k = 0; k < 4; ++k) {
    if (k) o << ",";
    o << "[";
    for (int i = 0; i < 4; ++i) {
      if (i) o << ",";
      o << "[";
      for (int j = 0; j < 4; ++j) {
        if (j) o << ",";
        o << fmt_double(t.t[k][i][j]);
      }
      o << "]";
    }
    o << "]";
  }
  o << "]";
}

void append_ten3c(std::ostringstream& o, const Ten3c& t) {
  o << "[";
  for (int a = 0; a < 4; ++a) {
    if (a) o << ",";
    o << "[";
    for (int i = 0; i < 4; ++i) {
      if (i) o << ",";
      o << "[";
      for (int b = 0; b < 4; ++b) {
        if (b) o << ",";
        o << "[" << fmt_double(t.t[a][i][b].real()) << ","
          << fmt_double(t.t[a][i][b].imag()) << "]";
      }
      o << "]";
    }
    o << "]";
  }
  o << "]";
}

void append_ten4d(std::ostringstream& o, const Ten4d& t) {
  o << "[";
  for (int a = 0; a < 4; ++a) {
    if (a) o << ",";
    o << "[";
    for (int b = 0; b < 4; ++b) {
      if (b) o << ",";
      o << "[";
      for (int i = 0; i < 4; ++i) {
        if (i) o << ",";
        o << "[";
        for (int j = 0; j < 4; ++j) {
          if (j) o << ",";
          o << fmt_double(t.t[a][b][i][j]);
        }
        o << "]";
      }
      o << "]";
    }
    o << "]";
  }
  o << "]";
}

void append_ten4c(std::ostringstream& o, const Ten4c& t) {
  o << "[";
  for (int a = 0; a < 4; ++a) {
    if (a) o << ",";
    o << "[";
    for (int b = 0; b < 4; ++b) {
      if (b) o << ",";
      o << "[";
      for (int i = 0; i < 4; ++i) {
        if (i) o << ",";
        o << "[";
        for (int j = 0; j < 4; ++j) {
          if (j) o << ",";
          o << "[" << fmt_double(t.t[a][b][i][j].real()) << ","
            << fmt_double(t.t[a][b][i][j].imag()) << "]";
        }
        o << "]";
      }
      o << "]";
    }
    o << "]";
  }
  o << "]";
}

void pretty_mat4c(std::ostringstream& o, const std::string& label,
                  const Mat4c& m) {
  o << label << "\n";
  for (int i = 0; i < 4; ++i) {
    o << "   ";
    for (int j = 0; j < 4; ++j) {
      char buf[80];
      std::snprintf(buf, sizeof buf, " (%+.6f %+.6fi)", m.m[i][j].real(),
                    m.m[i][j].imag());
      o << buf;
    }
    o << "\n";
  }
}

}  // namespace

std::string run_inspect(const RunConfig& config, const SpacetimePoint& point,
                        const std::string& what, bool json_mode) {
  const SpacetimeModel model = build_model(config);
  const FrameField frame = build_frame(config, model);
  const Box box =
      config.points.box_set ? config.points.box : default_sampling_box(model);

  if (!model.admissible(point)) {
    std::ostringstream msg;
    msg << model.name << ": point (" << point.x[0] << ", " << point.x[1]
        << ", " << point.x[2] << ", " << point.x[3]
        << ") outside chart domain";
    throw DomainError(msg.str());
  }

  const SpinorData base = canonical_data(model, frame);
  SpinorData data = base;
  if (config.gauge.enabled) {
    const GaugeField gauge =
        make_random_gauge(box, config.gauge.seed, config.gauge.degree,
                          config.gauge.amplitude);
    data = gauged_data(base, gauge);
  }
  if (config.defect.enabled) data = inject_defect(data, config.defect);

  const DerivativeScheme& scheme = config.scheme;
  std::ostringstream o;

  if (what == "connection") {
    const Ten3d chris = christoffel_frame(model, frame, point, scheme);
    const Mat4d ginv = frame_metric_inverse(model, frame, point);
    const SpinorDataValues vals = data.eval(point);
    const Ten3c A_dec = spin_connection_general(
        model, frame, data, SpinVariant::decorated, point, scheme);
    const Ten3c A_proj = spin_connection_general(
        model, frame, data, SpinVariant::projector, point, scheme);
    const Ten3c A_comp = spin_connection_general(
        model, frame, data, SpinVariant::compact, point, scheme);

    if (json_mode) {
      o << "{\"christoffel\":";
      append_ten3d(o, chris);
      if (data.constant_components) {
        o << ",\"spin_connection_constant\":";
        append_ten3c(o, spin_connection_special(chris, vals.gamma, ginv));
      }
      o << ",\"spin_connection_decorated\":";
      append_ten3c(o, A_dec);
      o << ",\"spin_connection_projector\":";
      append_ten3c(o, A_proj);
      o << ",\"spin_connection_compact\":";
      append_ten3c(o, A_comp);
      o << "}";
    } else {
      o << "connection at (" << point.x[0] << ", " << point.x[1] << ", "
        << point.x[2] << ", " << point.x[3] << ")\n";
      o << "christoffel (component, direction, argument) nonzero entries:\n";
      bool any = false;
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            if (std::fabs(chris.t[k][i][j]) > 1e-12) {
              char buf[96];
              std::snprintf(buf, sizeof buf, "  [%d][%d][%d] = %+.10e\n", k,
                            i, j, chris.t[k][i][j]);
              o << buf;
              any = true;
            }
      if (!any) o << "  all zero\n";
      for (int i = 0; i < 4; ++i) {
        Mat4c Ai;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) Ai.m[a][b] = A_dec.t[a][i][b];
        pretty_mat4c(o, "spin connection, direction " + std::to_string(i) +
                            " (decorated formula):",
                     Ai);
      }
      o << "max deviation between formulas: "
        << fmt_double(std::max({max_abs(A_dec - A_proj),
                                max_abs(A_dec - A_comp),
                                max_abs(A_proj - A_comp)}))
        << "\n";
    }
    return o.str();
  }

  if (what == "curvature") {
    const SpinorDataValues vals = data.eval(point);
    const Mat4d ginv = frame_metric_inverse(model, frame, point);
    const Ten4d riem = riemann_frame(model, frame, point, scheme);
    const Ten4c rspin = spinor_curvature(model, frame, data, config.variant,
                                         point, scheme, false);
    const double rel =
        curvature_relation_residual(riem, rspin, vals.gamma, ginv);
    const double tol = resolve_tol(config, "curvature-relation");
    if (json_mode) {
      o << "{\"riemann\":";
      append_ten4d(o, riem);
      o << ",\"spinor_curvature\":";
      append_ten4c(o, rspin);
      o << ",\"curvature_relation_residual\":" << fmt_double(rel);
      o << ",\"tolerance\":" << fmt_double(tol);
      o << ",\"pass\":" << (rel <= tol ? "true" : "false") << "}";
    } else {
      o << "curvature at (" << point.x[0] << ", " << point.x[1] << ", "
        << point.x[2] << ", " << point.x[3] << ")\n";
      o << "riemann nonzero entries (component, argument, pair i, j):\n";
      bool any = false;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (std::fabs(riem.t[a][b][i][j]) > 1e-10) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "  [%d][%d][%d][%d] = %+.10e\n",
                              a, b, i, j, riem.t[a][b][i][j]);
                o << buf;
                any = true;
              }
      if (!any) o << "  all zero\n";
      o << "spinor curvature max magnitude: "
        << fmt_double([&] {
             double m = 0.0;
             for (int a = 0; a < 4; ++a)
               for (int b = 0; b < 4; ++b)
                 for (int i = 0; i < 4; ++i)
                   for (int j = 0; j < 4; ++j)
                     m = std::max(m, std::abs(rspin.t[a][b][i][j]));
             return m;
           }())
        << "\n";
      o << "curvature-relation: " << fmt_double(rel) << " (tol "
        << fmt_double(tol) << ") " << (rel <= tol ? "PASS" : "FAIL") << "\n";
    }
    return o.str();
  }

  if (what == "algebra") {
    const SpinorDataValues vals = data.eval(point);
    const Mat4d ginv = frame_metric_inverse(model, frame, point);
    const Mat4c ident = identity4c();
    const double inv_res = max_abs(matmul(vals.H, vals.H) - ident);
    const double met_res = max_abs(matmul(vals.d_hi, vals.d_lo) - ident);
    const double gam_res = gamma_identity_residual(vals.gamma, ginv,
                                                   vals.d_lo, vals.d_hi,
                                                   vals.H);
    if (json_mode) {
      o << "{\"d_lo\":";
      append_mat4c(o, vals.d_lo);
      o << ",\"d_hi\":";
      append_mat4c(o, vals.d_hi);
      o << ",\"chirality\":";
      append_mat4c(o, vals.H);
      o << ",\"dirac_form\":";
      append_mat4c(o, vals.D);
      o << ",\"gamma\":[";
      for (int k = 0; k < 4; ++k) {
        if (k) o << ",";
        append_mat4c(o, vals.gamma[k]);
      }
      o << "],\"involution_residual\":" << fmt_double(inv_res);
      o << ",\"metric_inverse_residual\":" << fmt_double(met_res);
      o << ",\"gamma_identity_residual\":" << fmt_double(gam_res) << "}";
    } else {
      o << "spinor algebra at (" << point.x[0] << ", " << point.x[1] << ", "
        << point.x[2] << ", " << point.x[3] << ")\n";
      pretty_mat4c(o, "spinor metric (lower):", vals.d_lo);
      pretty_mat4c(o, "spinor metric (upper):", vals.d_hi);
      pretty_mat4c(o, "chirality operator:", vals.H);
      pretty_mat4c(o, "dirac form:", vals.D);
      for (int k = 0; k < 4; ++k)
        pretty_mat4c(o, "gamma " + std::to_string(k) + ":", vals.gamma[k]);
      o << "involution residual: " << fmt_double(inv_res) << "\n";
      o << "metric inverse residual: " << fmt_double(met_res) << "\n";
      o << "gamma identity residual: " << fmt_double(gam_res) << "\n";
    }
    return o.str();
  }

  throw ConfigError("inspect: unknown target '" + what +
                    "' (expected connection, curvature, or algebra)");
}

std::string report_to_json(const VerificationReport& report) {
  std::ostringstream o;
  o << "{\"version\":\"" << json_escape(report.version) << "\"";
  o << ",\"config\":" << report.config_echo;
  o << ",\"checks\":[";
  bool first = true;
  for (const CheckResult& c : report.checks) {
    if (!first) o << ",";
    first = false;
    o << "{\"name\":\"" << json_escape(c.name) << "\"";
    if (c.skipped) {
      o << ",\"skipped\":true";
    } else {
      o << ",\"max_residual\":" << fmt_double(c.max_residual);
      o << ",\"tolerance\":" << fmt_double(c.tolerance);
      o << ",\"worst_point\":[" << fmt_double(c.worst_point[0]) << ","
        << fmt_double(c.worst_point[1]) << "," << fmt_double(c.worst_point[2])
        << "," << fmt_double(c.worst_point[3]) << "]";
      o << ",\"pass\":" << (c.pass ? "true" : "false");
    }
    o << "}";
  }
  o << "],\"all_pass\":" << (report.all_pass ? "true" : "false");
  if (!report.error.empty())
    o << ",\"error\":\"" << json_escape(report.error) << "\"";
  o << "}";
  return o.str();
}

std::string report_to_pretty(const VerificationReport& report,
                             double wall_seconds) {
  std::ostringstream o;
  o << "verification report (version " << report.version << ")\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-32s %-14s %-12s %s\n", "check",
                "max residual", "tolerance", "status");
  o << line;
  for (const CheckResult& c : report.checks) {
    if (c.skipped) {
      std::snprintf(line, sizeof line, "  %-32s %-14s %-12s %s\n",
                    c.name.c_str(), "-", "-", "SKIP");
    } else {
      std::snprintf(line, sizeof line, "  %-32s %-14.4e %-12.1e %s\n",
                    c.name.c_str(), c.max_residual, c.tolerance,
                    c.pass ? "PASS" : "FAIL");
    }
    o << line;
  }
  if (!report.error.empty()) o << "error: " << report.error << "\n";
  o << (report.all_pass ? "all checks passed" : "CHECK FAILURES PRESENT")
    << "\n";
  std::snprintf(line, sizeof line, "wall time: %.3f s\n", wall_seconds);
  o << line;
  return o.str();
}

std::string compare_to_json(const CompareTable& table) {
  std::ostringstream o;
  o << "{\"labels\":[";
  for (int k = 0; k < 4; ++k) {
    if (k) o << ",";
    o << "\"" << table.labels[k] << "\"";
  }
  o << "],\"applicable\":[";
  for (int k = 0; k < 4; ++k) {
    if (k) o << ",";
    o << (table.applicable[k] ? "true" : "false");
  }
  o << "],\"tolerance\":" << fmt_double(table.tolerance);
  o << ",\"deviations\":[";
  for (int u = 0; u < 4; ++u) {
    if (u) o << ",";
    o << "[";
    for (int w = 0; w < 4; ++w) {
      if (w) o << ",";
      if (table.applicable[u] && table.applicable[w])
        o << fmt_double(table.dev[u][w]);
      else
        o << "null";
    }
    o << "]";
  }
  o << "],\"all_pass\":" << (table.all_pass ? "true" : "false") << "}";
  return o.str();
}

std::string compare_to_pretty(const CompareTable& table, double wall_seconds) {
  std::ostringstream o;
  char line[200];
  std::snprintf(line, sizeof line,
                "pairwise max deviation between spin-connection formulas "
                "(tolerance %.3g)\n",
                table.tolerance);
  o << line;
  std::snprintf(line, sizeof line, "  %-12s", "");
  o << line;
  for (int k = 0; k < 4; ++k) {
    std::snprintf(line, sizeof line, " %-24s", table.labels[k].c_str());
    o << line;
  }
  o << "\n";
  for (int u = 0; u < 4; ++u) {
    std::snprintf(line, sizeof line, "  %-12s", table.labels[u].c_str());
    o << line;
    for (int w = 0; w < 4; ++w) {
      if (!table.applicable[u] || !table.applicable[w]) {
        std::snprintf(line, sizeof line, " %-24s", "N/A (non-special frame)");
      } else {
        std::snprintf(line, sizeof line, " %-24.6e", table.dev[u][w]);
      }
      o << line;
    }
    o << "\n";
  }
  o << (table.all_pass ? "all formulas agree" : "FORMULA DISAGREEMENT")
    << "\n";
  std::snprintf(line, sizeof line, "wall time: %.3f s\n", wall_seconds);
  o << line;
  return o.str();
}

}  // namespace spinconn
