#include "causal_cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "causal/error.hpp"
#include "causal/estimator.hpp"

namespace causal::cli {

using json = nlohmann::ordered_json;

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Commutator: return "commutator";
    case Quantity::CommutatorOsc: return "commutator_osc";
    case Quantity::CommutatorZeroMode: return "commutator_zero_mode";
    case Quantity::SmearedCommutator: return "smeared_commutator";
    case Quantity::Estimator: return "estimator";
    case Quantity::SignalMagnitude: return "signal_magnitude";
    case Quantity::Reference: return "reference";
  }
  return "unknown";
}

std::optional<Quantity> parse_quantity(std::string_view text) noexcept {
  for (auto q : {Quantity::Commutator, Quantity::CommutatorOsc, Quantity::CommutatorZeroMode,
                 Quantity::SmearedCommutator, Quantity::Estimator, Quantity::SignalMagnitude,
                 Quantity::Reference})
    if (text == to_string(q)) return q;
  return std::nullopt;
}

namespace {

const std::set<std::string> kOptionKeys = {
    "epsilon",         "cutoff",       "open_cutoff", "include_zero_mode",
    "pv_epsilon",      "summation",    "lanczos_sigma", "closed_form",
    "quadrature_nodes", "quadrature_tolerance"};

const std::set<std::string> kGeometryKeys = {
    "x_a", "dx",          "dt",         "t_a",    "duration", "sigma",  "gap",
    "D",   "delta_ratio", "size_ratio", "omegas", "couplings", "states"};

const std::set<std::string> kSweepVariables = {"dt", "L", "D", "delta_ratio", "pv_epsilon",
                                               "cutoff"};

const std::set<std::string> kTopKeys = {"name",   "title",  "notes",   "boundary", "options",
                                        "geometry", "sweep", "series", "outputs", "generator"};

double as_double(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a number");
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "value must be finite");
    return v;
  } catch (const YAML::BadConversion&) {
    throw ConfigError(field, "expected a number, got '" + n.Scalar() + "'");
  }
}

int as_int(const YAML::Node& n, const std::string& field) {
  const double v = as_double(n, field);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(field, "expected an integer");
  return static_cast<int>(v);
}

bool as_bool(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected true or false");
  try {
    return n.as<bool>();
  } catch (const YAML::BadConversion&) {
    throw ConfigError(field, "expected true or false, got '" + n.Scalar() + "'");
  }
}

std::string as_string(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a string");
  return n.Scalar();
}

std::vector<double> as_doubles(const YAML::Node& n, const std::string& field) {
  std::vector<double> out;
  if (n.IsScalar()) {
    out.push_back(as_double(n, field));
  } else if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i)
      out.push_back(as_double(n[i], field + "[" + std::to_string(i) + "]"));
  } else {
    throw ConfigError(field, "expected a number or a list of numbers");
  }
  return out;
}

std::vector<int> as_ints(const YAML::Node& n, const std::string& field) {
  std::vector<int> out;
  if (n.IsScalar()) {
    out.push_back(as_int(n, field));
  } else if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i)
      out.push_back(as_int(n[i], field + "[" + std::to_string(i) + "]"));
  } else {
    throw ConfigError(field, "expected an integer or a list of integers");
  }
  return out;
}

void require_map(const YAML::Node& n, const std::string& field) {
  if (n && !n.IsNull() && !n.IsMap()) throw ConfigError(field, "expected a mapping");
}

void reject_unknown(const YAML::Node& n, const std::set<std::string>& allowed,
                    const std::string& field) {
  if (!n || !n.IsMap()) return;
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key))
      throw ConfigError(field.empty() ? key : field + "." + key, "unknown key");
  }
}

ConfigError from_library(const causal::Error& e, const std::string& prefix) {
  const auto& first = e.issues().front();
  std::string msg = std::string(to_string(first.code)) + ": " + first.message;
  for (std::size_t i = 1; i < e.issues().size(); ++i) {
    const auto& is = e.issues()[i];
    msg += "; " + std::string(to_string(is.code)) + " at " + prefix + is.field + ": " + is.message;
  }
  return ConfigError(prefix + first.field, msg);
}

BoundaryConfig parse_boundary(const YAML::Node& n) {
  if (!n || !n.IsMap()) throw ConfigError("boundary", "missing boundary section");
  reject_unknown(n, {"axes"}, "boundary");
  const auto axes = n["axes"];
  if (!axes || !axes.IsSequence() || axes.size() == 0)
    throw ConfigError("boundary.axes", "expected a nonempty list of axes");
  BoundaryConfig bc;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string f = "boundary.axes[" + std::to_string(i) + "]";
    const auto a = axes[i];
    if (!a.IsMap()) throw ConfigError(f, "expected a mapping with kind and length");
    reject_unknown(a, {"kind", "length"}, f);
    if (!a["kind"]) throw ConfigError(f + ".kind", "missing axis kind");
    const auto kind = parse_axis_kind(as_string(a["kind"], f + ".kind"));
    if (!kind) throw ConfigError(f + ".kind", "expected periodic, neumann, dirichlet or open");
    AxisSpec spec{*kind, std::nullopt};
    if (a["length"] && !a["length"].IsNull()) spec.length = as_double(a["length"], f + ".length");
    bc.axes.push_back(spec);
  }
  return bc;
}

CommutatorOptions parse_options(const YAML::Node& n) {
  CommutatorOptions o;
  if (!n || n.IsNull()) return o;
  require_map(n, "options");
  reject_unknown(n, kOptionKeys, "options");
  if (n["epsilon"] && !n["epsilon"].IsNull()) o.epsilon = as_double(n["epsilon"], "options.epsilon");
  if (n["cutoff"]) o.cutoff = as_ints(n["cutoff"], "options.cutoff");
  if (n["open_cutoff"]) o.open_cutoff = as_double(n["open_cutoff"], "options.open_cutoff");
  if (n["include_zero_mode"])
    o.include_zero_mode = as_bool(n["include_zero_mode"], "options.include_zero_mode");
  if (n["pv_epsilon"]) o.pv_epsilon = as_double(n["pv_epsilon"], "options.pv_epsilon");
  if (n["summation"]) {
    const auto s = parse_summation(as_string(n["summation"], "options.summation"));
    if (!s) throw ConfigError("options.summation", "expected pairwise or compensated");
    o.summation = *s;
  }
  if (n["lanczos_sigma"]) o.lanczos_sigma = as_bool(n["lanczos_sigma"], "options.lanczos_sigma");
  if (n["closed_form"]) o.closed_form = as_bool(n["closed_form"], "options.closed_form");
  if (n["quadrature_nodes"])
    o.quadrature_nodes = as_int(n["quadrature_nodes"], "options.quadrature_nodes");
  if (n["quadrature_tolerance"])
    o.quadrature_tolerance = as_double(n["quadrature_tolerance"], "options.quadrature_tolerance");
  return o;
}

struct GeometryInput {
  std::vector<double> x_a;
  std::vector<double> dx;
  double dt = 0.0;
  double t_a = 0.0;
  double duration = 0.0;
  double sigma = 0.0;
  std::optional<double> gap, D, delta_ratio, size_ratio;
  std::array<double, 2> omegas{0.0, 0.0};
  std::array<double, 2> couplings{1.0, 1.0};
  std::optional<QubitState> state_a, state_b;
};

QubitState parse_state(const YAML::Node& n, const std::string& f) {
  if (!n.IsMap()) throw ConfigError(f, "expected {alpha, beta}");
  reject_unknown(n, {"alpha", "beta"}, f);
  QubitState s;
  if (n["alpha"]) s.alpha = as_double(n["alpha"], f + ".alpha");
  if (n["beta"]) {
    const auto b = as_doubles(n["beta"], f + ".beta");
    if (b.size() > 2) throw ConfigError(f + ".beta", "expected [re, im]");
    s.beta = Complex(b[0], b.size() > 1 ? b[1] : 0.0);
  }
  try {
    s.validate(f);
  } catch (const causal::Error& e) {
    throw from_library(e, "");
  }
  return s;
}

GeometryInput parse_geometry(const YAML::Node& n, int dim, bool require_separation) {
  GeometryInput g;
  require_map(n, "geometry");
  reject_unknown(n, kGeometryKeys, "geometry");
  auto has = [&](const char* k) { return n && n.IsMap() && n[k] && !n[k].IsNull(); };
  g.x_a = has("x_a") ? as_doubles(n["x_a"], "geometry.x_a") : std::vector<double>(dim, 0.0);
  if (static_cast<int>(g.x_a.size()) != dim)
    throw ConfigError("geometry.x_a", "expected " + std::to_string(dim) + " coordinates");
  if (require_separation && !has("dx") && !has("D")) throw ConfigError("geometry.dx", "separation is required");
  g.dx = has("dx") ? as_doubles(n["dx"], "geometry.dx") : std::vector<double>(dim, 0.0);
  if (static_cast<int>(g.dx.size()) != dim)
    throw ConfigError("geometry.dx", "expected " + std::to_string(dim) + " coordinates");
  if (has("dt")) g.dt = as_double(n["dt"], "geometry.dt");
  if (has("t_a")) g.t_a = as_double(n["t_a"], "geometry.t_a");
  if (has("duration")) g.duration = as_double(n["duration"], "geometry.duration");
  if (has("sigma")) g.sigma = as_double(n["sigma"], "geometry.sigma");
  if (has("gap")) g.gap = as_double(n["gap"], "geometry.gap");
  if (has("D")) g.D = as_double(n["D"], "geometry.D");
  if (has("delta_ratio")) g.delta_ratio = as_double(n["delta_ratio"], "geometry.delta_ratio");
  if (has("size_ratio")) g.size_ratio = as_double(n["size_ratio"], "geometry.size_ratio");
  auto pair = [&](const char* k, std::array<double, 2>& out) {
    if (!has(k)) return;
    const auto v = as_doubles(n[k], std::string("geometry.") + k);
    if (v.size() != 2) throw ConfigError(std::string("geometry.") + k, "expected [A, B]");
    out = {v[0], v[1]};
  };
  pair("omegas", g.omegas);
  pair("couplings", g.couplings);
  if (has("states")) {
    const auto s = n["states"];
    if (!s.IsMap()) throw ConfigError("geometry.states", "expected {A: ..., B: ...}");
    reject_unknown(s, {"A", "B"}, "geometry.states");
    if (s["A"]) g.state_a = parse_state(s["A"], "geometry.states.A");
    if (s["B"]) g.state_b = parse_state(s["B"], "geometry.states.B");
  }
  if (g.duration < 0.0) throw ConfigError("geometry.duration", "must be nonnegative");
  if (g.sigma < 0.0) throw ConfigError("geometry.sigma", "must be nonnegative");
  if (g.delta_ratio && !g.gap) throw ConfigError("geometry.delta_ratio", "requires geometry.gap");
  if (g.delta_ratio && *g.delta_ratio < 0.0)
    throw ConfigError("geometry.delta_ratio", "must be nonnegative");
  if (g.size_ratio && !(*g.size_ratio > 0.0))
    throw ConfigError("geometry.size_ratio", "must be positive");
  return g;
}

json geometry_json(const GeometryInput& g) {
  json j;
  j["x_a"] = g.x_a;
  j["dx"] = g.dx;
  j["dt"] = g.dt;
  j["t_a"] = g.t_a;
  j["duration"] = g.duration;
  j["sigma"] = g.sigma;
  if (g.gap) j["gap"] = *g.gap;
  if (g.D) j["D"] = *g.D;
  if (g.delta_ratio) j["delta_ratio"] = *g.delta_ratio;
  if (g.size_ratio) j["size_ratio"] = *g.size_ratio;
  j["omegas"] = g.omegas;
  j["couplings"] = g.couplings;
  if (g.state_a || g.state_b) {
    json s = json::object();
    auto put = [&](const char* k, const QubitState& q) {
      s[k] = {{"alpha", q.alpha}, {"beta", {q.beta.real(), q.beta.imag()}}};
    };
    if (g.state_a) put("A", *g.state_a);
    if (g.state_b) put("B", *g.state_b);
    j["states"] = s;
  }
  return j;
}

json options_json(const CommutatorOptions& o) {
  json j;
  j["epsilon"] = o.epsilon ? json(*o.epsilon) : json(nullptr);
  j["cutoff"] = o.cutoff;
  j["open_cutoff"] = o.open_cutoff;
  j["include_zero_mode"] = o.include_zero_mode;
  j["pv_epsilon"] = o.pv_epsilon;
  j["summation"] = std::string(to_string(o.summation));
  j["lanczos_sigma"] = o.lanczos_sigma;
  j["closed_form"] = o.closed_form;
  j["quadrature_nodes"] = o.quadrature_nodes;
  j["quadrature_tolerance"] = o.quadrature_tolerance;
  return j;
}

json boundary_json(const BoundaryConfig& bc) {
  json axes = json::array();
  for (const auto& a : bc.axes) {
    json x;
    x["kind"] = std::string(to_string(a.kind));
    if (a.length) x["length"] = *a.length;
    axes.push_back(x);
  }
  return json{{"axes", axes}};
}

json yaml_to_json(const YAML::Node& n) {
  if (!n || n.IsNull()) return nullptr;
  if (n.IsSequence()) {
    json a = json::array();
    for (const auto& e : n) a.push_back(yaml_to_json(e));
    return a;
  }
  if (n.IsMap()) {
    json o = json::object();
    for (const auto& kv : n) o[kv.first.as<std::string>()] = yaml_to_json(kv.second);
    return o;
  }
  const std::string& s = n.Scalar();
  if (n.Tag() != "!") {  // unquoted scalar: keep booleans and numbers typed
    bool b;
    if (YAML::convert<bool>::decode(n, b) && (s == "true" || s == "false")) return b;
    double d;
    if (YAML::convert<double>::decode(n, d) && std::isfinite(d)) return d;
  }
  return s;
}

void set_key(YAML::Node& root, const std::string& key, const YAML::Node& value,
             const std::string& field) {
  if (kOptionKeys.count(key)) {
    root["options"][key] = YAML::Clone(value);
  } else if (key == "L") {
    auto axes = root["boundary"]["axes"];
    for (std::size_t i = 0; i < axes.size(); ++i) {
      auto a = axes[i];
      if (a["kind"] && a["kind"].Scalar() != "open") a["length"] = YAML::Clone(value);
    }
  } else if (kGeometryKeys.count(key)) {
    root["geometry"][key] = YAML::Clone(value);
  } else {
    throw ConfigError(field, "unknown key '" + key + "'");
  }
}

YAML::Node scalar_node(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return YAML::Node(os.str());
}

bool safe_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

std::vector<double> expand_grid(const YAML::Node& node, const std::string& field) {
  std::vector<double> grid;
  if (node && node.IsSequence()) {
    grid = as_doubles(node, field);
  } else if (node && node.IsMap()) {
    reject_unknown(node, {"from", "to", "count", "spacing"}, field);
    if (!node["from"] || !node["to"] || !node["count"])
      throw ConfigError(field, "expected from, to and count");
    const double from = as_double(node["from"], field + ".from");
    const double to = as_double(node["to"], field + ".to");
    const int count = as_int(node["count"], field + ".count");
    std::string spacing = "linear";
    if (node["spacing"]) spacing = as_string(node["spacing"], field + ".spacing");
    if (count < 1) throw ConfigError(field + ".count", "must be at least 1");
    if (spacing != "linear" && spacing != "log")
      throw ConfigError(field + ".spacing", "expected linear or log");
    if (spacing == "log" && !(from > 0.0 && to > 0.0))
      throw ConfigError(field, "log spacing needs positive endpoints");
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      double v = spacing == "log" ? std::exp(std::log(from) + f * (std::log(to) - std::log(from)))
                                  : from + f * (to - from);
      if (i == 0) v = from;
      if (i == count - 1 && count > 1) v = to;
      grid.push_back(v);
    }
  } else {
    throw ConfigError(field, "expected a list or {from, to, count}");
  }
  if (grid.empty()) throw ConfigError(field, "grid must not be empty");
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))
      throw ConfigError(field, "grid must be strictly monotone");
  return grid;
}

Point resolve_point(const Scenario& s, std::size_t series, double value) {
  YAML::Node root = YAML::Clone(s.base);
  const auto& set = s.series.at(series).set;
  const std::string sf = "series[" + std::to_string(series) + "].set";
  if (set && set.IsMap())
    for (const auto& kv : set) {
      const auto key = kv.first.as<std::string>();
      set_key(root, key, kv.second, sf + "." + key);
    }
  if (s.variable == "cutoff") {
    if (value != std::floor(value)) throw ConfigError("sweep.grid", "cutoff values must be integers");
    root["options"]["cutoff"] = static_cast<int>(value);
  } else {
    set_key(root, s.variable, scalar_node(value), "sweep.variable");
  }

  Point p;
  p.bc = parse_boundary(root["boundary"]);
  p.opts = parse_options(root["options"]);
  try {
    (void)validate_config(p.bc, p.opts);
  } catch (const causal::Error& e) {
    throw from_library(e, "");
  }
  const int n = p.bc.dim();
  const auto g = parse_geometry(root["geometry"], n, true);

  double delta = g.duration;
  if (g.delta_ratio) delta = *g.delta_ratio * *g.gap;
  double sigma = g.sigma;
  if (g.size_ratio) sigma = delta / *g.size_ratio;
  const double dt = g.gap ? *g.gap + delta : g.dt;
  std::vector<double> dx = g.dx;
  if (g.D) dx[0] = *g.D + sigma;

  p.A.center = g.x_a;
  p.A.sigma = sigma;
  p.A.t_on = g.t_a;
  p.A.t_off = g.t_a + delta;
  p.A.omega = g.omegas[0];
  p.A.coupling = g.couplings[0];
  p.B.center.resize(n);
  for (int l = 0; l < n; ++l) p.B.center[l] = g.x_a[l] + dx[l];
  p.B.sigma = sigma;
  p.B.t_on = g.t_a + dt;
  p.B.t_off = p.B.t_on + delta;
  p.B.omega = g.omegas[1];
  p.B.coupling = g.couplings[1];
  p.state_a = g.state_a;
  p.state_b = g.state_b;
  try {
    validate_detector(p.A, n, "geometry.A");
    validate_detector(p.B, n, "geometry.B");
  } catch (const causal::Error& e) {
    throw from_library(e, "");
  }
  return p;
}

Scenario parse_scenario(const YAML::Node& root, const Overrides& overrides,
                        const std::string& fallback_name) {
  if (!root || !root.IsMap()) throw ConfigError("", "scenario must be a mapping");
  reject_unknown(root, kTopKeys, "");
  Scenario s;
  s.name = root["name"] ? as_string(root["name"], "name") : fallback_name;
  if (!safe_name(s.name))
    throw ConfigError("name", "use letters, digits, '.', '_' or '-' only");
  if (root["title"]) s.title = as_string(root["title"], "title");
  if (root["notes"]) s.notes = as_string(root["notes"], "notes");

  s.base = YAML::Node(YAML::NodeType::Map);
  s.base["boundary"] = YAML::Clone(root["boundary"]);
  s.base["options"] = root["options"] && !root["options"].IsNull() ? YAML::Clone(root["options"])
                                                                   : YAML::Node(YAML::NodeType::Map);
  s.base["geometry"] = root["geometry"] && !root["geometry"].IsNull()
                           ? YAML::Clone(root["geometry"])
                           : YAML::Node(YAML::NodeType::Map);
  require_map(s.base["options"], "options");
  require_map(s.base["geometry"], "geometry");
  if (overrides.epsilon) s.base["options"]["epsilon"] = scalar_node(*overrides.epsilon);
  if (overrides.cutoff) s.base["options"]["cutoff"] = *overrides.cutoff;
  if (overrides.include_zero_mode) s.base["options"]["include_zero_mode"] = *overrides.include_zero_mode;
  {
    const auto bc = parse_boundary(s.base["boundary"]);
    (void)parse_options(s.base["options"]);
    (void)parse_geometry(s.base["geometry"], bc.dim(), false);
  }

  const auto sweep = root["sweep"];
  if (!sweep || !sweep.IsMap()) throw ConfigError("sweep", "missing sweep section");
  reject_unknown(sweep, {"variable", "grid"}, "sweep");
  if (!sweep["variable"]) throw ConfigError("sweep.variable", "missing sweep variable");
  s.variable = as_string(sweep["variable"], "sweep.variable");
  if (!kSweepVariables.count(s.variable))
    throw ConfigError("sweep.variable", "expected one of dt, L, D, delta_ratio, pv_epsilon, cutoff");
  s.grid = expand_grid(sweep["grid"], "sweep.grid");

  if (const auto series = root["series"]; series && !series.IsNull()) {
    if (!series.IsSequence() || series.size() == 0)
      throw ConfigError("series", "expected a nonempty list");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const std::string f = "series[" + std::to_string(i) + "]";
      const auto e = series[i];
      if (!e.IsMap()) throw ConfigError(f, "expected {label, set}");
      reject_unknown(e, {"label", "set"}, f);
      SeriesSpec sp;
      sp.label = e["label"] ? as_string(e["label"], f + ".label") : "series" + std::to_string(i);
      if (!labels.insert(sp.label).second) throw ConfigError(f + ".label", "duplicate label");
      if (e["set"] && !e["set"].IsNull()) {
        if (!e["set"].IsMap()) throw ConfigError(f + ".set", "expected a mapping");
        sp.set = YAML::Clone(e["set"]);
      }
      s.series.push_back(sp);
    }
  } else {
    s.series.push_back(SeriesSpec{"default", YAML::Node()});
  }

  const auto outputs = root["outputs"];
  if (!outputs || !outputs.IsSequence() || outputs.size() == 0)
    throw ConfigError("outputs", "expected a nonempty list of {column, quantity}");
  std::set<std::string> columns;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const std::string f = "outputs[" + std::to_string(i) + "]";
    const auto o = outputs[i];
    if (!o.IsMap()) throw ConfigError(f, "expected {column, quantity}");
    reject_unknown(o, {"column", "quantity"}, f);
    if (!o["quantity"]) throw ConfigError(f + ".quantity", "missing quantity");
    const auto q = parse_quantity(as_string(o["quantity"], f + ".quantity"));
    if (!q) throw ConfigError(f + ".quantity", "unknown quantity");
    OutputSpec spec{o["column"] ? as_string(o["column"], f + ".column") : std::string(to_string(*q)),
                    *q};
    if (!safe_name(spec.column)) throw ConfigError(f + ".column", "invalid column name");
    if (!columns.insert(spec.column).second) throw ConfigError(f + ".column", "duplicate column");
    s.outputs.push_back(spec);
  }

  // Resolve every point up front so that bad input never reaches the solver.
  const bool needs_order = std::any_of(s.outputs.begin(), s.outputs.end(), [](const OutputSpec& o) {
    return o.quantity == Quantity::Estimator || o.quantity == Quantity::SignalMagnitude;
  });
  const bool needs_states = std::any_of(s.outputs.begin(), s.outputs.end(), [](const OutputSpec& o) {
    return o.quantity == Quantity::SignalMagnitude;
  });
  for (std::size_t k = 0; k < s.series.size(); ++k)
    for (double v : s.grid) {
      const auto p = resolve_point(s, k, v);
      if (needs_states && (!p.state_a || !p.state_b))
        throw ConfigError("geometry.states", "signal_magnitude needs states for A and B");
      if (needs_order && !check_nonoverlap(p.bc, p.A, p.B)) {
        std::ostringstream os;
        os.precision(17);
        os << "detector supports overlap at " << s.variable << " = " << v << " in series '"
           << s.series[k].label << "'";
        throw ConfigError("geometry", os.str());
      }
    }
  return s;
}

Scenario load_scenario_text(const std::string& text, const Overrides& overrides,
                            const std::string& fallback_name) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  return parse_scenario(root, overrides, fallback_name);
}

Scenario load_scenario_file(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return load_scenario_text(ss.str(), overrides, stem);
}

std::string resolved_json(const Scenario& s) {
  const auto bc = parse_boundary(s.base["boundary"]);
  json j;
  j["name"] = s.name;
  j["title"] = s.title;
  if (!s.notes.empty()) j["notes"] = s.notes;
  j["boundary"] = boundary_json(bc);
  j["options"] = options_json(parse_options(s.base["options"]));
  j["geometry"] = geometry_json(parse_geometry(s.base["geometry"], bc.dim(), false));
  j["sweep"] = {{"variable", s.variable}, {"grid", s.grid}};
  json series = json::array();
  for (const auto& sp : s.series) {
    json e{{"label", sp.label}};
    e["set"] = sp.set && sp.set.IsMap() ? yaml_to_json(sp.set) : json::object();
    series.push_back(e);
  }
  j["series"] = series;
  json outputs = json::array();
  for (const auto& o : s.outputs)
    outputs.push_back({{"column", o.column}, {"quantity", std::string(to_string(o.quantity))}});
  j["outputs"] = outputs;
  j["generator"] = {{"tool", "causal_modes"}, {"version", "0.1.0"}};
  return j.dump(2) + "\n";
}

}  // namespace causal::cli
