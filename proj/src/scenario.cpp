#include "markovsig/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "markovsig/error.hpp"

namespace markovsig {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& msg,
                       Errc code = Errc::invalid_argument) {
  throw Error(code, field + ": " + msg);
}

std::string at(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}
std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

cplx get_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {get_number(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) fail(field, "expected a complex number [re, im]");
  return {get_number(j[0], at(field, 0)), get_number(j[1], at(field, 1))};
}

std::vector<cplx> get_complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a list of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_complex(j[i], at(field, i)));
  return out;
}

std::vector<double> get_real_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], at(field, i)));
  return out;
}

int get_int(const json& j, const std::string& field, int lo, int hi) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) fail(field, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) fail(field, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

RationalMap get_map(const json& obj, const std::string& field, const char* num_key, const char* den_key) {
  RationalMap m;
  const json* num = find(obj, num_key);
  if (!num) fail(at(field, num_key), "missing");
  m.num = ComplexPolynomial(get_complex_list(*num, at(field, num_key)));
  if (const json* den = find(obj, den_key)) {
    m.den = ComplexPolynomial(get_complex_list(*den, at(field, den_key)));
    if (m.den.is_zero()) fail(at(field, den_key), "denominator is identically zero");
  }
  return m;
}

MaxwellPhase get_phase(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object with G and optional eta");
  const json* g = find(j, "G");
  if (!g) fail(at(field, "G"), "missing");
  const double G = get_number(*g, at(field, "G"));
  if (!(G > 0.0)) fail(at(field, "G"), "must be positive");
  const json* eta = find(j, "eta");
  if (!eta || eta->is_null()) return MaxwellPhase::elastic_phase(G);
  const double e = get_number(*eta, at(field, "eta"));
  if (!(e > 0.0)) fail(at(field, "eta"), "must be positive");
  return MaxwellPhase::viscoelastic(G, e);
}

SystemModel get_model(const json& j) {
  const std::string field = "model";
  if (!j.is_object()) fail(field, "expected an object");
  const json* kind = find(j, "kind");
  if (!kind) fail(at(field, "kind"), "missing");
  const std::string k = get_string(*kind, at(field, "kind"));
  double a0 = 1.0;
  if (const json* a = find(j, "a0")) {
    a0 = get_number(*a, at(field, "a0"));
    if (!(a0 > 0.0)) fail(at(field, "a0"), "must be positive");
  }
  SystemModel m;
  if (k == "lossy_dielectric") {
    m = SystemModel::lossy_dielectric(a0);
  } else if (k == "plasma") {
    m = SystemModel::plasma(a0);
  } else if (k == "two_phase") {
    const json* p1 = find(j, "phase1");
    const json* p2 = find(j, "phase2");
    if (!p1) fail(at(field, "phase1"), "missing");
    if (!p2) fail(at(field, "phase2"), "missing");
    m = SystemModel::two_phase(get_phase(*p1, at(field, "phase1")), get_phase(*p2, at(field, "phase2")), a0);
  } else if (k == "custom") {
    m = SystemModel::custom(get_map(j, field, "z_num", "z_den"), a0);
  } else {
    fail(at(field, "kind"), "unknown model kind '" + k + "'");
  }
  if (find(j, "c_num")) m.c_map = get_map(j, field, "c_num", "c_den");
  return m;
}

DesignSpec get_design(const json& j) {
  const std::string field = "design";
  if (!j.is_object()) fail(field, "expected an object");
  DesignSpec d;
  const json* mode = find(j, "mode");
  if (!mode) fail(at(field, "mode"), "missing");
  const std::string m = get_string(*mode, at(field, "mode"));
  if (m == "unit") d.mode = DesignMode::unit;
  else if (m == "moments") d.mode = DesignMode::moments;
  else if (m == "frequency_target") d.mode = DesignMode::frequency_target;
  else if (m == "derivative_target") d.mode = DesignMode::derivative_target;
  else if (m == "zero_factor") d.mode = DesignMode::zero_factor;
  else fail(at(field, "mode"), "unknown design mode '" + m + "'");

  if (const json* n = find(j, "n")) d.n = get_int(*n, at(field, "n"), 0, 16);
  if (d.mode == DesignMode::moments && !find(j, "n")) fail(at(field, "n"), "required in moments mode");
  if (const json* z0 = find(j, "z0")) d.z0 = get_complex(*z0, at(field, "z0"));
  if (const json* w0 = find(j, "omega0")) d.omega0 = get_complex(*w0, at(field, "omega0"));
  const bool target = d.mode == DesignMode::frequency_target || d.mode == DesignMode::derivative_target;
  if (target && !d.z0 && !d.omega0) fail(at(field, "z0"), "target modes need z0 or omega0");
  if (const json* s = find(j, "zero_factor")) d.zero_factor = get_complex_list(*s, at(field, "zero_factor"));
  if (d.mode == DesignMode::zero_factor && d.zero_factor.empty())
    fail(at(field, "zero_factor"), "required in zero_factor mode");
  return d;
}

DiscreteMeasure get_measure(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected {\"atoms\": [...], \"weights\": [...]}");
  const json* a = find(j, "atoms");
  const json* w = find(j, "weights");
  if (!a) fail(at(field, "atoms"), "missing");
  if (!w) fail(at(field, "weights"), "missing");
  std::vector<double> atoms = get_real_list(*a, at(field, "atoms"));
  std::vector<double> weights = get_real_list(*w, at(field, "weights"));
  try {
    return DiscreteMeasure::create(std::move(atoms), std::move(weights));
  } catch (const Error& e) {
    fail(e.index() ? at(at(field, "atoms"), *e.index()) : field, e.what());
  }
}

TimeGrid get_time(const json& j) {
  const std::string field = "time";
  if (!j.is_object()) fail(field, "expected an object");
  TimeGrid g;
  for (const char* key : {"t_start", "t_end", "steps"})
    if (!find(j, key)) fail(at(field, key), "missing");
  g.t_start = get_number(j["t_start"], at(field, "t_start"));
  g.t_end = get_number(j["t_end"], at(field, "t_end"));
  g.steps = get_int(j["steps"], at(field, "steps"), 0, 10000000);
  g.t0 = find(j, "t0") ? get_number(j["t0"], at(field, "t0")) : 0.0;
  return g;
}

std::vector<BoundsCase> get_bounds(const json& j, double& theta) {
  const std::string field = "bounds";
  if (!j.is_object()) fail(field, "expected an object");
  if (const json* t = find(j, "theta")) theta = get_number(*t, at(field, "theta"));
  const json* cases = find(j, "cases");
  if (!cases || !cases->is_array() || cases->empty()) fail(at(field, "cases"), "expected a non-empty list");
  std::vector<BoundsCase> out;
  for (std::size_t i = 0; i < cases->size(); ++i) {
    const std::string f = at(at(field, "cases"), i);
    const json& c = (*cases)[i];
    if (!c.is_object()) fail(f, "expected an object");
    BoundsCase b;
    b.label = find(c, "label") ? get_string(c["label"], at(f, "label")) : "case" + std::to_string(i);
    for (char ch : b.label)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
        fail(at(f, "label"), "only letters, digits, '_' and '-' are allowed");
    if (const json* m = find(c, "moments")) b.moments = get_real_list(*m, at(f, "moments"));
    if (b.moments.size() > 2) fail(at(f, "moments"), "at most M1 and M2 are supported");
    try {
      check_moments_feasible(b.moments);
    } catch (const Error& e) {
      fail(at(f, "moments"), e.what(), e.code());
    }
    if (const json* k = find(c, "a0_known")) b.a0_known = get_bool(*k, at(f, "a0_known"));
    out.push_back(std::move(b));
  }
  return out;
}

VerifySettings get_verify(const json& j) {
  const std::string field = "verify";
  if (!j.is_object()) fail(field, "expected an object");
  VerifySettings v;
  if (const json* x = find(j, "measures")) v.measures = get_int(*x, at(field, "measures"), 0, 10000000);
  if (const json* x = find(j, "max_atoms")) v.max_atoms = get_int(*x, at(field, "max_atoms"), 1, 1000);
  if (const json* x = find(j, "operator_seeds")) v.operator_seeds = get_int(*x, at(field, "operator_seeds"), 0, 100000);
  if (const json* x = find(j, "operator_dim")) v.operator_dim = get_int(*x, at(field, "operator_dim"), 1, 64);
  return v;
}

RegionSettings get_region(const json& j) {
  const std::string field = "region";
  if (!j.is_object()) fail(field, "expected an object");
  RegionSettings r;
  if (const json* z0 = find(j, "z0")) r.z0 = get_complex(*z0, at(field, "z0"));
  if (const json* w0 = find(j, "omega0")) r.omega0 = get_complex(*w0, at(field, "omega0"));
  if (const json* rr = find(j, "r")) {
    r.r = get_number(*rr, at(field, "r"));
    if (!(r.r > 0.0)) fail(at(field, "r"), "must be positive");
  }
  if (const json* b = find(j, "box")) {
    const std::string f = at(field, "box");
    if (!b->is_object()) fail(f, "expected an object");
    if (const json* x = find(*b, "x_min")) r.box.x_min = get_number(*x, at(f, "x_min"));
    if (const json* x = find(*b, "x_max")) r.box.x_max = get_number(*x, at(f, "x_max"));
    if (const json* x = find(*b, "y_min")) r.box.y_min = get_number(*x, at(f, "y_min"));
    if (const json* x = find(*b, "y_max")) r.box.y_max = get_number(*x, at(f, "y_max"));
    if (const json* x = find(*b, "resolution")) r.box.resolution = get_int(*x, at(f, "resolution"), 2, 4000);
    if (!(r.box.x_min < r.box.x_max && r.box.y_min < r.box.y_max)) fail(f, "box must have positive extent");
  }
  if (const json* p = find(j, "probes")) r.probes = get_complex_list(*p, at(field, "probes"));
  return r;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("scenario", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("scenario", "expected a JSON object");

  Scenario s;
  s.name = find(j, "name") ? get_string(j["name"], "name") : "scenario";
  const json* model = find(j, "model");
  if (!model) fail("model", "missing");
  s.model = get_model(*model);

  const json* freqs = find(j, "frequencies");
  if (!freqs) fail("frequencies", "missing");
  s.frequencies = get_complex_list(*freqs, "frequencies");
  if (s.frequencies.empty()) fail("frequencies", "needs at least one frequency");
  if (s.frequencies.size() > kMaxPoles) fail("frequencies", "at most 48 frequencies are supported");
  for (std::size_t i = 0; i < s.frequencies.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (s.frequencies[i] == s.frequencies[k])
        fail(at("frequencies", i), "duplicates frequencies[" + std::to_string(k) + "]",
             Errc::duplicate_points);

  const json* design = find(j, "design");
  s.design = design ? get_design(*design) : DesignSpec{};
  if (const json* mu = find(j, "measure")) s.measure = get_measure(*mu, "measure");
  if (const json* b = find(j, "bounds")) s.bounds = get_bounds(*b, s.theta);
  if (const json* t = find(j, "time")) s.time = get_time(*t);
  if (const json* sd = find(j, "seed")) {
    if (!sd->is_number_unsigned() && !(sd->is_number_integer() && sd->get<long long>() >= 0))
      fail("seed", "expected a nonnegative integer");
    s.seed = sd->get<std::uint64_t>();
  }
  if (const json* g = find(j, "grid_nodes")) s.grid_nodes = get_int(*g, "grid_nodes", 16, 1 << 20);
  if (const json* v = find(j, "verify")) s.verify = get_verify(*v);
  if (const json* r = find(j, "region")) s.region = get_region(*r);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("scenario", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::optional<cplx> resolve_z0(const Scenario& s) {
  if (s.design.z0) return s.design.z0;
  if (s.design.omega0) {
    try {
      return model_z(s.model, *s.design.omega0);
    } catch (const Error& e) {
      fail("design.omega0", e.what(), e.code());
    }
  }
  return std::nullopt;
}

SignalDesign build_design(const Scenario& s) {
  const PoleSet poles = poles_for(s.model, s.frequencies);
  const DesignOptions opts{s.grid_nodes};
  switch (s.design.mode) {
    case DesignMode::unit:
      return design_unit(poles, opts);
    case DesignMode::moments:
      return design_moments(poles, s.design.n, opts);
    case DesignMode::frequency_target:
    case DesignMode::derivative_target: {
      const cplx z0 = *resolve_z0(s);
      try {
        return s.design.mode == DesignMode::frequency_target ? design_frequency_target(poles, z0, opts)
                                                             : design_derivative_target(poles, z0, opts);
      } catch (const Error& e) {
        if (e.code() == Errc::point_on_segment || e.code() == Errc::duplicate_points)
          fail(s.design.z0 ? "design.z0" : "design.omega0", e.what(), e.code());
        throw;
      }
    }
    case DesignMode::zero_factor: {
      ComplexPolynomial sp;
      try {
        sp = ComplexPolynomial(s.design.zero_factor);
      } catch (const Error& e) {
        fail("design.zero_factor", e.what(), e.code());
      }
      return design_with_zero_factor(poles, sp, opts);
    }
  }
  throw Error(Errc::invalid_argument, "design.mode: unsupported");
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  json j;
  j["atoms"] = std::vector<double>(mu.atoms().begin(), mu.atoms().end());
  j["weights"] = std::vector<double>(mu.weights().begin(), mu.weights().end());
  return j.dump();
}

DiscreteMeasure measure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("measure", std::string("invalid JSON: ") + e.what());
  }
  return get_measure(j, "measure");
}

}  // namespace markovsig
