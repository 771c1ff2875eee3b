// Copyright 2026 The scq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"

namespace scq::cli {

namespace {

// Strict view of a JSON object: typed getters with field paths in the error
// messages, and finish() rejects keys nobody asked for.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(name(key) + ": " + what);
  }

  std::string name(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  const Json* raw(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    return as_number(*v, name(key));
  }

  int integer(const std::string& key, int fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key, "must be an integer");
    return v->get<int>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "must be true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "must be a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) fail(key, "must be a nonempty list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      out.push_back(as_number((*v)[i], name(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
    const Json* v = raw(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) fail(key, "must be a nonempty list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) fail(key + "[" + std::to_string(i) + "]", "must be a string");
      out.push_back((*v)[i].get<std::string>());
    }
    return out;
  }

  Fields object(const std::string& key) {
    const Json* v = raw(key);
    return Fields(v ? *v : empty(), name(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(it.key(), "unknown key");
    }
  }

 private:
  static const Json& empty() {
    static const Json e = Json::object();
    return e;
  }

  static double as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + ": must be finite");
    return d;
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

void check_each(const std::vector<double>& v, const std::string& field, bool (*pred)(double),
                const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    check(pred(v[i]), field + "[" + std::to_string(i) + "]", what);
  }
}

bool positive(double x) { return x > 0.0; }
bool non_negative(double x) { return x >= 0.0; }

// Runs a library validator and reports its message under `field`.
template <class F>
void validated(const std::string& field, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

Integrator parse_method(const std::string& s, const std::string& field) {
  if (s == "auto") return Integrator::kAuto;
  if (s == "dormand-prince") return Integrator::kDormandPrince;
  if (s == "propagator") return Integrator::kPropagator;
  throw ConfigError(field + ": expected auto, dormand-prince or propagator, got '" + s + "'");
}

const char* method_name(Integrator m) {
  switch (m) {
    case Integrator::kAuto:
      return "auto";
    case Integrator::kDormandPrince:
      return "dormand-prince";
    case Integrator::kPropagator:
      return "propagator";
  }
  return "?";
}

EvolutionConfig parse_engine(Fields f, EvolutionConfig c, bool allow_t_final) {
  if (f.has("t_final") && !allow_t_final) {
    f.fail("t_final", "set per run by this scenario and cannot be given");
  }
  c.t_final = f.number("t_final", c.t_final);
  c.method = parse_method(f.string("method", method_name(c.method)), f.name("method"));
  c.rel_tol = f.number("rel_tol", c.rel_tol);
  c.abs_tol = f.number("abs_tol", c.abs_tol);
  c.sample_count = f.integer("sample_count", c.sample_count);
  const double steps = f.number("max_steps", double(c.max_steps));
  check(steps >= 1.0 && steps < 1e15, f.name("max_steps"), "must be in [1, 1e15)");
  c.max_steps = std::size_t(steps);
  c.trace_abort = f.number("trace_abort", c.trace_abort);
  c.observed_sectors_only = f.boolean("observed_sectors_only", c.observed_sectors_only);
  f.finish();
  validated(f.name(""), [&] { c.validate(); });
  return c;
}

Json engine_json(const EvolutionConfig& c, bool with_t_final) {
  Json j;
  if (with_t_final) j["t_final"] = c.t_final;
  j["method"] = method_name(c.method);
  j["rel_tol"] = c.rel_tol;
  j["abs_tol"] = c.abs_tol;
  j["sample_count"] = c.sample_count;
  j["max_steps"] = c.max_steps;
  j["trace_abort"] = c.trace_abort;
  j["observed_sectors_only"] = c.observed_sectors_only;
  return j;
}

NoiseParams parse_noise(Fields f, NoiseParams n) {
  n.kappa2 = f.number("kappa2", n.kappa2);
  n.kappa1 = f.number("kappa1", n.kappa1);
  n.n_th = f.number("n_th", n.n_th);
  n.kappa_phi = f.number("kappa_phi", n.kappa_phi);
  n.kerr = f.number("kerr", n.kerr);
  f.finish();
  validated(f.name(""), [&] { n.validate(); });
  return n;
}

Json noise_json(const NoiseParams& n) {
  return Json{{"kappa2", n.kappa2}, {"kappa1", n.kappa1}, {"n_th", n.n_th},
              {"kappa_phi", n.kappa_phi}, {"kerr", n.kerr}};
}

CodeParams parse_code(Fields f, CodeParams fallback) {
  const double a2 = f.number("alpha_sq", std::norm(fallback.alpha));
  const double r = f.number("r", fallback.r);
  check(a2 > 0.0, f.name("alpha_sq"), "must be > 0");
  check(r >= 0.0, f.name("r"), "must be >= 0");
  f.finish();
  return CodeParams::real(a2, r);
}

Json code_json(const CodeParams& c) {
  return Json{{"alpha_sq", std::norm(c.alpha)}, {"r", c.r}};
}

struct RateDefaults {
  std::vector<double> alpha_sq;
  std::vector<double> r;
  std::vector<double> knob;
  NoiseParams base;
};

// Defaults match the reproduce grids.
RateDefaults rate_defaults(Scenario s) {
  RateDefaults d;
  d.alpha_sq = {2.0, 2.5, 3.0, 3.5, 4.0};
  d.r = {0.0, 0.2, 0.35, 0.5};
  switch (s) {
    case Scenario::kLoss:
      d.knob = {1e-3};
      break;
    case Scenario::kDephasing:
      d.knob = {1e-3};
      d.base.kappa1 = 5e-3;
      break;
    case Scenario::kGain:
      d.knob = {0.1};
      d.base.kappa1 = 1e-3;
      break;
    case Scenario::kKerr:
      d.knob = {1e-2};
      d.base.kappa1 = 1e-3;
      break;
  }
  return d;
}

void parse_rates(Fields& top, Scenario s, StudyConfig& cfg) {
  const RateDefaults d = rate_defaults(s);
  StudyGrid& g = cfg.rates.grid;
  g.scenario = s;
  {
    Fields f = top.object("grid");
    g.alpha_sq = f.numbers("alpha_sq", d.alpha_sq);
    g.r = f.numbers("r", d.r);
    g.knob = f.numbers("knob", d.knob);
    f.finish();
    check_each(g.alpha_sq, f.name("alpha_sq"), positive, "must be > 0");
    check_each(g.r, f.name("r"), non_negative, "must be >= 0");
    check_each(g.knob, f.name("knob"), non_negative, "must be >= 0");
  }
  g.base = parse_noise(top.object("noise"), d.base);
  RateRunOptions& run = g.run;
  run.engine = parse_engine(top.object("engine"), rate_engine_defaults(), false);
  {
    Fields f = top.object("rates");
    run.max_horizon = f.number("max_horizon", run.max_horizon);
    run.target_decay = f.number("target_decay", run.target_decay);
    run.transient_factor = f.number("transient_factor", run.transient_factor);
    run.bit_flip = f.boolean("bit_flip", run.bit_flip);
    run.phase_flip = f.boolean("phase_flip", run.phase_flip);
    run.cutoff = f.integer("cutoff", run.cutoff);
    run.integrate_below = f.number("integrate_below", run.integrate_below);
    cfg.rates.fit_alpha_sq_min = f.number("fit_alpha_sq_min", cfg.rates.fit_alpha_sq_min);
    cfg.rates.fit_alpha_sq_max = f.number("fit_alpha_sq_max", cfg.rates.fit_alpha_sq_max);
    f.finish();
    check(run.max_horizon > 0.0, f.name("max_horizon"), "must be > 0");
    check(run.target_decay > 0.0, f.name("target_decay"), "must be > 0");
    check(run.transient_factor >= 0.0, f.name("transient_factor"), "must be >= 0");
    check(run.cutoff >= 0, f.name("cutoff"), "must be >= 0");
    check(run.integrate_below >= 0.0, f.name("integrate_below"), "must be >= 0");
    check(run.bit_flip || run.phase_flip, f.name(""), "bit_flip and phase_flip are both off");
    check(cfg.rates.fit_alpha_sq_min < cfg.rates.fit_alpha_sq_max, f.name("fit_alpha_sq_min"),
          "must be below fit_alpha_sq_max");
  }
  g.threads = 1;
  validated("grid", [&] { g.validate(); });
  for (double a2 : g.alpha_sq) {
    for (double r : g.r) {
      validated("grid", [&] { CodeParams::real(a2, r).validate(); });
    }
  }
}

Json rates_json(const StudyConfig& cfg) {
  const StudyGrid& g = cfg.rates.grid;
  const RateRunOptions& run = g.run;
  Json j;
  j["grid"] = Json{{"alpha_sq", g.alpha_sq}, {"r", g.r}, {"knob", g.knob},
                   {"knob_name", knob_name(g.scenario)}};
  j["noise"] = noise_json(g.base);
  j["engine"] = engine_json(run.engine, false);
  j["rates"] = Json{{"max_horizon", run.max_horizon},
                    {"target_decay", run.target_decay},
                    {"transient_factor", run.transient_factor},
                    {"bit_flip", run.bit_flip},
                    {"phase_flip", run.phase_flip},
                    {"cutoff", run.cutoff},
                    {"integrate_below", run.integrate_below},
                    {"fit_alpha_sq_min", cfg.rates.fit_alpha_sq_min},
                    {"fit_alpha_sq_max", cfg.rates.fit_alpha_sq_max}};
  return j;
}

void parse_zgate(Fields& top, StudyConfig& cfg) {
  ZgateSection& z = cfg.zgate;
  Fields f = top.object("zgate");
  z.alpha_sq = f.numbers("alpha_sq", z.alpha_sq);
  z.r = f.numbers("r", z.r);
  z.t_gate = f.numbers("t_gate", {0.3, 0.5, 1.0, 2.0, 3.0});
  z.at_t_opt = f.boolean("t_opt", z.at_t_opt);
  z.theta = f.number("theta", z.theta);
  z.kappa_minus = f.number("kappa_minus", z.kappa_minus);
  z.cutoff = f.integer("cutoff", z.cutoff);
  if (z.at_t_opt && f.has("t_gate")) f.fail("t_gate", "cannot be combined with t_opt");
  f.finish();
  check_each(z.alpha_sq, f.name("alpha_sq"), positive, "must be > 0");
  check_each(z.r, f.name("r"), non_negative, "must be >= 0");
  check_each(z.t_gate, f.name("t_gate"), positive, "must be > 0");
  check(z.kappa_minus >= 0.0, f.name("kappa_minus"), "must be >= 0");
  check(!z.at_t_opt || z.kappa_minus > 0.0, f.name("t_opt"), "needs kappa_minus > 0");
  check(z.cutoff >= 0, f.name("cutoff"), "must be >= 0");
  z.engine = parse_engine(top.object("engine"), gate_engine_defaults(), false);
}

Json zgate_json(const ZgateSection& z) {
  Json j{{"alpha_sq", z.alpha_sq}, {"r", z.r}};
  if (z.at_t_opt) {
    j["t_opt"] = true;
  } else {
    j["t_gate"] = z.t_gate;
  }
  j["theta"] = z.theta;
  j["kappa_minus"] = z.kappa_minus;
  j["cutoff"] = z.cutoff;
  return Json{{"zgate", j}, {"engine", engine_json(z.engine, false)}};
}

void check_initial_label(const std::string& s, const std::string& field) {
  auto tail_number = [&](std::size_t prefix) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s.substr(prefix), &used);
      if (used != s.size() - prefix) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(field + ": malformed state '" + s + "'");
    }
  };
  if (s == "vacuum" || s == "plus" || s == "minus" || s == "zero" || s == "one") return;
  if (s.rfind("fock:", 0) == 0) {
    const double n = tail_number(5);
    check(n >= 0.0 && n == std::floor(n), field, "fock level must be a non-negative integer");
    return;
  }
  if (s.rfind("thermal:", 0) == 0) {
    check(tail_number(8) >= 0.0, field, "thermal occupation must be >= 0");
    return;
  }
  throw ConfigError(field + ": unknown state '" + s +
                    "' (vacuum, plus, minus, zero, one, fock:<n>, thermal:<n_th>)");
}

void parse_prep(Fields& top, StudyConfig& cfg) {
  PrepSection& p = cfg.prep;
  Fields f = top.object("prep");
  p.alpha_sq = f.number("alpha_sq", p.alpha_sq);
  p.ratio = f.number("ratio", p.ratio);
  p.r = f.number("r", p.r);
  p.phi = f.number("phi", p.phi);
  p.cutoff = f.integer("cutoff", p.cutoff);
  p.initial = f.strings("initial", p.initial);
  f.finish();
  check(p.alpha_sq > 0.0, f.name("alpha_sq"), "must be > 0");
  check(p.ratio > 0.0, f.name("ratio"), "must be > 0");
  check(p.r >= 0.0, f.name("r"), "must be >= 0");
  check(p.cutoff >= 0, f.name("cutoff"), "must be >= 0");
  for (std::size_t i = 0; i < p.initial.size(); ++i) {
    const std::string field = f.name("initial") + "[" + std::to_string(i) + "]";
    check_initial_label(p.initial[i], field);
    check(p.initial[i].rfind("fock:", 0) == 0 || p.initial[i] == "vacuum" ||
              p.initial[i].rfind("thermal:", 0) == 0,
          field, "preparation starts from vacuum, fock:<n> or thermal:<n_th>");
  }
  validated(f.name(""), [&] { DarkOpParams::cat(p.alpha_sq, p.ratio, p.r, p.phi).validate(); });
  p.engine = parse_engine(top.object("engine"), prep_engine_defaults(), true);
}

Json prep_json(const PrepSection& p) {
  return Json{{"prep",
               {{"alpha_sq", p.alpha_sq},
                {"ratio", p.ratio},
                {"r", p.r},
                {"phi", p.phi},
                {"cutoff", p.cutoff},
                {"initial", p.initial}}},
              {"engine", engine_json(p.engine, true)}};
}

constexpr double kTwoPi = 6.283185307179586;

void parse_circuit(Fields& top, StudyConfig& cfg) {
  CircuitSection& c = cfg.circuit;
  CircuitParams& cp = c.params;
  {
    Fields f = top.object("circuit");
    auto mhz = [&](const char* key, double fallback) { return kTwoPi * f.number(key, fallback); };
    // Defaults: a buffer-limited device with g3 / kappa_w = 1/50.
    cp.g3 = mhz("g3_mhz", 0.4);
    cp.kappa_w = mhz("kappa_w_mhz", 20.0);
    cp.E_J = mhz("E_J_mhz", 30000.0);
    cp.omega_a = mhz("omega_a_mhz", 8000.0);
    cp.omega_w = mhz("omega_w_mhz", 4800.0);
    cp.omega_c = mhz("omega_c_mhz", 6500.0);
    cp.kappa_a = mhz("kappa_a_mhz", 0.01);
    cp.kappa_c = mhz("kappa_c_mhz", 1.0);
    cp.lambda = f.number("lambda", 0.05);
    cp.phi_a = f.number("phi_a", 0.1);
    cp.phi_c = f.number("phi_c", 0.2);
    cp.phi_w = f.number("phi_w", 0.1);
    cp.eta = f.number("eta", 0.0);
    f.finish();
    validated(f.name(""), [&] { cp.validate(); });
  }
  c.code = parse_code(top.object("code"), CodeParams::real(4.0, 0.2));
  {
    Fields f = top.object("two_mode");
    TwoModeConfig& t = c.two_mode_config;
    c.two_mode = f.boolean("enabled", c.two_mode);
    t.storage_cutoff = f.integer("storage_cutoff", t.storage_cutoff);
    t.waste_cutoff = f.integer("waste_cutoff", t.waste_cutoff);
    t.waste_top_tol = f.number("waste_top_tol", t.waste_top_tol);
    t.drive = f.boolean("drive", t.drive);
    t.t_final = f.number("t_final", t.t_final);
    t.sample_count = f.integer("sample_count", t.sample_count);
    t.rel_tol = f.number("rel_tol", t.rel_tol);
    t.abs_tol = f.number("abs_tol", t.abs_tol);
    f.finish();
    validated(f.name(""), [&] { t.validate(); });
  }
  {
    Fields f = top.object("skpo");
    c.skpo = f.boolean("enabled", c.skpo);
    c.skpo_kerr = f.number("kerr", c.skpo_kerr);
    c.skpo_cutoff = f.integer("cutoff", c.skpo_cutoff);
    f.finish();
    check(c.skpo_kerr > 0.0, f.name("kerr"), "must be > 0");
    check(c.skpo_cutoff >= 0, f.name("cutoff"), "must be >= 0");
  }
}

Json circuit_json(const CircuitSection& c) {
  const CircuitParams& cp = c.params;
  const TwoModeConfig& t = c.two_mode_config;
  return Json{{"circuit",
               {{"g3_mhz", cp.g3 / kTwoPi},
                {"kappa_w_mhz", cp.kappa_w / kTwoPi},
                {"E_J_mhz", cp.E_J / kTwoPi},
                {"omega_a_mhz", cp.omega_a / kTwoPi},
                {"omega_w_mhz", cp.omega_w / kTwoPi},
                {"omega_c_mhz", cp.omega_c / kTwoPi},
                {"kappa_a_mhz", cp.kappa_a / kTwoPi},
                {"kappa_c_mhz", cp.kappa_c / kTwoPi},
                {"lambda", cp.lambda},
                {"phi_a", cp.phi_a},
                {"phi_c", cp.phi_c},
                {"phi_w", cp.phi_w},
                {"eta", cp.eta}}},
              {"code", code_json(c.code)},
              {"two_mode",
               {{"enabled", c.two_mode},
                {"storage_cutoff", t.storage_cutoff},
                {"waste_cutoff", t.waste_cutoff},
                {"waste_top_tol", t.waste_top_tol},
                {"drive", t.drive},
                {"t_final", t.t_final},
                {"sample_count", t.sample_count},
                {"rel_tol", t.rel_tol},
                {"abs_tol", t.abs_tol}}},
              {"skpo", {{"enabled", c.skpo}, {"kerr", c.skpo_kerr}, {"cutoff", c.skpo_cutoff}}}};
}

void parse_custom(Fields& top, StudyConfig& cfg) {
  CustomSection& c = cfg.custom;
  c.code = parse_code(top.object("code"), CodeParams::real(2.0, 0.0));
  c.noise = parse_noise(top.object("noise"), c.noise);
  {
    Fields f = top.object("custom");
    c.initial = f.string("initial", c.initial);
    c.cutoff = f.integer("cutoff", c.cutoff);
    c.observables = f.strings("observables", c.observables);
    f.finish();
    check_initial_label(c.initial, f.name("initial"));
    check(c.cutoff >= 0, f.name("cutoff"), "must be >= 0");
    static const std::set<std::string> known{"parity", "n", "fidelity_plus", "fidelity_minus",
                                             "jz", "trace"};
    for (std::size_t i = 0; i < c.observables.size(); ++i) {
      check(known.count(c.observables[i]) > 0,
            f.name("observables") + "[" + std::to_string(i) + "]",
            "unknown observable '" + c.observables[i] +
                "' (parity, n, fidelity_plus, fidelity_minus, jz, trace)");
    }
  }
  EvolutionConfig e;
  e.t_final = 20.0;
  c.engine = parse_engine(top.object("engine"), e, true);
}

Json custom_json(const CustomSection& c) {
  return Json{{"code", code_json(c.code)},
              {"noise", noise_json(c.noise)},
              {"custom",
               {{"initial", c.initial}, {"cutoff", c.cutoff}, {"observables", c.observables}}},
              {"engine", engine_json(c.engine, true)}};
}

ScenarioKind parse_scenario(const std::string& s, const std::string& field) {
  if (s == "rates-loss") return ScenarioKind::kRatesLoss;
  if (s == "rates-dephasing") return ScenarioKind::kRatesDephasing;
  if (s == "rates-gain") return ScenarioKind::kRatesGain;
  if (s == "rates-kerr") return ScenarioKind::kRatesKerr;
  if (s == "zgate") return ScenarioKind::kZgate;
  if (s == "prep") return ScenarioKind::kPrep;
  if (s == "circuit") return ScenarioKind::kCircuit;
  if (s == "custom") return ScenarioKind::kCustom;
  throw ConfigError(field + ": unknown scenario '" + s + "'");
}

}  // namespace

const char* scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kRatesLoss:
      return "rates-loss";
    case ScenarioKind::kRatesDephasing:
      return "rates-dephasing";
    case ScenarioKind::kRatesGain:
      return "rates-gain";
    case ScenarioKind::kRatesKerr:
      return "rates-kerr";
    case ScenarioKind::kZgate:
      return "zgate";
    case ScenarioKind::kPrep:
      return "prep";
    case ScenarioKind::kCircuit:
      return "circuit";
    case ScenarioKind::kCustom:
      return "custom";
  }
  return "?";
}

StudyConfig parse_config(const Json& doc) {
  Fields top(doc, "");
  const Json* version = top.raw("schema_version");
  if (!version) top.fail("schema_version", "missing (expected " + std::to_string(kSchemaVersion) + ")");
  if (!version->is_number_integer() || version->get<int>() != kSchemaVersion) {
    top.fail("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!top.has("scenario")) top.fail("scenario", "missing");

  StudyConfig cfg;
  cfg.scenario = parse_scenario(top.string("scenario", ""), "scenario");
  cfg.output = top.string("output", cfg.output.string());
  cfg.plot = top.boolean("plot", cfg.plot);
  cfg.threads = top.integer("threads", cfg.threads);
  check(cfg.threads >= 1, "threads", "must be >= 1");
  check(!cfg.output.empty(), "output", "must not be empty");

  Json resolved{{"schema_version", kSchemaVersion},
                {"scenario", scenario_name(cfg.scenario)},
                {"output", cfg.output.string()},
                {"plot", cfg.plot},
                {"threads", cfg.threads}};
  Json section;
  switch (cfg.scenario) {
    case ScenarioKind::kRatesLoss:
      parse_rates(top, Scenario::kLoss, cfg);
      section = rates_json(cfg);
      break;
    case ScenarioKind::kRatesDephasing:
      parse_rates(top, Scenario::kDephasing, cfg);
      section = rates_json(cfg);
      break;
    case ScenarioKind::kRatesGain:
      parse_rates(top, Scenario::kGain, cfg);
      section = rates_json(cfg);
      break;
    case ScenarioKind::kRatesKerr:
      parse_rates(top, Scenario::kKerr, cfg);
      section = rates_json(cfg);
      break;
    case ScenarioKind::kZgate:
      parse_zgate(top, cfg);
      section = zgate_json(cfg.zgate);
      break;
    case ScenarioKind::kPrep:
      parse_prep(top, cfg);
      section = prep_json(cfg.prep);
      break;
    case ScenarioKind::kCircuit:
      parse_circuit(top, cfg);
      section = circuit_json(cfg.circuit);
      break;
    case ScenarioKind::kCustom:
      parse_custom(top, cfg);
      section = custom_json(cfg.custom);
      break;
  }
  top.finish();
  for (auto it = section.begin(); it != section.end(); ++it) resolved[it.key()] = it.value();
  cfg.resolved = std::move(resolved);
  return cfg;
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace scq::cli
