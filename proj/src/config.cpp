// Copyright 2026 The dissipative-tmsv Authors
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

#include "tmsv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tmsv/errors.hpp"
#include "tmsv/squeezing.hpp"

namespace tmsv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
    }
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

double non_negative(const json& j, const std::string& field) {
  const double x = number(j, field);
  if (x < 0.0) fail(field, "must be >= 0");
  return x;
}

double positive(const json& j, const std::string& field) {
  const double x = number(j, field);
  if (!(x > 0.0)) fail(field, "must be > 0");
  return x;
}

int integer(const json& j, const std::string& field, int min_value) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value || v > 1000000) fail(field, "must be >= " + std::to_string(min_value));
  return static_cast<int>(v);
}

// Scalar (applies to both) or two-element array.
std::array<double, 2> pair_of(const json& j, const std::string& field) {
  if (j.is_number()) {
    const double x = number(j, field);
    return {x, x};
  }
  if (!j.is_array() || j.size() != 2) fail(field, "expected a number or a two-element array");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

// Scalar, [[a, b], [c, d]] indexed [qubit][resonator].
Real2x2 matrix_of(const json& j, const std::string& field) {
  Real2x2 m;
  if (j.is_number()) return Real2x2::Constant(number(j, field));
  if (!j.is_array() || j.size() != 2) fail(field, "expected a number or a 2x2 array");
  for (int q = 0; q < 2; ++q) {
    if (!j[q].is_array() || j[q].size() != 2) fail(field, "expected a 2x2 array");
    for (int l = 0; l < 2; ++l) {
      m(q, l) = number(j[q][l], field + "[" + std::to_string(q) + "][" + std::to_string(l) + "]");
    }
  }
  return m;
}

std::vector<double> list_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void parse_dissipation(const json& j, RunConfig& c) {
  allow_keys(j, "dissipation", {"gamma_r", "gamma_phi", "gamma", "kappa"});
  if (j.contains("gamma")) {
    if (j.contains("gamma_r") || j.contains("gamma_phi")) {
      fail("dissipation.gamma", "give either gamma or gamma_r/gamma_phi");
    }
    c.system.gamma_r = c.system.gamma_phi = non_negative(j["gamma"], "dissipation.gamma");
  }
  if (j.contains("gamma_r")) c.system.gamma_r = non_negative(j["gamma_r"], "dissipation.gamma_r");
  if (j.contains("gamma_phi")) c.system.gamma_phi = non_negative(j["gamma_phi"], "dissipation.gamma_phi");
  if (j.contains("kappa")) {
    c.system.kappa = pair_of(j["kappa"], "dissipation.kappa");
    if (c.system.kappa[0] < 0.0 || c.system.kappa[1] < 0.0) fail("dissipation.kappa", "must be >= 0");
  }
}

void parse_circuit(const json& j, RunConfig& c) {
  allow_keys(j, "circuit", {"capacitance_pf", "inductance_ph", "mutual_inductance_ph",
                            "persistent_current_na", "epsilon"});
  CircuitParams p;
  for (const char* k : {"capacitance_pf", "inductance_ph", "mutual_inductance_ph"}) {
    if (!j.contains(k)) fail(std::string("circuit.") + k, "required");
  }
  p.capacitance_pf = pair_of(j["capacitance_pf"], "circuit.capacitance_pf");
  p.inductance_ph = pair_of(j["inductance_ph"], "circuit.inductance_ph");
  for (int k = 0; k < 2; ++k) {
    if (!(p.capacitance_pf[k] > 0.0)) fail("circuit.capacitance_pf", "must be > 0");
    if (!(p.inductance_ph[k] > 0.0)) fail("circuit.inductance_ph", "must be > 0");
  }
  p.mutual_inductance_ph = matrix_of(j["mutual_inductance_ph"], "circuit.mutual_inductance_ph");
  if (j.contains("persistent_current_na")) {
    p.persistent_current_na = non_negative(j["persistent_current_na"], "circuit.persistent_current_na");
  }
  if (j.contains("epsilon")) p.epsilon = number(j["epsilon"], "circuit.epsilon");
  c.circuit = p;
}

void parse_couplings(const json& j, RunConfig& c) {
  allow_keys(j, "couplings", {"g", "xi", "delta", "nu"});
  if (j.contains("g")) {
    c.system.g = matrix_of(j["g"], "couplings.g");
  } else if (c.circuit && c.circuit->persistent_current_na > 0.0) {
    c.system.g = circuit_to_params(*c.circuit).g;
  } else {
    fail("couplings.g", "required unless circuit.persistent_current_na is given");
  }
  if (!j.contains("xi")) fail("couplings.xi", "required");
  const json& xi = j["xi"];
  if (xi.is_object()) {
    allow_keys(xi, "couplings.xi", {"xi1", "xi2"});
    if (!xi.contains("xi1") || !xi.contains("xi2")) fail("couplings.xi", "needs xi1 and xi2");
    const double x1 = non_negative(xi["xi1"], "couplings.xi.xi1");
    const double x2 = non_negative(xi["xi2"], "couplings.xi.xi2");
    c.system.xi << x1, x2, x2, x1;
  } else {
    c.system.xi = matrix_of(xi, "couplings.xi");
  }
  if (j.contains("delta")) c.system.delta = positive(j["delta"], "couplings.delta");
  if (j.contains("nu")) {
    c.system.nu = pair_of(j["nu"], "couplings.nu");
  } else if (c.circuit) {
    c.system.nu = circuit_to_params(*c.circuit).nu;
  }
  c.has_couplings = true;
}

void parse_effective(const json& j, RunConfig& c) {
  allow_keys(j, "effective", {"theta1", "theta2", "ratio"});
  if (!j.contains("theta1")) fail("effective.theta1", "required");
  const double theta1 = positive(j["theta1"], "effective.theta1");
  if (j.contains("theta2") == j.contains("ratio")) fail("effective", "give exactly one of theta2 or ratio");
  const double theta2 = j.contains("theta2") ? non_negative(j["theta2"], "effective.theta2")
                                             : theta1 * non_negative(j["ratio"], "effective.ratio");
  c.effective = EffectiveParams::from_thetas(theta1, theta2);
}

void parse_integrator(const json& j, RunConfig& c) {
  allow_keys(j, "integrator", {"t_final", "dt", "sample_stride", "trace_tolerance", "convergence_tolerance"});
  auto& o = c.integrator;
  if (j.contains("t_final")) o.t_final = non_negative(j["t_final"], "integrator.t_final");
  if (j.contains("dt")) o.dt = positive(j["dt"], "integrator.dt");
  if (j.contains("sample_stride")) o.sample_stride = integer(j["sample_stride"], "integrator.sample_stride", 1);
  if (j.contains("trace_tolerance")) o.trace_tolerance = positive(j["trace_tolerance"], "integrator.trace_tolerance");
  if (j.contains("convergence_tolerance")) {
    o.convergence_tolerance = positive(j["convergence_tolerance"], "integrator.convergence_tolerance");
  }
}

void parse_initial(const json& j, const std::filesystem::path& base, RunConfig& c) {
  auto& s = c.initial;
  if (j.is_string()) {
    if (j.get<std::string>() != "vacuum_gg") fail("initial_state", "string form must be \"vacuum_gg\"");
    s.kind = InitialStateSpec::Kind::vacuum_gg;
    return;
  }
  allow_keys(j, "initial_state", {"kind", "n1", "n2", "file"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("initial_state.kind", "required string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "vacuum_gg") {
    s.kind = InitialStateSpec::Kind::vacuum_gg;
  } else if (kind == "fock") {
    s.kind = InitialStateSpec::Kind::fock;
    s.n1 = j.contains("n1") ? integer(j["n1"], "initial_state.n1", 0) : 0;
    s.n2 = j.contains("n2") ? integer(j["n2"], "initial_state.n2", 0) : 0;
  } else if (kind == "custom") {
    s.kind = InitialStateSpec::Kind::custom;
    if (!j.contains("file") || !j["file"].is_string()) fail("initial_state.file", "required string");
    s.file = j["file"].get<std::string>();
    if (s.file.is_relative()) s.file = base / s.file;
  } else {
    fail("initial_state.kind", "must be vacuum_gg, fock or custom");
  }
}

void parse_fig3(const json& j, RunConfig& c) {
  allow_keys(j, "fig3", {"pairs"});
  if (!j.contains("pairs")) return;
  const json& p = j["pairs"];
  if (!p.is_array() || p.empty()) fail("fig3.pairs", "expected a non-empty array of [gamma, kappa]");
  c.fig3_pairs.clear();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string f = "fig3.pairs[" + std::to_string(i) + "]";
    if (!p[i].is_array() || p[i].size() != 2) fail(f, "expected [gamma, kappa]");
    c.fig3_pairs.emplace_back(non_negative(p[i][0], f + "[0]"), non_negative(p[i][1], f + "[1]"));
  }
}

void parse_sweep(const json& j, RunConfig& c) {
  allow_keys(j, "sweep", {"ratios", "kappas"});
  if (j.contains("ratios")) c.sweep.ratios = list_of(j["ratios"], "sweep.ratios");
  if (j.contains("kappas")) c.sweep.kappas = list_of(j["kappas"], "sweep.kappas");
  for (double r : c.sweep.ratios) {
    if (!(r >= 0.0 && r < 1.0)) fail("sweep.ratios", "each ratio must lie in [0, 1)");
  }
  for (double k : c.sweep.kappas) {
    if (k < 0.0) fail("sweep.kappas", "must be >= 0");
  }
}

void parse_validate(const json& j, RunConfig& c) {
  allow_keys(j, "validate", {"bogoliubov_cutoff", "frame_cutoff", "frame_ratio", "frame_t_final",
                             "rwa_xi", "rwa_nu_over_theta", "rwa_delta_over_nu", "rwa_cutoff"});
  auto& v = c.validate;
  if (j.contains("bogoliubov_cutoff")) v.bogoliubov_cutoff = integer(j["bogoliubov_cutoff"], "validate.bogoliubov_cutoff", 5);
  if (j.contains("frame_cutoff")) v.frame.cutoff = integer(j["frame_cutoff"], "validate.frame_cutoff", 1);
  if (v.frame.cutoff > 4) fail("validate.frame_cutoff", "must be <= 4");
  if (j.contains("frame_ratio")) v.frame.ratio = non_negative(j["frame_ratio"], "validate.frame_ratio");
  if (j.contains("frame_t_final")) v.frame.t_final = positive(j["frame_t_final"], "validate.frame_t_final");
  if (j.contains("rwa_xi")) v.rwa.xi1 = positive(j["rwa_xi"], "validate.rwa_xi");
  if (v.rwa.xi1 > 0.05) fail("validate.rwa_xi", "must be <= 0.05");
  if (j.contains("rwa_nu_over_theta")) v.rwa.nu_over_theta = positive(j["rwa_nu_over_theta"], "validate.rwa_nu_over_theta");
  if (j.contains("rwa_delta_over_nu")) v.rwa.delta_over_nu = positive(j["rwa_delta_over_nu"], "validate.rwa_delta_over_nu");
  if (j.contains("rwa_cutoff")) v.rwa.cutoff = integer(j["rwa_cutoff"], "validate.rwa_cutoff", 1);
}

}  // namespace

static RunConfig parse_config_at(const json& j, const std::filesystem::path& base) {
  RunConfig c;
  c.source = j;
  allow_keys(j, "", {"units", "dissipation", "effective", "couplings", "circuit", "cutoff", "integrator",
                     "initial_state", "steady", "fig3", "sweep", "validate", "workers", "name"});
  if (!j.contains("units")) fail("units", "required (must be \"" + std::string(kUnits) + "\")");
  if (!j["units"].is_string() || j["units"].get<std::string>() != kUnits) {
    fail("units", "must be \"" + std::string(kUnits) + "\"");
  }
  if (j.contains("dissipation")) parse_dissipation(j["dissipation"], c);
  if (j.contains("circuit")) parse_circuit(j["circuit"], c);
  if (j.contains("effective") == j.contains("couplings")) {
    fail("effective", "give exactly one of 'effective' or 'couplings'");
  }
  try {
    if (j.contains("couplings")) {
      parse_couplings(j["couplings"], c);
      c.effective = effective_params(c.system.g, c.system.xi);
    } else {
      parse_effective(j["effective"], c);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const UnsqueezableConfiguration&) {
    throw;  // keeps its own type; still a configuration problem
  } catch (const std::invalid_argument& e) {
    fail(j.contains("couplings") ? "couplings" : "effective", e.what());
  }
  if (j.contains("cutoff")) c.cutoff = integer(j["cutoff"], "cutoff", 1);
  if (j.contains("integrator")) parse_integrator(j["integrator"], c);
  if (j.contains("initial_state")) parse_initial(j["initial_state"], base, c);
  if (j.contains("steady")) {
    allow_keys(j["steady"], "steady", {"method"});
    if (j["steady"].contains("method")) {
      const auto& m = j["steady"]["method"];
      if (m == "direct") {
        c.steady_method = SteadyStateMethod::direct;
      } else if (m == "evolve") {
        c.steady_method = SteadyStateMethod::evolve;
      } else if (m == "sparse") {
        c.steady_method = SteadyStateMethod::sparse;
      } else {
        fail("steady.method", "must be \"direct\", \"evolve\" or \"sparse\"");
      }
    }
  }
  if (j.contains("fig3")) parse_fig3(j["fig3"], c);
  if (j.contains("sweep")) parse_sweep(j["sweep"], c);
  if (j.contains("validate")) parse_validate(j["validate"], c);
  if (j.contains("workers")) c.workers = integer(j["workers"], "workers", 1);
  try {
    c.integrator.validate();
  } catch (const std::invalid_argument& e) {
    fail("integrator", e.what());
  }
  return c;
}

RunConfig parse_config(const json& j) { return parse_config_at(j, std::filesystem::current_path()); }

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config_at(j, path.parent_path());
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  if (o.cutoff) {
    if (*o.cutoff < 1) throw ConfigError("--cutoff must be >= 1");
    c.cutoff = o.cutoff;
  }
  if (o.dt) {
    if (!(*o.dt > 0.0)) throw ConfigError("--dt must be > 0");
    c.integrator.dt = o.dt;
  }
  if (o.t_final) {
    if (!(*o.t_final >= 0.0)) throw ConfigError("--t-final must be >= 0");
    c.integrator.t_final = *o.t_final;
  }
  if (o.workers) {
    if (*o.workers < 1) throw ConfigError("--workers must be >= 1");
    c.workers = *o.workers;
  }
}

int resolved_cutoff(const RunConfig& c) {
  return c.cutoff ? *c.cutoff : cutoff_for_ratio(c.effective.ratio());
}

DensityMatrix initial_state(const InitialStateSpec& spec, const CompositeSpace& space) {
  switch (spec.kind) {
    case InitialStateSpec::Kind::vacuum_gg:
      return DensityMatrix::from_ket(Ket::basis(space, {0, 0, 0, 0}));
    case InitialStateSpec::Kind::fock:
      if (spec.n1 > space.factor(CompositeSpace::kMode1).cutoff ||
          spec.n2 > space.factor(CompositeSpace::kMode2).cutoff) {
        throw ConfigError("initial_state: Fock numbers exceed the cutoff");
      }
      return DensityMatrix::from_ket(Ket::basis(space, {0, 0, spec.n1, spec.n2}));
    case InitialStateSpec::Kind::custom: {
      std::ifstream in(spec.file);
      if (!in) throw ConfigError("initial_state.file: cannot open " + spec.file.string());
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("initial_state.file: invalid JSON: " + std::string(e.what()));
      }
      if (!j.is_array() || static_cast<Index>(j.size()) != space.dimension()) {
        throw ConfigError("initial_state.file: expected " + std::to_string(space.dimension()) +
                          " [re, im] pairs");
      }
      Vector v(space.dimension());
      for (Index i = 0; i < space.dimension(); ++i) {
        const auto& z = j[static_cast<std::size_t>(i)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ConfigError("initial_state.file: entry " + std::to_string(i) + " is not [re, im]");
        }
        v(i) = Complex{z[0].get<double>(), z[1].get<double>()};
      }
      if (!(v.norm() > 0.0)) throw ConfigError("initial_state.file: zero vector");
      return DensityMatrix::from_ket(Ket::normalized(space, v));
    }
  }
  throw ConfigError("initial_state: unknown kind");
}

}  // namespace tmsv
