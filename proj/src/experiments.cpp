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

#include "tmsv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "tmsv/csv.hpp"
#include "tmsv/errors.hpp"
#include "tmsv/observables.hpp"
#include "tmsv/squeezing.hpp"

namespace tmsv {

namespace {

using nlohmann::json;

json to_json(const EffectiveParams& e) {
  return json{{"theta1", e.theta1}, {"theta2", e.theta2}, {"ratio", e.ratio()},
              {"zeta", e.zeta},     {"g_eff", e.g_eff},   {"ideal_V", ideal_variance(e.zeta)}};
}

json to_json(const Real2x2& m) { return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}); }

json to_json(const Populations& p) {
  return json{{"n1", p.n1}, {"n2", p.n2}, {"pg1", p.pg1}, {"pg2", p.pg2}, {"pee", p.pee}};
}

json cutoff_json(const EffectiveParams& e, int cutoff) {
  return json{{"cutoff", cutoff}, {"tail_mass", tail_mass(e.ratio(), cutoff)}};
}

Operator sideband_hamiltonian(const RunConfig& c, const EffectiveParams& eff, const CompositeSpace& space,
                              bool use_couplings) {
  if (use_couplings) return build_effective_H(c.system.g, c.system.xi, space);
  return build_effective_H(eff, space);
}

// Runs `n` independent jobs on up to `workers` threads.
template <typename Job>
void parallel_for(std::size_t n, int workers, Job job) {
  const auto threads = static_cast<std::size_t>(std::max(1, std::min<int>(workers, static_cast<int>(n))));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct CurveResult {
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  // trajectory_columns() minus t_us
  json summary;
  std::string error;
};

// One trajectory of the sideband model with the given dissipation.
CurveResult run_curve(const RunConfig& c, const SystemParams& system, const EffectiveParams& eff,
                      int cutoff, bool use_couplings, CsvWriter* stream) {
  CurveResult out;
  const CompositeSpace space = CompositeSpace::canonical(cutoff);
  const Ket target = target_state(eff.zeta, space);
  const LindbladModel model(sideband_hamiltonian(c, eff, space, use_couplings), standard_jumps(system, space));
  const ObservableSet observables = ObservableSet::standard(space, target);
  const DensityMatrix rho0 = initial_state(c.initial, space);
  const double gamma = system.gamma_r;

  auto sink = [&](double t, const std::vector<double>& row) {
    std::vector<double> full = row;
    full.push_back(gamma * t);
    if (stream != nullptr) {
      std::vector<double> line{t};
      line.insert(line.end(), full.begin(), full.end());
      stream->row(line);
    }
    out.times.push_back(t);
    out.rows.push_back(std::move(full));
  };
  const auto traj = evolve(model, rho0, c.integrator, &observables, sink);

  std::vector<double> v;
  for (const auto& r : out.rows) v.push_back(r[0]);
  const auto& last = out.rows.back();
  out.summary = json{{"final_V", last[0]},
                     {"ideal_V", ideal_variance(eff.zeta)},
                     {"final_fidelity", last[1]},
                     {"final_populations", to_json(populations(*traj.final_state))},
                     {"entangled", entanglement_witness(std::max(0.0, last[0]))},
                     {"preparation_time_us", preparation_time(out.times, v)},
                     {"dt", traj.dt},
                     {"steps", traj.steps},
                     {"invariant_blocks", traj.num_blocks},
                     {"max_trace_error", traj.max_trace_error}};
  return out;
}

std::string method_name(SteadyStateMethod m) {
  switch (m) {
    case SteadyStateMethod::direct:
      return "direct";
    case SteadyStateMethod::sparse:
      return "sparse";
    case SteadyStateMethod::evolve:
      break;
  }
  return "evolve";
}

}  // namespace

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"t_us", "V",   "fidelity",  "n1",     "n2",
                                             "pg1",  "pg2", "trace_err", "gamma_t"};
  return cols;
}

double preparation_time(const std::vector<double>& times, const std::vector<double>& v, double fraction) {
  if (times.empty() || times.size() != v.size()) return std::numeric_limits<double>::quiet_NaN();
  const double final_v = v.back();
  const double band = fraction * std::abs(final_v);
  std::size_t first = v.size() - 1;
  while (first > 0 && std::abs(v[first - 1] - final_v) <= band) --first;
  return times[first];
}

RunReport cmd_effective(const RunConfig& c, const std::filesystem::path&) {
  RunReport r;
  r.results["effective"] = to_json(c.effective);
  r.results["recommended_cutoff"] = cutoff_for_ratio(c.effective.ratio());
  if (c.effective.theta2 == 0.0) r.warnings.push_back("no squeezing: Theta2 = 0 gives zeta = 0 and V = 2");
  if (c.circuit) {
    const CircuitDerived d = circuit_to_params(*c.circuit);
    r.results["circuit"] = json{{"nu", d.nu}, {"nu_ghz", d.nu_ghz}, {"g", to_json(d.g)}};
    if (c.circuit->epsilon != 0.0) {
      r.warnings.push_back("circuit.epsilon != 0: only the degeneracy-point reduction is modelled");
    }
  }
  if (c.has_couplings) {
    r.results["g"] = to_json(c.system.g);
    r.results["xi"] = to_json(c.system.xi);
    if (c.system.delta > 0.0) {
      const DrivePlan plan = drive_frequencies(c.system.delta, c.system.nu);
      r.results["drive_frequencies"] = to_json(plan.omega_d);
    }
  }
  return r;
}

RunReport cmd_evolve(const RunConfig& c, const std::filesystem::path& out_dir) {
  RunReport r;
  const int cutoff = resolved_cutoff(c);
  r.results["truncation"] = cutoff_json(c.effective, cutoff);
  CsvWriter csv(out_dir / "evolve.csv", trajectory_columns());
  const CurveResult curve = run_curve(c, c.system, c.effective, cutoff, c.has_couplings, &csv);
  r.results["trajectory"] = curve.summary;
  return r;
}

RunReport cmd_steady(const RunConfig& c, const std::filesystem::path&) {
  RunReport r;
  const int cutoff = resolved_cutoff(c);
  r.results["truncation"] = cutoff_json(c.effective, cutoff);
  const CompositeSpace space = CompositeSpace::canonical(cutoff);
  const LindbladModel model(sideband_hamiltonian(c, c.effective, space, c.has_couplings),
                            standard_jumps(c.system, space));
  if (c.steady_method == SteadyStateMethod::evolve && !(c.integrator.t_final > 0.0)) {
    throw ConfigError("config field 'integrator.t_final': steady method 'evolve' needs t_final > 0");
  }
  const auto ss = steady_state(model, c.steady_method, c.integrator, initial_state(c.initial, space));
  const Ket target = target_state(c.effective.zeta, space);
  json s{{"method", method_name(c.steady_method)},
         {"V", epr_variance(ss.state)},
         {"ideal_V", ideal_variance(c.effective.zeta)},
         {"fidelity", fidelity(ss.state, target)},
         {"populations", to_json(populations(ss.state))},
         {"residual", ss.residual}};
  if (ss.smallest_singular_value) s["smallest_singular_value"] = *ss.smallest_singular_value;
  if (ss.second_singular_value) s["second_singular_value"] = *ss.second_singular_value;
  if (c.steady_method == SteadyStateMethod::direct) s["null_dimension"] = ss.null_dimension;
  if (c.steady_method == SteadyStateMethod::evolve) s["time_reached_us"] = ss.time_reached;
  for (const auto& w : ss.warnings) r.warnings.push_back(w);
  r.results["steady_state"] = s;
  return r;
}

RunReport cmd_fig3(const RunConfig& c, const std::filesystem::path& out_dir) {
  RunReport r;
  if (c.fig3_pairs.empty()) throw ConfigError("config field 'fig3.pairs': at least one pair required");
  std::vector<std::pair<double, double>> pairs;
  std::set<std::pair<double, double>> seen;
  for (const auto& p : c.fig3_pairs) {
    if (seen.insert(p).second) {
      pairs.push_back(p);
    } else {
      r.warnings.push_back("duplicate (gamma, kappa) pair (" + format_number(p.first) + ", " +
                           format_number(p.second) + ") ignored");
    }
  }
  const int cutoff = resolved_cutoff(c);
  r.results["truncation"] = cutoff_json(c.effective, cutoff);

  std::vector<CurveResult> curves(pairs.size());
  parallel_for(pairs.size(), c.workers, [&](std::size_t i) {
    SystemParams system = c.system;
    system.gamma_r = system.gamma_phi = pairs[i].first;
    system.kappa = {pairs[i].second, pairs[i].second};
    try {
      curves[i] = run_curve(c, system, c.effective, cutoff, c.has_couplings, nullptr);
    } catch (const std::exception& e) {
      curves[i].error = e.what();
    }
  });

  std::vector<std::string> cols{"curve", "gamma", "kappa"};
  cols.insert(cols.end(), trajectory_columns().begin(), trajectory_columns().end());
  cols.push_back("V_ideal");
  CsvWriter csv(out_dir / "fig3.csv", cols);
  const double v_ideal = ideal_variance(c.effective.zeta);
  json summary = json::array();
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string id = "curve" + std::to_string(i);
    json entry{{"curve", id}, {"gamma", pairs[i].first}, {"kappa", pairs[i].second}};
    if (!curves[i].error.empty()) {
      entry["error"] = curves[i].error;
      failures.push_back(id + ": " + curves[i].error);
    } else {
      entry.update(curves[i].summary);
    }
    for (std::size_t k = 0; k < curves[i].rows.size(); ++k) {
      std::vector<double> line{pairs[i].first, pairs[i].second, curves[i].times[k]};
      line.insert(line.end(), curves[i].rows[k].begin(), curves[i].rows[k].end());
      line.push_back(v_ideal);
      csv.row({id}, line);
    }
    summary.push_back(entry);
  }
  r.results["curves"] = summary;
  r.results["failures"] = failures;
  if (!failures.empty()) r.exit_code = kExitNumerical;
  return r;
}

RunReport cmd_validate(const RunConfig& c, const std::filesystem::path&) {
  RunReport r;
  const auto& v = c.validate;
  json checks = json::array();
  std::vector<std::string> failed;
  auto record = [&](const std::string& name, double value, double bound, json detail) {
    const bool pass = value < bound;
    detail["check"] = name;
    detail["value"] = value;
    detail["bound"] = bound;
    detail["pass"] = pass;
    checks.push_back(detail);
    if (!pass) failed.push_back(name);
  };

  const BogoliubovReport b = bogoliubov_check(c.effective, v.bogoliubov_cutoff);
  record("bogoliubov", b.interior_deviation(), v.bogoliubov_bound,
         json{{"cutoff", b.cutoff},
              {"interior_cutoff", b.interior_cutoff},
              {"working_cutoff", b.working_cutoff},
              {"truncated_interior_deviation", b.truncated_interior_deviation},
              {"mode1", b.interior_deviation_mode1},
              {"mode2", b.interior_deviation_mode2},
              {"boundary_deviation", b.boundary_deviation}});

  const FrameCheckReport f = transformed_frame_check(v.frame);
  record("transformed_frame", f.max_trace_distance, v.frame_bound,
         json{{"cutoff", v.frame.cutoff},
              {"ratio", v.frame.ratio},
              {"times", f.times},
              {"trace_distances", f.trace_distances},
              {"textbook_transformed_H_max_trace_distance", f.max_trace_distance_textbook}});

  const RwaCheckReport w = rwa_check(v.rwa);
  record("rwa", w.max_overlap_deficit, v.rwa_bound,
         json{{"g", w.g},
              {"nu", w.nu},
              {"delta", w.delta},
              {"xi", to_json(w.xi)},
              {"exchange_period", w.exchange_period},
              {"dt", w.dt},
              {"steps", w.steps},
              {"scaling", "nu = " + format_number(v.rwa.nu_over_theta) +
                              " Theta1 instead of the physical GHz-scale separation"}});

  r.results["checks"] = checks;
  r.results["full_chain_check"] = "not run";
  if (!failed.empty()) {
    r.exit_code = kExitValidation;
    std::string names;
    for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n;
    r.results["failed"] = names;
  }
  return r;
}

RunReport cmd_sweep(const RunConfig& c, const std::filesystem::path& out_dir) {
  RunReport r;
  const std::vector<double> ratios =
      c.sweep.ratios.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75} : c.sweep.ratios;
  const std::vector<double> kappas = c.sweep.kappas.empty() ? std::vector<double>{0.0} : c.sweep.kappas;
  if (c.steady_method == SteadyStateMethod::evolve && !(c.integrator.t_final > 0.0)) {
    throw ConfigError("config field 'integrator.t_final': steady method 'evolve' needs t_final > 0");
  }
  struct Point {
    double ratio = 0.0, kappa = 0.0;
    int cutoff = 0;
    double v = 0.0, fid = 0.0, residual = 0.0;
    std::string error;
  };
  std::vector<Point> points;
  for (double ratio : ratios) {
    for (double kappa : kappas) {
      Point p;
      p.ratio = ratio;
      p.kappa = kappa;
      points.push_back(p);
    }
  }
  const double theta1 = c.effective.theta1;
  parallel_for(points.size(), c.workers, [&](std::size_t i) {
    Point& p = points[i];
    try {
      const EffectiveParams eff = EffectiveParams::from_thetas(theta1, p.ratio * theta1);
      p.cutoff = c.cutoff ? *c.cutoff : cutoff_for_ratio(p.ratio);
      const CompositeSpace space = CompositeSpace::canonical(p.cutoff);
      SystemParams system = c.system;
      system.kappa = {p.kappa, p.kappa};
      const LindbladModel model(build_effective_H(eff, space), standard_jumps(system, space));
      const auto ss = steady_state(model, c.steady_method, c.integrator, initial_state(c.initial, space));
      p.v = epr_variance(ss.state);
      p.fid = fidelity(ss.state, target_state(eff.zeta, space));
      p.residual = ss.residual;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });

  CsvWriter csv(out_dir / "sweep.csv", {"r", "kappa", "V_steady", "V_ideal", "fidelity"});
  json table = json::array();
  std::vector<std::string> failures;
  for (const auto& p : points) {
    json row{{"r", p.ratio}, {"kappa", p.kappa}, {"cutoff", p.cutoff}};
    if (!p.error.empty()) {
      row["error"] = p.error;
      failures.push_back("r=" + format_number(p.ratio) + " kappa=" + format_number(p.kappa) + ": " + p.error);
    } else {
      const double ideal = ideal_variance_from_ratio(p.ratio);
      csv.row({p.ratio, p.kappa, p.v, ideal, p.fid});
      row.update(json{{"V_steady", p.v}, {"V_ideal", ideal}, {"fidelity", p.fid}, {"residual", p.residual}});
    }
    table.push_back(row);
  }
  // Observation only: steady V is expected not to decrease with kappa.
  bool monotone = true;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    for (std::size_t k = 1; k < kappas.size(); ++k) {
      const auto& a = points[i * kappas.size() + k - 1];
      const auto& b = points[i * kappas.size() + k];
      if (a.error.empty() && b.error.empty() && b.v < a.v - 1e-3) monotone = false;
    }
  }
  r.results["method"] = method_name(c.steady_method);
  r.results["points"] = table;
  r.results["observed_nondecreasing_in_kappa"] = monotone;
  r.results["failures"] = failures;
  if (!failures.empty()) r.exit_code = kExitNumerical;
  return r;
}

int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, const Overrides& overrides, std::ostream& log) {
  using Cmd = RunReport (*)(const RunConfig&, const std::filesystem::path&);
  static const std::vector<std::pair<std::string, Cmd>> commands{
      {"effective", cmd_effective}, {"evolve", cmd_evolve},     {"steady", cmd_steady},
      {"fig3", cmd_fig3},           {"validate", cmd_validate}, {"sweep", cmd_sweep}};
  const auto it = std::find_if(commands.begin(), commands.end(), [&](const auto& p) { return p.first == command; });
  if (it == commands.end()) {
    log << "unknown command '" << command << "'\n";
    return kExitConfig;
  }

  json report{{"command", command}, {"config_path", config_path.string()}};
  auto write_report = [&]() {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream out(out_dir / (command + "_report.json"));
    if (out) out << report.dump(2) << '\n';
  };

  int code = kExitOk;
  try {
    RunConfig config = load_config(config_path);
    report["config"] = config.source;
    apply_overrides(config, overrides);
    report["overrides"] = json{{"cutoff", overrides.cutoff ? json(*overrides.cutoff) : json()},
                               {"dt", overrides.dt ? json(*overrides.dt) : json()},
                               {"t_final", overrides.t_final ? json(*overrides.t_final) : json()},
                               {"workers", overrides.workers ? json(*overrides.workers) : json()}};
    report["units"] = kUnits;
    report["effective"] = to_json(config.effective);
    std::filesystem::create_directories(out_dir);

    const auto start = std::chrono::steady_clock::now();
    RunReport r = it->second(config, out_dir);
    report["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["results"] = r.results;
    report["warnings"] = r.warnings;
    for (const auto& w : r.warnings) log << "warning: " << w << '\n';
    code = r.exit_code;
    if (code == kExitValidation) log << "validation failed: " << r.results.value("failed", "") << '\n';
  } catch (const NumericalError& e) {
    report["error"] = e.what();
    log << "numerical failure: " << e.what() << '\n';
    code = kExitNumerical;
  } catch (const std::invalid_argument& e) {
    report["error"] = e.what();
    log << "configuration error: " << e.what() << '\n';
    code = kExitConfig;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    log << "error: " << e.what() << '\n';
    code = kExitNumerical;
  }
  report["exit_code"] = code;
  write_report();
  return code;
}

}  // namespace tmsv
