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

// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   acceptance            all criteria
//   acceptance 3 7 11     a subset
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tmsv/dynamics.hpp"
#include "tmsv/experiments.hpp"
#include "tmsv/model.hpp"
#include "tmsv/observables.hpp"
#include "tmsv/squeezing.hpp"
#include "tmsv/validation.hpp"

using namespace tmsv;

namespace {

// Tolerances and run lengths.
constexpr double kHeadlineV = 0.2857, kHeadlineTol = 0.01;
constexpr double kFastTol = 0.01, kFastBudgetS = 60.0;
constexpr double kFidelityMin = 0.99, kGroundMin = 0.99;
constexpr double kIdentityTol = 1e-12;
constexpr double kPrepLo = 0.1, kPrepHi = 0.5, kPrepBand = 0.05;
constexpr double kStrongLossMin = 0.39, kWeakLossTol = 0.05;
constexpr double kInitialIndependenceTol = 1e-3;
constexpr double kFrameTol = 1e-6;
constexpr double kBogoliubovTol = 1e-4;
constexpr double kRwaTol = 0.02;
constexpr double kDecayTol = 1e-6;
constexpr double kNuGhz = 2.9, kNuTolGhz = 0.05;
constexpr double kTraceTol = 1e-8, kHermTol = 1e-9, kPosTol = -1e-7, kNullityTol = 1e-10;

constexpr int kCutoff = 16;
constexpr double kTheta1 = 40.0, kRatio = 0.75, kGamma = 20.0;
constexpr double kDt = 0.002;        // RK4 is stable up to ~0.003 at cutoff 16
constexpr double kDtStrongLoss = 0.001;  // kappa = 20 roughly doubles the spectral radius
constexpr double kLongRun = 18.0;    // us; slowest relaxation rate ~0.4 / us
constexpr double kLossRun = 8.0;     // us

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Run {
  std::vector<double> t, v, fid, pg1, pg2;
  double max_trace_error = 0.0;
  double seconds = 0.0;
};

Run sideband_run(double ratio, int cutoff, double kappa, int n0, double t_final) {
  const auto eff = EffectiveParams::from_thetas(kTheta1, ratio * kTheta1);
  const auto space = CompositeSpace::canonical(cutoff);
  const LindbladModel model(build_effective_H(eff, space), standard_jumps(kGamma, kGamma, {kappa, kappa}, space));
  const auto obs = ObservableSet::standard(space, target_state(eff.zeta, space));
  EvolveOptions o;
  o.t_final = t_final;
  o.dt = kappa > kGamma / 2 ? kDtStrongLoss : kDt;
  o.sample_stride = static_cast<int>(std::lround(0.01 / *o.dt));
  o.trace_tolerance = kTraceTol;
  const auto t0 = std::chrono::steady_clock::now();
  const auto traj = evolve(model, DensityMatrix::from_ket(Ket::basis(space, {0, 0, n0, n0})), o, &obs);
  Run r;
  r.seconds = seconds_since(t0);
  r.t = traj.times;
  r.v = traj.column("V");
  r.fid = traj.column("fidelity");
  r.pg1 = traj.column("pg1");
  r.pg2 = traj.column("pg2");
  r.max_trace_error = traj.max_trace_error;
  return r;
}

// V at the last sample and its drift over the final microsecond.
double drift(const Run& r) {
  const double t_end = r.t.back();
  for (std::size_t i = r.t.size(); i-- > 0;) {
    if (r.t[i] <= t_end - 1.0 + 1e-9) return r.v.back() - r.v[i];
  }
  return r.v.back() - r.v.front();
}

struct Shared {
  std::optional<Run> vacuum;
  Run& headline() {
    if (!vacuum) vacuum = sideband_run(kRatio, kCutoff, 0.0, 0, kLongRun);
    return *vacuum;
  }
};

void criterion1(Shared& s) {
  const Run& r = s.headline();
  const double v = r.v.back();
  const Run fast = sideband_run(0.5, 7, 0.0, 0, 3.0);
  const double fast_oracle = oracle::ideal_v_from_ratio(0.5);
  const bool pass = std::abs(v - kHeadlineV) <= kHeadlineTol &&
                    std::abs(fast.v.back() - fast_oracle) <= kFastTol && fast.seconds < kFastBudgetS;
  report(1, pass,
         fmt("V(%.0f us) = %.5f vs %.4f +- %.2f (drift over last us %.1e, %.0f s, max |Tr-1| %.1e); "
             "fast r=0.5 N=7: V = %.5f vs %.5f +- %.2f in %.1f s (< %.0f s)",
             r.t.back(), v, kHeadlineV, kHeadlineTol, drift(r), r.seconds, r.max_trace_error, fast.v.back(),
             fast_oracle, kFastTol, fast.seconds, kFastBudgetS));
}

void criterion2(Shared& s) {
  const Run& r = s.headline();
  const bool pass = r.fid.back() > kFidelityMin && r.pg1.back() > kGroundMin && r.pg2.back() > kGroundMin;
  report(2, pass,
         fmt("fidelity %.5f, pg1 %.6f, pg2 %.6f (each > %.2f)", r.fid.back(), r.pg1.back(), r.pg2.back(),
             kFidelityMin));
}

void criterion3(Shared&) {
  double worst = 0.0, worst_oracle = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double r = 0.99 * k / 99.0;
    const double zeta = std::atanh(r);
    const double a = ideal_variance(zeta), b = ideal_variance_from_ratio(r);
    worst = std::max(worst, std::abs(a - b));
    worst_oracle = std::max({worst_oracle, std::abs(a - 2.0 * std::exp(-2.0 * zeta)),
                             std::abs(b - oracle::ideal_v_from_ratio(r))});
  }
  report(3, worst < kIdentityTol && worst_oracle < kIdentityTol,
         fmt("max |2e^{-2 zeta} - 2(1-r)/(1+r)| = %.1e over 100 ratios in [0, 0.99], vs closed forms %.1e "
             "(< %.0e)",
             worst, worst_oracle, kIdentityTol));
}

void criterion4(Shared& s) {
  const Run& r = s.headline();
  const double tp = preparation_time(r.t, r.v, kPrepBand);
  report(4, tp >= kPrepLo && tp <= kPrepHi,
         fmt("V enters and stays within %.0f%% of V(%.0f us) = %.5f at t = %.3f us (band [%.1f, %.1f] us)",
             100 * kPrepBand, r.t.back(), r.v.back(), tp, kPrepLo, kPrepHi));
}

void criterion5(Shared&) {
  const double ideal = oracle::ideal_v_from_ratio(kRatio);
  const Run strong = sideband_run(kRatio, kCutoff, kGamma, 0, kLossRun);
  const Run weak = sideband_run(kRatio, kCutoff, 2.0, 0, kLossRun);
  const bool pass = strong.v.back() > kStrongLossMin && std::abs(weak.v.back() - ideal) <= kWeakLossTol;
  report(5, pass,
         fmt("kappa=20: V = %.4f (> %.2f, drift %.1e); kappa=2: V = %.4f vs ideal %.4f +- %.2f (drift %.1e)",
             strong.v.back(), kStrongLossMin, drift(strong), weak.v.back(), ideal, kWeakLossTol, drift(weak)));
}

void criterion6(Shared& s) {
  const Run& a = s.headline();
  const Run b = sideband_run(kRatio, kCutoff, 0.0, 1, kLongRun);
  const double diff = std::abs(a.v.back() - b.v.back());
  report(6, diff < kInitialIndependenceTol,
         fmt("V(%.0f us) from |0,0,g,g> = %.5f, from |1,1,g,g> = %.5f, |diff| = %.1e (< %.0e)", a.t.back(),
             a.v.back(), b.v.back(), diff, kInitialIndependenceTol));
}

void criterion7(Shared&) {
  const FrameCheckOptions o;  // cutoff 3, r = 0.5, 10 samples
  const auto rep = transformed_frame_check(o);
  report(7, rep.max_trace_distance < kFrameTol && rep.trace_distances.size() == 10,
         fmt("max trace distance %.1e over %zu samples at cutoff %d, r = %.2f (< %.0e)", rep.max_trace_distance,
             rep.trace_distances.size(), o.cutoff, o.ratio, kFrameTol));
}

void criterion8(Shared&) {
  const auto rep = bogoliubov_check(EffectiveParams::from_thetas(kTheta1, kRatio * kTheta1), kCutoff);
  report(8, rep.interior_deviation() < kBogoliubovTol,
         fmt("interior (n <= %d) deviation %.1e (< %.0e), S exponentiated at working cutoff %d; "
             "with S truncated at %d: %.1f",
             rep.interior_cutoff, rep.interior_deviation(), kBogoliubovTol, rep.working_cutoff, kCutoff,
             rep.truncated_interior_deviation));
}

void criterion9(Shared&) {
  const auto t0 = std::chrono::steady_clock::now();
  const RwaCheckOptions o;
  const auto rep = rwa_check(o);
  report(9, rep.max_overlap_deficit < kRwaTol,
         fmt("max overlap deficit %.4f (< %.2f) over %.3f us; nu = %.0f, %.0f Theta1, xi = %.3f, delta = %.0f, "
             "%ld steps, %.0f s",
             rep.max_overlap_deficit, kRwaTol, rep.exchange_period, rep.nu[0], rep.nu[1], o.xi1, rep.delta,
             rep.steps, seconds_since(t0)));
}

void criterion10(Shared&) {
  const auto space = CompositeSpace::canonical(4);
  const auto ops = oracle::canonical_ops(4);
  const double gamma = 20.0, kappa = 2.0;
  EvolveOptions o;
  o.dt = 1e-4;
  o.sample_stride = 10;

  ObservableSet pe(space);
  pe.add_expectation("pe1", Operator(space, ops.sp1 * ops.sp1.adjoint()));
  o.t_final = 3.0 / (2.0 * gamma);
  const auto qubit = evolve(LindbladModel(Operator::zero(space), standard_jumps(gamma, 0.0, {0.0, 0.0}, space)),
                            DensityMatrix::from_ket(Ket::basis(space, {1, 0, 0, 0})), o, &pe);
  double q_err = 0.0;
  for (std::size_t i = 0; i < qubit.times.size(); ++i) {
    q_err = std::max(q_err, std::abs(qubit.records[i][0] - std::exp(-2.0 * gamma * qubit.times[i])));
  }

  ObservableSet n1(space);
  n1.add_expectation("n1", Operator(space, ops.a1.adjoint() * ops.a1));
  o.t_final = 3.0 / (2.0 * kappa);
  o.sample_stride = 100;
  const int n0 = 3;
  const auto cavity = evolve(LindbladModel(Operator::zero(space), standard_jumps(0.0, 0.0, {kappa, 0.0}, space)),
                             DensityMatrix::from_ket(Ket::basis(space, {0, 0, n0, 0})), o, &n1);
  double c_err = 0.0;
  for (std::size_t i = 0; i < cavity.times.size(); ++i) {
    c_err = std::max(c_err, std::abs(cavity.records[i][0] - n0 * std::exp(-2.0 * kappa * cavity.times[i])));
  }
  report(10, q_err < kDecayTol && c_err < kDecayTol,
         fmt("qubit e^{-2 Gamma t}: max err %.1e; cavity n0 e^{-2 kappa t}: max err %.1e over 3 decay times "
             "(< %.0e)",
             q_err, c_err, kDecayTol));
}

void criterion11(Shared&) {
  CircuitParams c;
  c.capacitance_pf = {12.0, 12.0};
  c.inductance_ph = {250.0, 250.0};
  c.mutual_inductance_ph = Real2x2::Constant(2.72);
  c.persistent_current_na = 500.0;
  const auto d = circuit_to_params(c);
  const double oracle_ghz = 1.0 / (2.0 * std::numbers::pi * std::sqrt(250e-12 * 12e-12)) * 1e-9;
  report(11, std::abs(d.nu_ghz[0] - kNuGhz) <= kNuTolGhz && std::abs(d.nu_ghz[0] - oracle_ghz) < 1e-9,
         fmt("nu / 2 pi = %.4f GHz (oracle %.4f, target %.1f +- %.2f)", d.nu_ghz[0], oracle_ghz, kNuGhz, kNuTolGhz));
}

void criterion12(Shared&) {
  std::mt19937 rng(20260);
  std::uniform_real_distribution<double> rate(0.0, 25.0), ratio(0.0, 0.9);
  const auto space = CompositeSpace::canonical(2);
  const auto d = space.dimension();
  double trace = 0.0, herm = 0.0, pos = 0.0, nullity = 0.0;
  int cases = 0;
  for (; cases < 100; ++cases) {
    SystemParams p;
    p.gamma_r = rate(rng);
    p.gamma_phi = rate(rng);
    p.kappa = {rate(rng), rate(rng)};
    const auto eff = EffectiveParams::from_thetas(kTheta1, ratio(rng) * kTheta1);
    const LindbladModel model(build_effective_H(eff, space), standard_jumps(p, space));
    const oracle::M rho0 = oracle::random_density(rng, d, 1 + cases % 6);

    const oracle::M a = oracle::random_matrix(rng, d, d);
    nullity = std::max(nullity, std::abs(dissipator(Operator(space, a), rho0).trace()) / (1.0 + a.squaredNorm()));
    for (const auto& j : model.jumps()) nullity = std::max(nullity, std::abs(dissipator(j.op, rho0).trace()));

    EvolveOptions o;
    o.t_final = 0.2;
    o.dt = kDt;
    o.sample_stride = 10;
    o.store_states = true;
    const auto traj = evolve(model, DensityMatrix(space, rho0), o);
    for (const auto& s : traj.states) {
      trace = std::max(trace, s.trace_error());
      herm = std::max(herm, s.hermiticity_error());
      pos = std::min(pos, s.min_eigenvalue());
    }
  }
  report(12, trace < kTraceTol && herm < kHermTol && pos >= kPosTol && nullity < kNullityTol,
         fmt("%d random models/states: trace drift %.1e (< %.0e), hermiticity %.1e (< %.0e), "
             "min eigenvalue %.1e (>= %.0e), dissipator trace %.1e (< %.0e)",
             cases, trace, kTraceTol, herm, kHermTol, pos, kPosTol, nullity, kNullityTol));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Shared&)>> criteria{
      criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  Shared shared;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    try {
      criteria[k](shared);
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("acceptance: %d failed, %.0f s\n", failures, seconds_since(t0));
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
