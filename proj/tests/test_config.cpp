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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tmsv/config.hpp"
#include "tmsv/csv.hpp"
#include "tmsv/experiments.hpp"

using namespace tmsv;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"units", "angular_per_us"},
              {"effective", {{"theta1", 40}, {"theta2", 30}}},
              {"dissipation", {{"gamma", 20}}}};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tmsv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST_CASE("minimal config and defaults") {
  const RunConfig c = parse_config(minimal());
  CHECK(c.effective.ratio() == doctest::Approx(0.75));
  CHECK(c.system.gamma_r == 20.0);
  CHECK(c.system.gamma_phi == 20.0);
  CHECK(c.system.kappa[0] == 0.0);
  CHECK(resolved_cutoff(c) == cutoff_for_ratio(0.75));
  CHECK(c.initial.kind == InitialStateSpec::Kind::vacuum_gg);
  CHECK(c.fig3_pairs.size() == 3);
}

TEST_CASE("field-level errors") {
  auto expect_field = [](json j, const std::string& field) {
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains(field.c_str()), ConfigError);
  };
  json j = minimal();
  j.erase("units");
  expect_field(j, "units");
  j = minimal();
  j["units"] = "MHz";
  expect_field(j, "units");
  j = minimal();
  j["effective"]["ratio"] = 0.5;
  expect_field(j, "effective");
  j = minimal();
  j["dissipation"]["kappa"] = -1;
  expect_field(j, "dissipation.kappa");
  j = minimal();
  j["bogus"] = 1;
  expect_field(j, "bogus");
  j = minimal();
  j["steady"] = {{"method", "magic"}};
  expect_field(j, "steady.method");
  j = minimal();
  j["couplings"] = {{"g", 1}, {"xi", 0.1}};
  expect_field(j, "effective");
  j = minimal();
  j["effective"]["theta2"] = 50;
  CHECK_THROWS_AS(parse_config(j), std::invalid_argument);
}

TEST_CASE("steady method and initial state parsing") {
  json j = minimal();
  j["steady"] = {{"method", "sparse"}};
  j["initial_state"] = {{"kind", "fock"}, {"n1", 1}, {"n2", 1}};
  const RunConfig c = parse_config(j);
  CHECK(c.steady_method == SteadyStateMethod::sparse);
  CHECK(c.initial.kind == InitialStateSpec::Kind::fock);
  const auto rho = initial_state(c.initial, CompositeSpace::canonical(3));
  const Index i = CompositeSpace::canonical(3).index_of({0, 0, 1, 1});
  CHECK(rho.matrix()(i, i).real() == 1.0);
  InitialStateSpec big = c.initial;
  big.n1 = 2;
  CHECK_THROWS(initial_state(big, CompositeSpace::canonical(1)).matrix());
}

TEST_CASE("overrides") {
  RunConfig c = parse_config(minimal());
  Overrides o;
  o.cutoff = 5;
  o.dt = 0.001;
  o.t_final = 2.0;
  apply_overrides(c, o);
  CHECK(resolved_cutoff(c) == 5);
  CHECK(*c.integrator.dt == 0.001);
  CHECK(c.integrator.t_final == 2.0);
  Overrides bad;
  bad.workers = 0;
  CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);
}

TEST_CASE("csv header and number format") {
  const auto dir = scratch_dir("csv");
  {
    CsvWriter w(dir / "a.csv", {"t_us", "V"});
    w.row({0.5, 2.0 / 3.0});
    CHECK_THROWS(w.row({1.0}));
  }
  std::ifstream in(dir / "a.csv");
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1.rfind("# dissipative-tmsv v1", 0) == 0);
  CHECK(l2 == "t_us,V");
  CHECK(l3 == "0.5,0.666666666667");
}

TEST_CASE("preparation time") {
  CHECK(preparation_time({0, 1, 2, 3}, {2.0, 1.0, 0.52, 0.5}) == 2.0);
  CHECK(preparation_time({0, 1}, {0.5, 0.5}) == 0.0);
  CHECK(std::isnan(preparation_time({}, {})));
}

TEST_CASE("command runner exit codes and reports") {
  const auto dir = scratch_dir("run");
  std::ostringstream log;
  json bad = minimal();
  bad["units"] = "Hz";
  write(dir / "bad.json", bad);
  CHECK(run_command("effective", dir / "bad.json", dir / "out", {}, log) == kExitConfig);
  CHECK(std::filesystem::exists(dir / "out" / "effective_report.json"));
  CHECK(run_command("nonsense", dir / "bad.json", dir / "out", {}, log) == kExitConfig);

  json good = minimal();
  good["cutoff"] = 3;
  good["effective"] = {{"theta1", 40}, {"ratio", 0.3}};
  good["integrator"] = {{"t_final", 0.2}, {"dt", 0.002}, {"sample_stride", 10}};
  write(dir / "good.json", good);
  CHECK(run_command("evolve", dir / "good.json", dir / "out", {}, log) == kExitOk);
  std::ifstream rep(dir / "out" / "evolve_report.json");
  const json r = json::parse(rep);
  CHECK(r["config"] == good);
  CHECK(r["results"]["trajectory"]["steps"] == 100);
  CHECK(std::filesystem::exists(dir / "out" / "evolve.csv"));

  // Unstable step: numerical failure.
  Overrides o;
  o.dt = 0.2;
  o.t_final = 40.0;
  CHECK(run_command("evolve", dir / "good.json", dir / "out", o, log) == kExitNumerical);
}
