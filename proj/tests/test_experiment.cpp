// SPDX-License-Identifier: Apache-2.0
//
// cirate: finite-alphabet rate analysis for precoded MU-MIMO downlinks
// Copyright (C) 2026 The cirate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cirate/experiment.hpp"

using namespace cirate;

namespace {

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::string config_error(const std::string& json, Experiment kind = Experiment::rate_sweep) {
  try {
    parse_config(json, default_config(kind)).validate(kind);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

ExperimentConfig small_sweep() {
  ExperimentConfig c = default_config(Experiment::rate_sweep);
  c.snr_db = {0, 10};
  c.trials = 200;
  c.seed = 17;
  return c;
}

const Verdict* find(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c.verdict;
  return nullptr;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("config parsing fills fields") {
    const ExperimentConfig c = parse_config(R"({
      "n_antennas": 3, "n_users": 2, "modulation_order": 4,
      "snr_db": [0, 5], "sigma2": 2.0, "trials": 500, "seed": 99,
      "schemes": ["zf", "ci"], "mode": "paper_verbatim",
      "geometry": {"type": "annulus", "r_min": 5, "r_max": 50, "placements": 3},
      "u_vector": [[0.25, 0.25], [0.75, -0.25]],
      "power_method": "closed_form", "epsilon": 0.01, "threads": 3
    })", default_config(Experiment::rate_sweep));
    CHECK(c.n_antennas == 3);
    CHECK(c.modulation_order == 4);
    CHECK(c.snr_db == std::vector<double>{0, 5});
    CHECK(c.sigma2 == 2.0);
    CHECK(c.trials == 500);
    CHECK(c.seed == 99);
    CHECK(c.schemes == std::vector<Scheme>{Scheme::zf, Scheme::ci});
    CHECK(c.mode == RateMode::paper_verbatim);
    CHECK(c.geometry.type == GeometrySpec::Type::annulus);
    CHECK(c.geometry.placements == 3);
    CHECK(c.u_vector[1] == cplx(0.75, -0.25));
    CHECK(c.power_method == PowerMethod::closed_form);
    CHECK(c.threads == 3);
    CHECK_NOTHROW(c.validate(Experiment::rate_sweep));
  }

  TEST_CASE("config errors name the field") {
    CHECK(starts_with(config_error(R"({"n_user": 2})"), "n_user"));
    CHECK(starts_with(config_error(R"({"modulation_order": 3})"), "modulation_order"));
    CHECK(starts_with(config_error(R"({"n_antennas": 1})"), "n_antennas"));
    CHECK(starts_with(config_error(R"({"trials": 10})"), "trials"));
    CHECK(starts_with(config_error(R"({"snr_db": [5, 0]})"), "snr_db"));
    CHECK(starts_with(config_error(R"({"sigma2": -1})"), "sigma2"));
    CHECK(starts_with(config_error(R"({"schemes": ["zf", "zf"]})"), "schemes"));
    CHECK(starts_with(config_error(R"({"schemes": ["mmse"]})"), "schemes"));
    CHECK(starts_with(config_error(R"({"n_antennas": 3, "schemes": ["none"]})"), "schemes"));
    CHECK(starts_with(config_error(R"({"u_vector": [0.5, 0.6]})"), "u_vector"));
    CHECK(starts_with(config_error(R"({"geometry": {"type": "ring"}})"), "geometry.type"));
    CHECK(starts_with(config_error(R"({"n_users": 6, "n_antennas": 6, "modulation_order": 16})"), "n_users"));
    CHECK(starts_with(config_error(R"({"epsilon": 0})", Experiment::maxmin), "epsilon"));
    CHECK(starts_with(config_error(R"({"distance_grid": [10, 5]})", Experiment::min_power), "distance_grid"));
    CHECK(starts_with(config_error(R"({"trials": "many"})"), "trials"));
    CHECK_THROWS_AS(parse_config("[1, 2]", {}), ConfigError);
    CHECK_THROWS_AS(parse_config("{", {}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json", {}), ConfigError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
  }

  TEST_CASE("CSV layout") {
    const auto rows = run_rate_sweep(small_sweep());
    const std::string text = csv(rows);
    CHECK(starts_with(text, std::string(kCsvHeader) + "\n"));
    // 3 schemes x 2 SNRs x (2 users + sum) x (mc_rate, bound)
    CHECK(rows.size() == 36);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) CHECK(std::count(line.begin(), line.end(), ',') == 11);
    CHECK(rows[0].quantity == "mc_rate");
    CHECK(rows[0].ci95.has_value());
    CHECK(rows[2].user == "sum");
    CHECK(rows[3].quantity == "bound");
    CHECK(rows[3].user == "0");
    CHECK_FALSE(rows[3].ci95.has_value());
    CHECK(text.find(",bound,") != std::string::npos);
    CHECK(text.find(",NA,200,17\n") != std::string::npos);
  }

  TEST_CASE("reruns are byte-identical and independent of the worker count") {
    ExperimentConfig c = small_sweep();
    c.geometry.type = GeometrySpec::Type::annulus;
    c.geometry.r_min = 5;
    c.geometry.placements = 2;
    c.threads = 1;
    const std::string a = csv(run_rate_sweep(c));
    c.threads = 4;
    const std::string b = csv(run_rate_sweep(c));
    CHECK(a == b);
    c.seed = 18;
    CHECK(csv(run_rate_sweep(c)) != a);

    ExperimentConfig m = default_config(Experiment::maxmin);
    m.total_power_db = {50, 60};
    m.threads = 1;
    const std::string ma = csv(run_maxmin(m));
    m.threads = 3;
    CHECK(csv(run_maxmin(m)) == ma);
  }

  TEST_CASE("min-power rows") {
    ExperimentConfig c = default_config(Experiment::min_power);
    c.distance_grid = {10, 20};
    const auto rows = run_min_power(c);
    int closed = 0;
    for (const auto& r : rows) {
      CHECK(r.snr_db == "NA");
      CHECK(starts_with(r.experiment_id, "min-power:d="));
      REQUIRE(r.value.has_value());
      CHECK(*r.value > 0.0);
      if (r.quantity == "min_power_closed") {
        ++closed;
        CHECK(r.scheme != Scheme::zf);
      }
    }
    CHECK(closed == 4);
    c.target_rate = 1.0;
    CHECK_THROWS_AS(run_min_power(c), Infeasible);
  }

  TEST_CASE("maxmin rows carry the fairness summary") {
    ExperimentConfig c = default_config(Experiment::maxmin);
    c.total_power_db = {55};
    c.schemes = {Scheme::zf};
    const auto rows = run_maxmin(c);
    double jain = -1, equal_jain = -1;
    for (const auto& r : rows) {
      if (r.quantity == "jain") jain = *r.value;
      if (r.quantity == "equal_split_jain") equal_jain = *r.value;
      CHECK(r.snr_db == "55");
    }
    CHECK(jain >= 0.99);
    CHECK(jain > equal_jain);
  }

  TEST_CASE("validation suite passes and is seed-stable") {
    ValidateOptions o;
    const ValidationReport a = run_validate(o);
    CHECK(a.passed());
    o.seed = 2;
    const ValidationReport b = run_validate(o);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
      CHECK(a.checks[i].name == b.checks[i].name);
      CHECK(a.checks[i].verdict == b.checks[i].verdict);
    }
    std::ostringstream os;
    write_report(os, a);
    CHECK(starts_with(os.str(), "check,verdict,deviation,tolerance,note\n"));
  }

  TEST_CASE("a perturbed 1F1 is caught") {
    ValidateOptions o;
    o.hyp1f1 = [](double a, double b, double z) {
      SpecFunResult r = hyp1f1(a, b, z);
      if (z >= 0.0) r.value *= 1.01;
      return r;
    };
    const ValidationReport r = run_validate(o);
    CHECK_FALSE(r.passed());
    const Verdict* k = find(r, "hyp1f1_kummer");
    REQUIRE(k != nullptr);
    CHECK(*k == Verdict::fail);
    const Verdict* ref = find(r, "hyp1f1_vs_reference");
    REQUIRE(ref != nullptr);
    CHECK(*ref == Verdict::fail);
  }
}
