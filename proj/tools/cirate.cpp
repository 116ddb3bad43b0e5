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

// Command-line front end: rate-sweep, min-power, maxmin and validate.
// Exit codes: 0 ok, 1 configuration error, 2 infeasible request,
// 3 validation failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cirate/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitValidation = 3;

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<std::string> schemes;
  std::optional<double> target_rate;
  std::vector<double> distances;
  std::vector<double> total_power_db;
  std::optional<double> epsilon;
  std::string power_method;
  std::optional<unsigned> threads;
};

void add_shared(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON experiment configuration");
  sub->add_option("--out", o.out, "CSV output path (default: config output, else stdout)");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--trials", o.trials, "Monte Carlo trials per point");
  sub->add_option("--scheme", o.schemes, "comma-separated subset of none,zf,ci")->delimiter(',');
  sub->add_option("--threads", o.threads, "worker threads (default: CIRATE_THREADS or all cores)");
}

cirate::ExperimentConfig build_config(cirate::Experiment kind, const Overrides& o) {
  cirate::ExperimentConfig c = cirate::default_config(kind);
  if (!o.config.empty()) c = cirate::load_config(o.config, c);
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (!o.schemes.empty()) {
    c.schemes.clear();
    for (const auto& s : o.schemes) {
      try {
        c.schemes.push_back(cirate::parse_scheme(s));
      } catch (const std::invalid_argument& e) {
        throw cirate::ConfigError(std::string("--scheme: ") + e.what());
      }
    }
  }
  if (o.target_rate) c.target_rate = *o.target_rate;
  if (!o.distances.empty()) {
    if (kind == cirate::Experiment::min_power) {
      c.distance_grid = o.distances;
    } else {
      c.geometry.type = cirate::GeometrySpec::Type::fixed;
      c.geometry.distances = o.distances;
    }
  }
  if (!o.total_power_db.empty()) c.total_power_db = o.total_power_db;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.power_method == "closed_form") c.power_method = cirate::PowerMethod::closed_form;
  else if (o.power_method == "bisection") c.power_method = cirate::PowerMethod::bisection;
  else if (!o.power_method.empty()) throw cirate::ConfigError("--power-method: expected bisection or closed_form");
  if (o.threads) c.threads = *o.threads;
  c.validate(kind);
  return c;
}

// Writes to the file if a path was given, else to stdout.
template <typename Emit>
void emit(const std::string& path, Emit&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw cirate::ConfigError("--out: cannot open '" + path + "' for writing");
  fn(f);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void progress(const std::string& msg) { std::cerr << "[cirate] " << msg << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-alphabet rate analysis for precoded MU-MIMO downlinks"};
  app.require_subcommand(1);
  Overrides o;

  auto* sweep = app.add_subcommand("rate-sweep", "Monte Carlo and closed-form rates over an SNR grid");
  add_shared(sweep, o);

  auto* minp = app.add_subcommand("min-power", "minimum power for a target rate over a distance grid");
  add_shared(minp, o);
  minp->add_option("--target-rate", o.target_rate, "target rate R_T in bits/s/Hz");
  minp->add_option("--distances", o.distances, "comma-separated distance grid in meters")->delimiter(',');

  auto* mm = app.add_subcommand("maxmin", "max-min power allocation over a total-power grid");
  add_shared(mm, o);
  mm->add_option("--distances", o.distances, "comma-separated user distances in meters")->delimiter(',');
  mm->add_option("--total-power-db", o.total_power_db, "comma-separated P_t/sigma2 grid in dB")->delimiter(',');
  mm->add_option("--epsilon", o.epsilon, "rate tolerance of the outer bisection");
  mm->add_option("--power-method", o.power_method, "bisection or closed_form");

  auto* val = app.add_subcommand("validate", "run the cross-module oracle suite");
  val->add_option("--out", o.out, "report path (default stdout)");
  val->add_option("--seed", o.seed, "seed for the Monte Carlo checks");
  val->add_option("--threads", o.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (val->parsed()) {
      cirate::ValidateOptions vo;
      if (o.seed) vo.seed = *o.seed;
      vo.threads = o.threads.value_or(0);
      const cirate::ValidationReport rep = cirate::run_validate(vo, progress);
      emit(o.out, [&](std::ostream& s) { cirate::write_report(s, rep); });
      return rep.passed() ? 0 : kExitValidation;
    }

    cirate::Experiment kind = cirate::Experiment::rate_sweep;
    if (minp->parsed()) kind = cirate::Experiment::min_power;
    if (mm->parsed()) kind = cirate::Experiment::maxmin;
    const cirate::ExperimentConfig c = build_config(kind, o);

    std::vector<cirate::ResultRow> rows;
    switch (kind) {
      case cirate::Experiment::rate_sweep: rows = cirate::run_rate_sweep(c, progress); break;
      case cirate::Experiment::min_power: rows = cirate::run_min_power(c, progress); break;
      case cirate::Experiment::maxmin: rows = cirate::run_maxmin(c, progress); break;
      case cirate::Experiment::validate: break;
    }
    emit(o.out.empty() ? c.output : o.out, [&](std::ostream& s) { cirate::write_csv(s, rows); });
    return 0;
  } catch (const cirate::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
