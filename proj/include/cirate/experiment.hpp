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

#ifndef CIRATE_EXPERIMENT_HPP
#define CIRATE_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cirate/power.hpp"
#include "cirate/specfun.hpp"
#include "cirate/system.hpp"

namespace cirate {

// Anything wrong with a configuration document or override. The message
// starts with the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Experiment { rate_sweep, min_power, maxmin, validate };

struct GeometrySpec {
  enum class Type { fixed, annulus };
  Type type = Type::fixed;
  std::vector<double> distances;  // fixed; empty means every user at 1 m
  double r_min = 0.0;             // annulus
  double r_max = 80.0;
  unsigned placements = 1;
};

struct ExperimentConfig {
  unsigned n_antennas = 2;
  unsigned n_users = 2;
  unsigned modulation_order = 2;
  std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
  double sigma2 = 1.0;
  GeometrySpec geometry;
  double path_loss_exponent = 2.7;
  std::vector<Scheme> schemes{Scheme::none, Scheme::zf, Scheme::ci};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  RateMode mode = RateMode::normalized;
  BetaMode beta_mode = BetaMode::long_term;
  std::vector<cplx> u_vector;
  std::string output;

  // min-power and maxmin inputs
  double target_rate = 0.5;
  std::vector<double> distance_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> total_power_db{40, 45, 50, 55, 60, 65};
  double epsilon = kDefaultRateTolerance;
  PowerMethod power_method = PowerMethod::bisection;

  unsigned threads = 0;  // 0: CIRATE_THREADS or one per core; never affects output

  // Field-level checks; throws ConfigError.
  void validate(Experiment kind) const;
};

// Defaults that differ per subcommand (maxmin places users at 10 m and 90 m).
ExperimentConfig default_config(Experiment kind);

// Overlays a JSON document on `base`. Unknown keys and wrong types are
// ConfigErrors naming the key.
ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig base);
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

struct ResultRow {
  std::string experiment_id;
  Scheme scheme = Scheme::none;
  unsigned m = 0, n = 0, k = 0;
  std::string snr_db;  // "NA" where no SNR axis applies
  std::string user;    // user index, "sum" or "all"
  std::string quantity;
  std::optional<double> value;
  std::optional<double> ci95;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader = "experiment_id,scheme,M,N,K,snr_db,user,quantity,value,ci95,trials,seed";

// Locale-independent, fixed-precision formatting so equal results give equal bytes.
std::string format_number(double v);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

using Progress = std::function<void(const std::string&)>;

// Per scheme and SNR point: per-user and sum Monte Carlo rates (mc_rate) and
// closed-form bounds (bound). Annulus geometries average over placements.
std::vector<ResultRow> run_rate_sweep(const ExperimentConfig& config, const Progress& progress = {});

// Per scheme and distance: bisection min power (min_power) and, where valid,
// the closed form (min_power_closed). Every user sits at the grid distance.
std::vector<ResultRow> run_min_power(const ExperimentConfig& config, const Progress& progress = {});

// Per scheme and total power: R* (maxmin_rate), the allocation
// (allocated_power), Jain's index of the allocated rates (jain) and the
// equal-split baseline (equal_split_rate, equal_split_jain).
std::vector<ResultRow> run_maxmin(const ExperimentConfig& config, const Progress& progress = {});

enum class Verdict { pass, fail, info };

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::fail;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  // The 1F1 evaluator under test; swapping it is how fault injection works.
  std::function<SpecFunResult(double, double, double)> hyp1f1 = cirate::hyp1f1;
};

// Cross-module oracle suite. Failures are report entries, never exceptions.
// INFO entries document known gaps in the modelled expressions and do not gate.
ValidationReport run_validate(const ValidateOptions& options = {}, const Progress& progress = {});

void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace cirate

#endif
