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

#include "cirate/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cirate/channel.hpp"
#include "cirate/constellation.hpp"
#include "cirate/parallel.hpp"
#include "cirate/random.hpp"
#include "cirate/rate_bound.hpp"
#include "cirate/rate_mc.hpp"

namespace cirate {

namespace {

using nlohmann::json;

// Stream ids under the experiment seed. Monte Carlo trials reuse the same
// channel and noise draws at every SNR point and for every scheme, so curves
// are compared on common random numbers.
constexpr std::uint64_t kMonteCarloStream = 0;
constexpr std::uint64_t kPlacementStream = 1;

[[noreturn]] void fail(const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); }

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
    if (i > 0 && !(v[i] > v[i - 1])) return false;
  }
  return true;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

std::uint64_t get_count(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected a nonnegative integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) fail(field, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

unsigned get_unsigned(const json& j, const std::string& field) {
  const std::uint64_t v = get_count(j, field);
  if (v > 1u << 30) fail(field, "value too large");
  return static_cast<unsigned>(v);
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename T, typename Parse>
T parse_enum(const json& j, const std::string& field, Parse parse) {
  const std::string s = get_string(j, field);
  try {
    return parse(s);
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

PowerMethod parse_power_method(const std::string& s) {
  if (s == "bisection") return PowerMethod::bisection;
  if (s == "closed_form") return PowerMethod::closed_form;
  throw std::invalid_argument("unknown power_method '" + s + "' (expected bisection or closed_form)");
}

GeometrySpec parse_geometry(const json& j) {
  if (!j.is_object()) fail("geometry", "expected an object");
  GeometrySpec g;
  if (!j.contains("type")) fail("geometry.type", "missing (fixed or annulus)");
  const std::string type = get_string(j.at("type"), "geometry.type");
  if (type == "fixed") {
    g.type = GeometrySpec::Type::fixed;
    for (const auto& [key, value] : j.items()) {
      if (key == "type") continue;
      if (key == "distances")
        g.distances = get_numbers(value, "geometry.distances");
      else
        fail("geometry." + key, "unknown field for a fixed geometry");
    }
  } else if (type == "annulus") {
    g.type = GeometrySpec::Type::annulus;
    for (const auto& [key, value] : j.items()) {
      if (key == "type") continue;
      if (key == "r_min")
        g.r_min = get_number(value, "geometry.r_min");
      else if (key == "r_max")
        g.r_max = get_number(value, "geometry.r_max");
      else if (key == "placements")
        g.placements = get_unsigned(value, "geometry.placements");
      else
        fail("geometry." + key, "unknown field for an annulus geometry");
    }
  } else {
    fail("geometry.type", "expected fixed or annulus, got '" + type + "'");
  }
  return g;
}

std::vector<cplx> parse_u(const json& j) {
  if (!j.is_array()) fail("u_vector", "expected an array");
  std::vector<cplx> u;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "u_vector[" + std::to_string(i) + "]";
    if (j[i].is_array()) {
      if (j[i].size() != 2) fail(f, "complex entries are [re, im]");
      u.emplace_back(get_number(j[i][0], f), get_number(j[i][1], f));
    } else {
      u.emplace_back(get_number(j[i], f), 0.0);
    }
  }
  return u;
}

std::string id_for_distance(double d) { return "min-power:d=" + format_number(d); }

std::string user_label(unsigned k) { return std::to_string(k); }

SystemConfig system_for(const ExperimentConfig& c, double snr_db, std::vector<double> gains) {
  SystemConfig s = make_config(c.n_antennas, c.n_users, c.modulation_order, db_to_linear(snr_db), c.sigma2);
  s.path_gains = std::move(gains);
  s.mode = c.mode;
  s.beta_mode = c.beta_mode;
  s.u = c.u_vector;
  return s;
}

std::vector<double> gains_of(const std::vector<double>& distances, double exponent) {
  std::vector<double> g;
  for (double d : distances) g.push_back(path_loss(d, exponent));
  return g;
}

ResultRow base_row(const ExperimentConfig& c, const std::string& id, Scheme scheme) {
  ResultRow r;
  r.experiment_id = id;
  r.scheme = scheme;
  r.m = c.modulation_order;
  r.n = c.n_antennas;
  r.k = c.n_users;
  r.trials = c.trials;
  r.seed = c.seed;
  return r;
}

ResultRow make_row(const ResultRow& base, std::string snr, std::string user, std::string quantity,
                   std::optional<double> value, std::optional<double> ci95 = std::nullopt) {
  ResultRow r = base;
  r.snr_db = std::move(snr);
  r.user = std::move(user);
  r.quantity = std::move(quantity);
  r.value = value;
  r.ci95 = ci95;
  return r;
}

void report(const Progress& p, const std::string& msg) {
  if (p) p(msg);
}

}  // namespace

void ExperimentConfig::validate(Experiment kind) const {
  if (n_users < 1) fail("n_users", "need K >= 1");
  if (n_antennas < n_users) fail("n_antennas", "need N >= K");
  if (modulation_order != 2 && modulation_order != 4 && modulation_order != 8 && modulation_order != 16)
    fail("modulation_order", "M must be one of 2, 4, 8, 16");
  if (std::pow(static_cast<double>(modulation_order), n_users) > static_cast<double>(kJointSpaceCap))
    fail("n_users", "M^K exceeds the enumeration cap of " + std::to_string(kJointSpaceCap) + "; reduce M or K");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) fail("sigma2", "need sigma2 > 0");
  if (!(path_loss_exponent > 0.0)) fail("path_loss_exponent", "need m > 0");
  if (schemes.empty()) fail("schemes", "need at least one scheme");
  for (std::size_t i = 0; i < schemes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (schemes[i] == schemes[j]) fail("schemes", "duplicate scheme " + to_string(schemes[i]));
  for (Scheme s : schemes)
    if (s == Scheme::none && n_antennas != n_users)
      fail("schemes", "none (un-precoded) requires n_antennas == n_users");
  if (!u_vector.empty()) {
    if (u_vector.size() != n_users) fail("u_vector", "need exactly one weight per user");
    cplx sum = 0.0;
    for (const auto& w : u_vector) sum += w;
    if (std::abs(sum - cplx(1.0, 0.0)) > 1e-12) fail("u_vector", "entries must sum to 1");
  }

  switch (kind) {
    case Experiment::rate_sweep:
      if (trials < kMinTrials) fail("trials", "need at least " + std::to_string(kMinTrials));
      if (snr_db.empty()) fail("snr_db", "need at least one SNR point");
      if (!strictly_increasing(snr_db)) fail("snr_db", "grid must be finite and strictly increasing");
      if (geometry.type == GeometrySpec::Type::fixed) {
        if (!geometry.distances.empty() && geometry.distances.size() != n_users)
          fail("geometry.distances", "need exactly one distance per user");
        for (double d : geometry.distances)
          if (!(d > 0.0) || !std::isfinite(d)) fail("geometry.distances", "distances must be positive");
      } else {
        if (!(geometry.r_min > 0.0)) fail("geometry.r_min", "need r_min > 0");
        if (!(geometry.r_max >= geometry.r_min) || !std::isfinite(geometry.r_max))
          fail("geometry.r_max", "need r_max >= r_min");
        if (geometry.placements < 1) fail("geometry.placements", "need at least one placement");
      }
      break;
    case Experiment::min_power:
      if (!(target_rate >= 0.0) || !std::isfinite(target_rate)) fail("target_rate", "need R_T >= 0");
      if (distance_grid.empty()) fail("distance_grid", "need at least one distance");
      if (!strictly_increasing(distance_grid) || !(distance_grid.front() > 0.0))
        fail("distance_grid", "distances must be positive and strictly increasing");
      break;
    case Experiment::maxmin:
      if (geometry.type != GeometrySpec::Type::fixed) fail("geometry.type", "maxmin needs a fixed geometry");
      if (geometry.distances.size() != n_users) fail("geometry.distances", "need exactly one distance per user");
      for (double d : geometry.distances)
        if (!(d > 0.0) || !std::isfinite(d)) fail("geometry.distances", "distances must be positive");
      if (total_power_db.empty()) fail("total_power_db", "need at least one total power");
      if (!strictly_increasing(total_power_db)) fail("total_power_db", "grid must be strictly increasing");
      if (!(epsilon > 0.0) || !(epsilon < 1.0)) fail("epsilon", "need 0 < epsilon < 1");
      break;
    case Experiment::validate:
      break;
  }
}

ExperimentConfig default_config(Experiment kind) {
  ExperimentConfig c;
  if (kind == Experiment::maxmin) c.geometry.distances = {10.0, 90.0};
  return c;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) fail("config", "top level must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "n_antennas") c.n_antennas = get_unsigned(v, key);
    else if (key == "n_users") c.n_users = get_unsigned(v, key);
    else if (key == "modulation_order") c.modulation_order = get_unsigned(v, key);
    else if (key == "snr_db") c.snr_db = get_numbers(v, key);
    else if (key == "sigma2") c.sigma2 = get_number(v, key);
    else if (key == "geometry") c.geometry = parse_geometry(v);
    else if (key == "path_loss_exponent") c.path_loss_exponent = get_number(v, key);
    else if (key == "schemes") {
      if (!v.is_array()) fail(key, "expected an array of scheme names");
      c.schemes.clear();
      for (std::size_t i = 0; i < v.size(); ++i)
        c.schemes.push_back(parse_enum<Scheme>(v[i], "schemes[" + std::to_string(i) + "]", parse_scheme));
    }
    else if (key == "trials") c.trials = get_count(v, key);
    else if (key == "seed") c.seed = get_count(v, key);
    else if (key == "mode") c.mode = parse_enum<RateMode>(v, key, parse_rate_mode);
    else if (key == "beta_mode") c.beta_mode = parse_enum<BetaMode>(v, key, parse_beta_mode);
    else if (key == "u_vector") c.u_vector = parse_u(v);
    else if (key == "output") c.output = get_string(v, key);
    else if (key == "target_rate") c.target_rate = get_number(v, key);
    else if (key == "distance_grid") c.distance_grid = get_numbers(v, key);
    else if (key == "total_power_db") c.total_power_db = get_numbers(v, key);
    else if (key == "epsilon") c.epsilon = get_number(v, key);
    else if (key == "power_method") c.power_method = parse_enum<PowerMethod>(v, key, parse_power_method);
    else if (key == "threads") c.threads = get_unsigned(v, key);
    else fail(key, "unknown field");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment_id << ',' << to_string(r.scheme) << ',' << r.m << ',' << r.n << ',' << r.k << ','
        << r.snr_db << ',' << r.user << ',' << r.quantity << ',' << (r.value ? format_number(*r.value) : "NA")
        << ',' << (r.ci95 ? format_number(*r.ci95) : "NA") << ',' << r.trials << ',' << r.seed << '\n';
  }
}

std::vector<ResultRow> run_rate_sweep(const ExperimentConfig& c, const Progress& progress) {
  c.validate(Experiment::rate_sweep);
  const unsigned kk = c.n_users;

  // Every placement is drawn up front from its own substream.
  std::vector<std::vector<double>> placements;
  if (c.geometry.type == GeometrySpec::Type::fixed) {
    std::vector<double> d = c.geometry.distances;
    if (d.empty()) d.assign(kk, 1.0);
    placements.push_back(gains_of(d, c.path_loss_exponent));
  } else {
    const RandomStream root(c.seed, kPlacementStream);
    for (unsigned p = 0; p < c.geometry.placements; ++p) {
      RandomStream s = root.substream(p);
      placements.push_back(
          place_users(kk, c.geometry.r_min, c.geometry.r_max, s, c.path_loss_exponent).path_gains());
    }
  }
  const double np = static_cast<double>(placements.size());
  const RandomStream mc_root(c.seed, kMonteCarloStream);

  std::vector<ResultRow> rows;
  for (Scheme scheme : c.schemes) {
    const ResultRow base = base_row(c, "rate-sweep", scheme);
    for (double snr : c.snr_db) {
      report(progress, "rate-sweep " + to_string(scheme) + " snr_db=" + format_number(snr));
      std::vector<double> mc(kk + 1, 0.0), var(kk + 1, 0.0), bound(kk + 1, 0.0);
      for (std::size_t p = 0; p < placements.size(); ++p) {
        const SystemConfig sc = system_for(c, snr, placements[p]);
        const RateReport rr = sum_rate_mc(sc, scheme, c.trials, mc_root.substream(p), c.threads);
        const BoundReport br = sum_rate_bound(scheme, sc);
        for (unsigned k = 0; k < kk; ++k) {
          mc[k] += rr.per_user[k];
          var[k] += rr.per_user_ci95[k] * rr.per_user_ci95[k];
          bound[k] += br.per_user[k];
        }
        mc[kk] += rr.sum;
        var[kk] += rr.ci95 * rr.ci95;
        bound[kk] += br.sum;
      }
      const std::string snr_s = format_number(snr);
      for (unsigned k = 0; k <= kk; ++k)
        rows.push_back(make_row(base, snr_s, k == kk ? "sum" : user_label(k), "mc_rate", mc[k] / np,
                                std::sqrt(var[k]) / np));
      for (unsigned k = 0; k <= kk; ++k)
        rows.push_back(make_row(base, snr_s, k == kk ? "sum" : user_label(k), "bound", bound[k] / np));
    }
  }
  return rows;
}

std::vector<ResultRow> run_min_power(const ExperimentConfig& c, const Progress& progress) {
  c.validate(Experiment::min_power);
  std::vector<ResultRow> rows;
  for (Scheme scheme : c.schemes) {
    for (double d : c.distance_grid) {
      report(progress, "min-power " + to_string(scheme) + " d=" + format_number(d));
      const ResultRow base = base_row(c, id_for_distance(d), scheme);
      const SystemConfig sc =
          system_for(c, 0.0, std::vector<double>(c.n_users, path_loss(d, c.path_loss_exponent)));
      rows.push_back(make_row(base, "NA", "0", "min_power", min_power_bisect(scheme, 0, c.target_rate, sc)));
      try {
        rows.push_back(
            make_row(base, "NA", "0", "min_power_closed", min_power_closed(scheme, 0, c.target_rate, sc)));
      } catch (const ClosedFormInvalid&) {
        // no row: the closed form has no meaningful value here
      }
    }
  }
  return rows;
}

std::vector<ResultRow> run_maxmin(const ExperimentConfig& c, const Progress& progress) {
  c.validate(Experiment::maxmin);
  const unsigned kk = c.n_users;
  const auto gains = gains_of(c.geometry.distances, c.path_loss_exponent);
  auto jain_or_na = [](const std::vector<double>& r) -> std::optional<double> {
    for (double v : r)
      if (v > 0.0) return jain_index(r);
    return std::nullopt;
  };

  std::vector<ResultRow> rows;
  for (Scheme scheme : c.schemes) {
    const ResultRow base = base_row(c, "maxmin", scheme);
    for (double pt_db : c.total_power_db) {
      report(progress, "maxmin " + to_string(scheme) + " P_t/sigma2=" + format_number(pt_db) + " dB");
      const SystemConfig sc = system_for(c, pt_db, gains);
      const double total = c.sigma2 * db_to_linear(pt_db);
      const PowerSolution sol = maxmin_allocate(scheme, sc, total, c.epsilon, c.power_method, c.threads);
      const std::string x = format_number(pt_db);
      rows.push_back(make_row(base, x, "all", "maxmin_rate", sol.rate));
      for (unsigned k = 0; k < kk; ++k) rows.push_back(make_row(base, x, user_label(k), "allocated_power", sol.powers[k]));
      for (unsigned k = 0; k < kk; ++k) rows.push_back(make_row(base, x, user_label(k), "allocated_rate", sol.rates[k]));
      rows.push_back(make_row(base, x, "all", "jain", jain_or_na(sol.rates)));

      std::vector<double> equal(kk);
      for (unsigned k = 0; k < kk; ++k) equal[k] = link_rate(scheme, sc, k, total / kk);
      for (unsigned k = 0; k < kk; ++k) rows.push_back(make_row(base, x, user_label(k), "equal_split_rate", equal[k]));
      rows.push_back(make_row(base, x, "all", "equal_split_jain", jain_or_na(equal)));
    }
  }
  return rows;
}

}  // namespace cirate
