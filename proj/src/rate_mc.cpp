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

#include "cirate/rate_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cirate/channel.hpp"
#include "cirate/parallel.hpp"
#include "cirate/precoding.hpp"

namespace cirate {

namespace {

constexpr int kMaxResamples = 64;

std::vector<unsigned> all_users(unsigned k) {
  std::vector<unsigned> v(k);
  for (unsigned i = 0; i < k; ++i) v[i] = i;
  return v;
}

// Runs the trial loop for the listed users. Output is trial-major:
// penalties[t * users.size() + j].
std::vector<double> run_trials(const SystemConfig& config, Scheme scheme, const std::vector<unsigned>& users,
                               std::size_t trials, const RandomStream& stream, unsigned threads) {
  config.validate_for(scheme);
  if (trials < kMinTrials)
    throw std::invalid_argument("trials: need at least " + std::to_string(kMinTrials) + " Monte Carlo trials");
  for (unsigned k : users)
    if (k >= config.n_users) throw std::out_of_range("user index out of range");
  const JointSymbolSpace space = enumerate_joint(config.modulation_order, config.n_users);

  std::vector<double> penalties(trials * users.size());
  parallel_for(trials, threads, [&](std::size_t t) {
    const RandomStream ts = stream.substream(t);
    std::vector<cplx> received;
    // Rayleigh draws are full rank almost surely; a singular Gram matrix (or a
    // singular CI matrix V) is answered with a fresh deterministic redraw.
    for (int attempt = 0;; ++attempt) {
      RandomStream cs = attempt == 0 ? ts.substream(0) : ts.substream(0).substream(attempt);
      const ChannelRealization ch = sample_channel_gains(config.path_gains, config.n_antennas, cs);
      try {
        received = received_constellation(config, scheme, ch.h, space);
        break;
      } catch (const NotInvertible&) {
        if (attempt + 1 >= kMaxResamples)
          throw std::runtime_error("channel draw stayed rank deficient after repeated resampling");
      }
    }
    for (std::size_t j = 0; j < users.size(); ++j) {
      RandomStream noise = ts.substream(1 + users[j]);
      const double pen = mi_trial_penalty(received, space, users[j], config.sigma2, noise);
      if (!std::isfinite(pen)) throw std::runtime_error("non-finite Monte Carlo contribution");
      penalties[t * users.size() + j] = pen;
    }
  });
  return penalties;
}

UserRate finish(const SystemConfig& config, std::span<const double> penalties) {
  const SampleStats st = sample_stats(penalties);
  double rate = config.log2_m() - st.mean;
  if (config.mode == RateMode::paper_verbatim) rate += (config.n_antennas - 1.0) * config.log2_m();
  return {rate, st.ci95};
}

}  // namespace

std::vector<cplx> received_constellation(const SystemConfig& config, Scheme scheme, const ComplexMatrix& h,
                                         const JointSymbolSpace& space) {
  const unsigned k_users = config.n_users;
  std::vector<cplx> out(space.size() * k_users);
  if (scheme == Scheme::none) {
    for (std::size_t m = 0; m < space.size(); ++m) {
      const PrecoderOutput pre = precode_none(space.vector(m), config.power, config.n_antennas);
      const auto r = receive_all(h, pre.x);
      std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(m * k_users));
    }
    return out;
  }
  const ComplexMatrix ginv = hermitian_inverse(gram(h));
  const CiParameters ci{config.ci_weights(), config.beta_mode};
  for (std::size_t m = 0; m < space.size(); ++m) {
    const auto s = space.vector(m);
    const PrecoderOutput pre = scheme == Scheme::zf
                                   ? precode_zf(h, ginv, s, config.power, config.beta_mode, config.path_gains)
                                   : precode_ci(h, ginv, s, config.power, ci, config.path_gains);
    const auto r = receive_all(h, pre.x);
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(m * k_users));
  }
  return out;
}

double mi_trial_penalty(const std::vector<cplx>& received, const JointSymbolSpace& space, unsigned k,
                        double sigma2, RandomStream& noise) {
  const std::size_t count = space.size();
  const unsigned k_users = space.users();
  std::vector<double> e(count);
  double total = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const cplx n = sample_noise(sigma2, noise);
    const cplx rm = received[m * k_users + k] + n;
    const std::uint8_t own = space.symbol_index(m, k);
    double max_all = -std::numeric_limits<double>::infinity();
    double max_own = max_all;
    for (std::size_t i = 0; i < count; ++i) {
      e[i] = -std::norm(rm - received[i * k_users + k]) / sigma2;
      max_all = std::max(max_all, e[i]);
      if (space.symbol_index(i, k) == own) max_own = std::max(max_own, e[i]);
    }
    double s_all = 0.0;
    double s_own = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      s_all += std::exp(e[i] - max_all);
      if (space.symbol_index(i, k) == own) s_own += std::exp(e[i] - max_own);
    }
    total += (max_all - max_own + std::log(s_all) - std::log(s_own)) / std::numbers::ln2;
  }
  return total / static_cast<double>(count);
}

UserRate mi_user_mc(const SystemConfig& config, Scheme scheme, unsigned k, std::size_t trials,
                    const RandomStream& stream, unsigned threads) {
  const auto pen = run_trials(config, scheme, {k}, trials, stream, threads);
  return finish(config, pen);
}

RateReport sum_rate_mc(const SystemConfig& config, Scheme scheme, std::size_t trials, const RandomStream& stream,
                       unsigned threads) {
  const auto users = all_users(config.n_users);
  const auto pen = run_trials(config, scheme, users, trials, stream, threads);
  RateReport rep;
  rep.scheme = scheme;
  rep.mode = config.mode;
  rep.trials = trials;
  double var = 0.0;
  std::vector<double> column(trials);
  for (unsigned k = 0; k < config.n_users; ++k) {
    for (std::size_t t = 0; t < trials; ++t) column[t] = pen[t * users.size() + k];
    const UserRate ur = finish(config, column);
    rep.per_user.push_back(ur.rate);
    rep.per_user_ci95.push_back(ur.ci95);
    rep.sum += ur.rate;
    var += ur.ci95 * ur.ci95;
  }
  rep.ci95 = std::sqrt(var);
  return rep;
}

}  // namespace cirate
