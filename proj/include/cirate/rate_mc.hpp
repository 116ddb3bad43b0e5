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

#ifndef CIRATE_RATE_MC_HPP
#define CIRATE_RATE_MC_HPP

#include <cstddef>
#include <vector>

#include "cirate/constellation.hpp"
#include "cirate/linalg.hpp"
#include "cirate/random.hpp"
#include "cirate/system.hpp"

namespace cirate {

inline constexpr std::size_t kMinTrials = 100;

struct UserRate {
  double rate = 0.0;
  double ci95 = 0.0;
};

struct RateReport {
  Scheme scheme = Scheme::none;
  RateMode mode = RateMode::normalized;
  std::vector<double> per_user;
  std::vector<double> per_user_ci95;
  double sum = 0.0;
  double ci95 = 0.0;  // per-user half-widths combined in quadrature
  std::size_t trials = 0;
};

// Noise-free received values for every joint symbol vector: entry [m * K + k]
// is h_k x(s_m) under the scheme's precoder. CI recomputes the precoder per
// vector because W depends on s. Throws NotInvertible on a singular draw.
std::vector<cplx> received_constellation(const SystemConfig& config, Scheme scheme, const ComplexMatrix& h,
                                         const JointSymbolSpace& space);

// Mutual information I(s_k; y_k) for one channel draw given the noise-free
// constellation above, one noise sample per joint vector. Returns the trial
// average of log2(sum_i e_i / sum_{t: same s_k} e_t) over m, the quantity the
// estimator subtracts from log2 M.
double mi_trial_penalty(const std::vector<cplx>& received, const JointSymbolSpace& space, unsigned k,
                        double sigma2, RandomStream& noise);

// Per-trial substreams: trial t uses stream.substream(t); inside it, the
// channel comes from substream(0) (resampled from substream(0).substream(a)
// after a singular draw) and user k's noise from substream(1 + k). Results are
// therefore identical for any thread count and for mi_user_mc vs sum_rate_mc.
UserRate mi_user_mc(const SystemConfig& config, Scheme scheme, unsigned k, std::size_t trials,
                    const RandomStream& stream, unsigned threads = 0);

RateReport sum_rate_mc(const SystemConfig& config, Scheme scheme, std::size_t trials,
                       const RandomStream& stream, unsigned threads = 0);

}  // namespace cirate

#endif
