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

#ifndef CIRATE_RANDOM_HPP
#define CIRATE_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace cirate {

// Philox4x32-10 block: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// A reproducible random sequence addressed by (seed, stream). The seed is the
// Philox key, the stream index fills the upper half of the counter and the
// draw position the lower half, so two streams never overlap and any stream
// can be rebuilt on any worker without touching the others.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Child stream for trial/placement/attempt `index`. Derivation is a fixed
  // hash of (stream, index), independent of how many draws this stream made.
  RandomStream substream(std::uint64_t index) const;

  std::uint32_t next_u32();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Standard normal (Box-Muller, both outputs used).
  double normal();
  // Circularly symmetric complex Gaussian with total variance `variance`.
  std::complex<double> complex_normal(double variance = 1.0);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cirate

#endif
