// Copyright 2026 The synids Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNIDS_RNG_H_
#define SYNIDS_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace synids {

// Deterministic random source. The engine's output sequence is fixed by the
// standard, but the <random> distributions are not, so every distribution
// used by the pipeline is derived here from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n) {
    return static_cast<std::uint64_t>(Uniform() * static_cast<double>(n)) %
           n;
  }

  double Exponential(double mean) { return -mean * std::log1p(-Uniform()); }

  // Box-Muller; one variate per call keeps the stream order simple.
  double Normal() {
    double u1 = Uniform();
    double u2 = Uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double LogNormal(double mu, double sigma) {
    return std::exp(mu + sigma * Normal());
  }

  // Count of trials up to and including the first success, mean `mean`.
  std::uint64_t Geometric(double mean) {
    if (mean <= 1.0) return 1;
    const double p = 1.0 / mean;
    return 1 + static_cast<std::uint64_t>(
                   std::floor(std::log1p(-Uniform()) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Per-stage seed derived from the master seed and a stage name.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view stage);

}  // namespace synids

#endif  // SYNIDS_RNG_H_
