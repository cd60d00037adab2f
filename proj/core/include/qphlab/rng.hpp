// Copyright 2026 The qphlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPHLAB_RNG_HPP
#define QPHLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qphlab {

// Counter-based deterministic pseudo-random stream (SplitMix64 core).
//
// Every Monte-Carlo trial in the library derives its own stream from
// (base_seed, trial_index), so results are byte-identical regardless of how
// trials are scheduled across threads. The generator is intentionally
// self-contained: standard-library distributions are not specified
// bit-exactly, and this laboratory promises reproducible output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) {
      throw std::invalid_argument("uniform_below: bound must be positive");
    }
    // Rejection sampling removes modulo bias; at most a couple of retries.
    std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return draw % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the spare value is cached so a stream
  // consumes exactly one pair of uniforms per two gaussians.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u <= 0.0);
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double theta = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stream for one trial of one experiment. Mixing the trial index through a
// second round of SplitMix64 decorrelates neighbouring trials.
inline SplitMix64 trial_rng(std::uint64_t base_seed, std::uint64_t trial_index) {
  SplitMix64 mixer(base_seed ^ (0x6a09e667f3bcc909ull + trial_index * 0x9e3779b97f4a7c15ull));
  return SplitMix64(mixer.next_u64());
}

}  // namespace qphlab

#endif  // QPHLAB_RNG_HPP
