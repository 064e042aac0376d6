// Copyright 2026 The cvclone Authors
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

// Counter-based random numbers.
//
// Generator: SplitMix64 (Steele, Lea & Flood 2014) used as a keyed counter
// hash, so the n-th draw of stream (seed, stream) can be computed without
// generating the n-1 before it. Normal deviates use the Box-Muller
// transform on 53-bit uniforms. Output is bit-identical across platforms,
// unlike std::normal_distribution.

#ifndef CVCLONE_RANDOM_HPP
#define CVCLONE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cvclone {

inline constexpr const char* kRngName = "splitmix64-counter/box-muller";
inline constexpr int kRngVersion = 1;

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t nextU64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

  /// Uniform in the open interval (0, 1).
  double uniform() { return (static_cast<double>(nextU64() >> 11) + 0.5) * 0x1.0p-53; }

  bool coin() { return (nextU64() >> 63) != 0; }

  double normal() {
    if (hasSpare_) {
      hasSpare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    hasSpare_ = true;
    return radius * std::cos(angle);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool hasSpare_ = false;
};

}  // namespace cvclone

#endif  // CVCLONE_RANDOM_HPP
