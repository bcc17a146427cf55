// Copyright 2026 The hyperlinear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hyperlinear {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is splitmix64_mix(key + (i+1)*phi)
/// where phi = 0x9e3779b97f4a7c15, i.e. plain SplitMix64 started at `key`.
/// The key is a pure function of (seed, stream) and of the chain of
/// `substream` indices, so sample sequences are identical on every platform
/// and independent of how many values other substreams consumed.
///
/// Normals use Box-Muller on (0,1] x [0,1) uniforms built from the top 53 bits.
class Rng {
 public:
  explicit Rng(RngSpec spec) noexcept
      : key_(splitmix64_mix(splitmix64_mix(spec.seed ^ 0x6a09e667f3bcc909ULL) +
                            spec.stream * kPhi + 0x3c6ef372fe94f82bULL)),
        state_(key_) {}

  Rng substream(std::uint64_t index) const noexcept {
    return Rng(splitmix64_mix(key_ ^ splitmix64_mix(index + 0xd1b54a32d192ed03ULL)));
  }

  std::uint64_t next_u64() noexcept {
    state_ += kPhi;
    return splitmix64_mix(state_);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_zero() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Two independent standard normals.
  std::pair<double, double> normal_pair() noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_gaussian() noexcept {
    const auto [a, b] = normal_pair();
    return {a * std::numbers::sqrt2 / 2.0, b * std::numbers::sqrt2 / 2.0};
  }

 private:
  static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;

  explicit Rng(std::uint64_t key) noexcept : key_(key), state_(key) {}

  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace hyperlinear
