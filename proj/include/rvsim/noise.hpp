// Copyright 2026 The rvsim Authors
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

#ifndef RVSIM_NOISE_HPP
#define RVSIM_NOISE_HPP

#include <cstdint>
#include <vector>

#include "rvsim/image.hpp"
#include "rvsim/philox.hpp"

namespace rvsim
{
// Gaussian accumulation noise: dark current N(e1, (beta1 k)^2) per pixel and
// step, offset voltage N(e2, (beta2 k)^2) and capacitor factor
// N(e3, (beta3 k)^2) per accumulator. Defaults are calibration values.
struct NoiseConfig
{
  double e1 = 1.0;
  double e2 = 0.0;
  double e3 = 1.0;
  double beta1 = 10.0;
  double beta2 = 20.0;
  double beta3 = 0.02;
  double k = 1.0;

  void validate() const;
  friend bool operator==(const NoiseConfig &, const NoiseConfig &) = default;
};

// Realized noise for one run. Fixed-pattern grids are drawn once; dark
// current is drawn on demand from a counter-based stream.
class NoiseField
{
public:
  NoiseField(const NoiseConfig & cfg, std::uint64_t seed, int numScales, int height, int width);

  const NoiseConfig & config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }

  const Image & offsetVoltage(std::size_t scale) const { return vOs_.at(scale); }
  const Image & capacitorFactor(std::size_t scale) const { return theta_.at(scale); }

  // I_dark at pixel (row, col) for sampling step t (t >= 1).
  double darkCurrent(int row, int col, int t) const;

  // Adds I_dark(., ., t) to every pixel of frame.
  void addDarkCurrent(Image & frame, int t) const;

private:
  NoiseConfig cfg_;
  std::uint64_t seed_;
  Philox4x32 rng_;
  std::vector<Image> vOs_;
  std::vector<Image> theta_;
};

NoiseField realizeNoise(
  const NoiseConfig & cfg, std::uint64_t seed, int numScales, int height, int width);

// Stream tags occupying the last counter word.
enum class NoiseStream : std::uint32_t { DarkCurrent = 0, OffsetVoltage = 1, CapacitorFactor = 2 };

// Raw standard-normal draw for (stream, a, b, c) under seed.
double noiseDraw(std::uint64_t seed, NoiseStream stream, std::uint32_t a, std::uint32_t b,
                 std::uint32_t c);

}  // namespace rvsim

#endif  // RVSIM_NOISE_HPP
