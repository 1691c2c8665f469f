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

#include "rvsim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace rvsim
{
void NoiseConfig::validate() const
{
  for (double v : {e1, e2, e3, beta1, beta2, beta3, k}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("noise parameters must be finite");
    }
  }
  if (beta1 < 0.0 || beta2 < 0.0 || beta3 < 0.0) {
    throw std::invalid_argument("noise standard deviations must be nonnegative");
  }
  if (k < 0.0) {
    throw std::invalid_argument("noise intensity k must be nonnegative");
  }
}

double noiseDraw(std::uint64_t seed, NoiseStream stream, std::uint32_t a, std::uint32_t b,
                 std::uint32_t c)
{
  const Philox4x32 rng(seed);
  return standardNormal(rng({a, b, c, static_cast<std::uint32_t>(stream)}));
}

NoiseField::NoiseField(
  const NoiseConfig & cfg, std::uint64_t seed, int numScales, int height, int width)
: cfg_(cfg), seed_(seed), rng_(seed)
{
  cfg_.validate();
  if (numScales < 1 || height < 1 || width < 1) {
    throw std::invalid_argument("noise field shape must be positive");
  }
  const double sdOs = cfg_.beta2 * cfg_.k;
  const double sdTheta = cfg_.beta3 * cfg_.k;
  for (int s = 0; s < numScales; ++s) {
    Image vos(height, width, cfg_.e2);
    Image theta(height, width, cfg_.e3);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const Philox4x32::Counter osCtr = {
          static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
          static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(NoiseStream::OffsetVoltage)};
        const Philox4x32::Counter thCtr = {
          static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
          static_cast<std::uint32_t>(s),
          static_cast<std::uint32_t>(NoiseStream::CapacitorFactor)};
        if (sdOs > 0.0) {
          vos(r, c) = cfg_.e2 + sdOs * standardNormal(rng_(osCtr));
        }
        if (sdTheta > 0.0) {
          theta(r, c) = cfg_.e3 + sdTheta * standardNormal(rng_(thCtr));
        }
      }
    }
    vOs_.push_back(std::move(vos));
    theta_.push_back(std::move(theta));
  }
}

double NoiseField::darkCurrent(int row, int col, int t) const
{
  const double sd = cfg_.beta1 * cfg_.k;
  if (sd == 0.0) {
    return cfg_.e1;
  }
  const Philox4x32::Counter ctr = {
    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(t),
    static_cast<std::uint32_t>(NoiseStream::DarkCurrent)};
  return cfg_.e1 + sd * standardNormal(rng_(ctr));
}

void NoiseField::addDarkCurrent(Image & frame, int t) const
{
  const int h = frame.height();
  const int w = frame.width();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      frame(r, c) += darkCurrent(r, c, t);
    }
  }
}

NoiseField realizeNoise(
  const NoiseConfig & cfg, std::uint64_t seed, int numScales, int height, int width)
{
  return NoiseField(cfg, seed, numScales, height, width);
}

}  // namespace rvsim
