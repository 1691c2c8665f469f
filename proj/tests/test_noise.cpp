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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rvsim/noise.hpp"
#include "rvsim/philox.hpp"

using namespace rvsim;

TEST_CASE("philox known-answer vectors")
{
  // Random123 kat_vectors for philox4x32_10.
  CHECK(Philox4x32({0u, 0u})({0u, 0u, 0u, 0u}) ==
        Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32({0xffffffffu, 0xffffffffu})({0xffffffffu, 0xffffffffu, 0xffffffffu,
                                                0xffffffffu}) ==
        Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32({0xa4093822u, 0x299f31d0u})({0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                                                0x03707344u}) ==
        Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniform stays in (0, 1]")
{
  CHECK(uniformOpenClosed(0, 0) > 0.0);
  CHECK(uniformOpenClosed(0xffffffffu, 0xffffffffu) == 1.0);
}

TEST_CASE("zero intensity gives the means")
{
  NoiseConfig cfg;
  cfg.e1 = 0.5;
  cfg.e2 = 3.0;
  cfg.e3 = 1.25;
  cfg.k = 0.0;
  const NoiseField f = realizeNoise(cfg, 42, 2, 5, 6);
  for (std::size_t s = 0; s < 2; ++s) {
    for (double v : f.offsetVoltage(s).pixels()) CHECK(v == 3.0);
    for (double v : f.capacitorFactor(s).pixels()) CHECK(v == 1.25);
  }
  for (int t = 1; t < 20; ++t) CHECK(f.darkCurrent(2, 3, t) == 0.5);
}

TEST_CASE("dark current statistics")
{
  NoiseConfig cfg;
  cfg.e1 = 1.5;
  cfg.beta1 = 2.0;
  cfg.k = 1.5;
  const NoiseField f = realizeNoise(cfg, 7, 1, 100, 100);
  const double sd = cfg.beta1 * cfg.k;
  double sum = 0.0;
  double sq = 0.0;
  const int n = 1000000;
  int count = 0;
  for (int t = 1; t <= 100; ++t) {
    for (int r = 0; r < 100; ++r) {
      for (int c = 0; c < 100; ++c) {
        const double v = f.darkCurrent(r, c, t);
        sum += v;
        sq += (v - cfg.e1) * (v - cfg.e1);
        ++count;
      }
    }
  }
  REQUIRE(count == n);
  const double meanV = sum / n;
  CHECK(std::abs(meanV - cfg.e1) < 4.0 * sd / std::sqrt(static_cast<double>(n)));
  CHECK(std::sqrt(sq / n) == doctest::Approx(sd).epsilon(0.01));
}

TEST_CASE("fixed-pattern statistics")
{
  NoiseConfig cfg;
  const NoiseField f = realizeNoise(cfg, 3, 1, 300, 300);
  double s = 0.0;
  for (double v : f.offsetVoltage(0).pixels()) s += v;
  const double n = 90000.0;
  CHECK(std::abs(s / n - cfg.e2) < 4.0 * cfg.beta2 / std::sqrt(n));
  double th = 0.0;
  for (double v : f.capacitorFactor(0).pixels()) th += v;
  CHECK(std::abs(th / n - cfg.e3) < 4.0 * cfg.beta3 / std::sqrt(n));
}

TEST_CASE("counter-based determinism across shapes")
{
  NoiseConfig cfg;
  const NoiseField small = realizeNoise(cfg, 99, 2, 4, 5);
  const NoiseField big = realizeNoise(cfg, 99, 3, 9, 11);
  for (std::size_t s = 0; s < 2; ++s) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 5; ++c) {
        CHECK(small.offsetVoltage(s)(r, c) == big.offsetVoltage(s)(r, c));
        CHECK(small.capacitorFactor(s)(r, c) == big.capacitorFactor(s)(r, c));
        CHECK(small.darkCurrent(r, c, 17) == big.darkCurrent(r, c, 17));
      }
    }
  }
  const NoiseField other = realizeNoise(cfg, 100, 2, 4, 5);
  CHECK(other.offsetVoltage(0)(1, 1) != small.offsetVoltage(0)(1, 1));
  // Scales and steps draw from distinct counters.
  CHECK(big.offsetVoltage(0)(1, 1) != big.offsetVoltage(1)(1, 1));
  CHECK(big.darkCurrent(1, 1, 1) != big.darkCurrent(1, 1, 2));
}

TEST_CASE("dark current is added per pixel")
{
  NoiseConfig cfg;
  const NoiseField f = realizeNoise(cfg, 5, 1, 3, 4);
  Image frame(3, 4, 10.0);
  f.addDarkCurrent(frame, 8);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) CHECK(frame(r, c) == 10.0 + f.darkCurrent(r, c, 8));
}

TEST_CASE("noise config validation")
{
  NoiseConfig cfg;
  cfg.beta2 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NoiseConfig{};
  cfg.k = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NoiseConfig{};
  cfg.e1 = std::nan("");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
