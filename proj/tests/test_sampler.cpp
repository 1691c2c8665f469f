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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "rvsim/sampler.hpp"

using namespace rvsim;

namespace
{
SceneStream constantScene(int h, int w, int t, double value)
{
  SceneParams p;
  p.height = h;
  p.width = w;
  p.frames = t;
  p.intensity = value;
  return synthScene(SceneKind::Constant, p);
}

SamplerConfig rvsmConfig(BankName name, double phi)
{
  SamplerConfig cfg;
  const FilterBank bank = standardBank(name);
  cfg.model = bank.kind() == BankKind::DoG ? Model::RVSM_DoG : Model::RVSM_Gauss;
  cfg.bank = bank;
  cfg.threshold = phi;
  return cfg;
}

long long totalSpikes(const SpikeVolume & v)
{
  long long n = 0;
  for (auto s : v.spikes) n += std::abs(s);
  return n;
}
}  // namespace

TEST_CASE("FSM on a constant scene fires every fourth step")
{
  SamplerConfig cfg;
  const SpikeVolume v = sampleSequence(constantScene(3, 4, 40, 100.0), cfg);
  for (int t = 0; t < 40; ++t) {
    const std::int8_t expected = (t + 1) % 4 == 0 ? 1 : 0;
    for (std::int8_t s : v.plane(t, 0)) CHECK(s == expected);
  }
}

TEST_CASE("all-zero frames give zero spikes")
{
  for (BankName name : kAllBankNames) {
    SamplerConfig cfg = name == BankName::FSM ? SamplerConfig{} : rvsmConfig(name, 400.0);
    const SpikeVolume v = sampleSequence(constantScene(12, 10, 30, 0.0), cfg);
    CHECK(totalSpikes(v) == 0);
  }
}

TEST_CASE("DoG accumulation grows linearly on constant scenes")
{
  SamplerConfig cfg = rvsmConfig(BankName::FourDoG, 1e9);
  const int h = 20;
  const int w = 20;
  Sampler sampler(cfg, h, w);
  const Image frame(h, w, 100.0);
  for (int t = 1; t <= 50; ++t) sampler.step(frame);
  for (std::size_t s = 0; s < 4; ++s) {
    const Kernel & k = cfg.bank.kernel(s);
    const double expected = k.sum() * 100.0 * 50.0;
    CHECK(sampler.accumulator(s)(10, 10) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("accumulator equals weighted brightness integral")
{
  std::mt19937_64 rng(11);
  const std::vector<int> widths{1, 2, 3, 4};
  for (auto [bankName, mother] :
       {std::pair{BankName::FourDoG, oracle::Mother::DoG},
        std::pair{BankName::FourGauss, oracle::Mother::Gaussian}}) {
    for (int size : {5, 7, 9}) {
      const SceneStream scene = oracle::randomScene(rng, size, size, 25);
      SamplerConfig cfg = rvsmConfig(bankName, 1e12);
      Sampler sampler(cfg, size, size);
      for (const Image & f : scene.frames) sampler.step(f);
      const auto bank = oracle::buildNaiveBank(mother, cfg.bank.scales(), widths, size, size);
      const auto expected = oracle::naiveIntegral(scene, bank);
      for (std::size_t s = 0; s < 4; ++s) {
        for (int c = 0; c < size * size; ++c) {
          const double got = sampler.accumulator(s).pixels()[c];
          const double want = static_cast<double>(expected[s * size * size + c]);
          CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
      }
    }
  }
}

TEST_CASE("spikes match the brute-force sampler")
{
  std::mt19937_64 rng(5);
  const std::vector<int> widths{1, 2, 3, 4};
  for (auto [bankName, mother] :
       {std::pair{BankName::FourDoG, oracle::Mother::DoG},
        std::pair{BankName::TwoGauss, oracle::Mother::Gaussian}}) {
    const SceneStream scene = oracle::randomScene(rng, 9, 8, 60);
    SamplerConfig cfg = rvsmConfig(bankName, 137.0);
    const SpikeVolume v = sampleSequence(scene, cfg);
    const auto bank = oracle::buildNaiveBank(mother, cfg.bank.scales(), widths, 9, 8);
    const auto expected =
      oracle::naiveSample(scene, bank, cfg.scaleThresholds(), true);
    REQUIRE(expected.size() == v.spikes.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) mismatches += expected[i] != v.spikes[i];
    CHECK(mismatches == 0);
  }
}

TEST_CASE("FSM equals RVSM with the unit bank")
{
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 4; ++trial) {
    const SceneStream scene = oracle::randomScene(rng, 16, 13, 80);
    SamplerConfig fsm;
    fsm.threshold = 173.0;
    SamplerConfig dog = fsm;
    dog.model = Model::RVSM_DoG;
    const SpikeVolume a = sampleSequence(scene, fsm);
    const SpikeVolume b = sampleSequence(scene, dog);
    CHECK(a.spikes == b.spikes);
    CHECK(std::none_of(a.spikes.begin(), a.spikes.end(), [](auto s) { return s < 0; }));
  }
}

TEST_CASE("FSM accumulator stays below threshold after reset")
{
  std::mt19937_64 rng(2);
  const SceneStream scene = oracle::randomScene(rng, 6, 6, 100);
  SamplerConfig cfg;
  Sampler sampler(cfg, 6, 6);
  for (const Image & f : scene.frames) {
    sampler.step(f);
    for (double a : sampler.accumulator(0).pixels()) {
      CHECK(a >= 0.0);
      CHECK(a < cfg.threshold);
    }
  }
}

TEST_CASE("FSM under noise never fires negative")
{
  SamplerConfig cfg;
  NoiseConfig noise;
  noise.e1 = -5.0;
  noise.k = 2.0;
  cfg.noise = noise;
  const SpikeVolume v = sampleSequence(constantScene(10, 10, 200, 0.0), cfg);
  CHECK(std::none_of(v.spikes.begin(), v.spikes.end(), [](auto s) { return s < 0; }));
}

TEST_CASE("raising the threshold never adds spikes")
{
  std::mt19937_64 rng(3);
  const SceneStream scene = oracle::randomScene(rng, 12, 12, 120);
  for (BankName name : {BankName::FSM, BankName::FourDoG, BankName::ThreeGauss}) {
    long long previous = -1;
    for (double phi = 50.0; phi <= 1600.0; phi *= 1.37) {
      SamplerConfig cfg = name == BankName::FSM ? SamplerConfig{} : rvsmConfig(name, phi);
      cfg.threshold = phi;
      const long long n = totalSpikes(sampleSequence(scene, cfg));
      if (previous >= 0) CHECK(n <= previous);
      previous = n;
    }
  }
}

TEST_CASE("determinism across runs and thread counts")
{
  std::mt19937_64 rng(4);
  const SceneStream scene = oracle::randomScene(rng, 33, 29, 40);
  SamplerConfig cfg = rvsmConfig(BankName::FourDoG, 50.0);
  cfg.noise = NoiseConfig{};
  cfg.seed = 1234;
  setThreadCount(1);
  const SpikeVolume a = sampleSequence(scene, cfg);
  setThreadCount(4);
  const SpikeVolume b = sampleSequence(scene, cfg);
  setThreadCount(0);
  const SpikeVolume c = sampleSequence(scene, cfg);
  CHECK(a == b);
  CHECK(a == c);
  cfg.seed = 1235;
  CHECK(sampleSequence(scene, cfg).spikes != a.spikes);
}

TEST_CASE("residual carry keeps the overshoot")
{
  SamplerConfig cfg;
  cfg.residualCarry = true;
  const SpikeVolume v = sampleSequence(constantScene(1, 1, 16, 150.0), cfg);
  // 150 per step against 400: fires at steps 3, 6, 8, 11, 14, 16.
  std::vector<int> fired;
  for (int t = 0; t < 16; ++t)
    if (v.at(t, 0, 0, 0) == 1) fired.push_back(t + 1);
  CHECK(fired == std::vector<int>{3, 6, 8, 11, 14, 16});
}

TEST_CASE("volume metadata")
{
  SamplerConfig cfg = rvsmConfig(BankName::TwoDoG, 300.0);
  cfg.perScaleThreshold = {300.0, 120.0};
  cfg.noise = NoiseConfig{};
  cfg.seed = 77;
  const SpikeVolume v = sampleSequence(constantScene(5, 6, 7, 10.0), cfg);
  CHECK((v.model == Model::RVSM_DoG));
  CHECK(v.scales == cfg.bank.scales());
  CHECK(v.thresholds == std::vector<double>{300.0, 120.0});
  CHECK(v.frames == 7);
  CHECK(v.height == 5);
  CHECK(v.width == 6);
  CHECK(v.noiseEnabled);
  CHECK(v.seed == 77);
  CHECK(v.spikes.size() == 7u * 2u * 5u * 6u);
}

TEST_CASE("sampler errors")
{
  SamplerConfig cfg;
  CHECK_THROWS(sampleSequence(SceneStream{}, cfg));
  Sampler sampler(cfg, 4, 4);
  CHECK_THROWS_AS(sampler.step(Image(4, 5)), std::invalid_argument);
  cfg.bank = standardBank(BankName::OneDoG);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = rvsmConfig(BankName::OneGauss, 400.0);
  cfg.model = Model::RVSM_DoG;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = rvsmConfig(BankName::TwoGauss, 400.0);
  cfg.perScaleThreshold = {1.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.perScaleThreshold.clear();
  cfg.threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("synthetic scenes")
{
  SceneParams p;
  p.height = 100;
  p.width = 100;
  p.frames = 1000;
  const SceneStream black = synthScene(SceneKind::Black, p);
  CHECK(black.numFrames() == 1000);
  for (const Image & f : black.frames)
    for (double v : f.pixels()) REQUIRE(v == 0.0);

  p.frames = 50;
  p.period = 20;
  p.intensity = 200.0;
  p.background = 30.0;
  for (SceneKind kind : {SceneKind::RotatingBar, SceneKind::MovingEdge}) {
    const SceneStream s = synthScene(kind, p);
    for (int t = 0; t + 20 < 50; ++t) CHECK(s.frames[t] == s.frames[t + 20]);
    CHECK(s.frames[0] != s.frames[5]);
  }
  p.height = 0;
  CHECK_THROWS(synthScene(SceneKind::Constant, p));
}
