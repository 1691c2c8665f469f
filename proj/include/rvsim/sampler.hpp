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

#ifndef RVSIM_SAMPLER_HPP
#define RVSIM_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rvsim/filter_bank.hpp"
#include "rvsim/image.hpp"
#include "rvsim/noise.hpp"
#include "rvsim/scene.hpp"
#include "rvsim/spike_volume.hpp"

namespace rvsim
{
inline constexpr double kDefaultThreshold = 400.0;

// Relative slack on the trigger comparison. Absorbs the last-ulp error of
// L1-normalized kernels so constant scenes fire on the exact step.
inline constexpr double kTriggerRelTolerance = 1e-12;

struct SamplerConfig
{
  Model model = Model::FSM;
  FilterBank bank = standardBank(BankName::FSM);
  double threshold = kDefaultThreshold;
  std::vector<double> perScaleThreshold;  // empty: threshold for every scale
  std::optional<NoiseConfig> noise;
  std::uint64_t seed = 0;
  // Subtract the threshold on firing instead of resetting to zero.
  bool residualCarry = false;

  std::vector<double> scaleThresholds() const;
  void validate() const;
};

// Integrate-and-fire accumulators for every (scale, pixel). Positions whose
// template overhangs the frame use the clipped kernel re-normalized to
// sum |w| = 1.
class Sampler
{
public:
  Sampler(SamplerConfig cfg, int height, int width);

  // Integrates one frame (t advances by 1) and returns the |P| x H x W spikes
  // of this step. The view is valid until the next call.
  std::span<const std::int8_t> step(const Image & frame);

  int time() const { return t_; }
  int height() const { return height_; }
  int width() const { return width_; }
  const SamplerConfig & config() const { return cfg_; }
  const Image & accumulator(std::size_t scale) const { return acc_.at(scale); }
  const std::optional<NoiseField> & noiseField() const { return noise_; }

private:
  void integrate(std::size_t s, const Image & frame);
  void fire(std::size_t s, std::span<std::int8_t> out);

  SamplerConfig cfg_;
  int height_;
  int width_;
  int t_ = 0;
  std::vector<double> phi_;
  std::vector<Image> acc_;
  std::vector<Image> borderScale_;  // 1 / clipped L1 norm per position
  std::vector<Image> trigger_;      // theta * phi + V_OS per accumulator
  std::optional<NoiseField> noise_;
  Image work_;
  std::vector<std::int8_t> spikes_;
};

SpikeVolume sampleSequence(const SceneStream & scene, const SamplerConfig & cfg);

// Process-wide worker count for data-parallel loops; n <= 0 restores default.
void setThreadCount(int n);
int threadCount();

}  // namespace rvsim

#endif  // RVSIM_SAMPLER_HPP
