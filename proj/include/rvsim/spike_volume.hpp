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

#ifndef RVSIM_SPIKE_VOLUME_HPP
#define RVSIM_SPIKE_VOLUME_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rvsim/noise.hpp"

namespace rvsim
{
enum class Model : std::uint8_t { FSM = 0, RVSM_DoG = 1, RVSM_Gauss = 2 };

std::string_view toString(Model model);
std::optional<Model> parseModel(std::string_view name);

// T x |P| x H x W ternary spikes plus the sampling metadata.
struct SpikeVolume
{
  Model model = Model::FSM;
  std::vector<double> scales;
  std::vector<double> thresholds;  // one per scale
  int frames = 0;                  // T
  int height = 0;
  int width = 0;
  bool noiseEnabled = false;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  std::vector<std::int8_t> spikes;

  std::size_t numScales() const { return scales.size(); }
  std::size_t planeSize() const
  {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  std::size_t planeIndex(int t, std::size_t scale) const
  {
    return (static_cast<std::size_t>(t) * numScales() + scale) * planeSize();
  }
  // Zero-based step index t in [0, T).
  std::span<const std::int8_t> plane(int t, std::size_t scale) const
  {
    return {spikes.data() + planeIndex(t, scale), planeSize()};
  }
  std::span<std::int8_t> plane(int t, std::size_t scale)
  {
    return {spikes.data() + planeIndex(t, scale), planeSize()};
  }
  // All scales at step t, scale-major.
  std::span<const std::int8_t> step(int t) const
  {
    return {spikes.data() + planeIndex(t, 0), planeSize() * numScales()};
  }
  std::int8_t at(int t, std::size_t scale, int row, int col) const
  {
    return spikes[planeIndex(t, scale) + static_cast<std::size_t>(row) * width + col];
  }

  // Throws std::invalid_argument on inconsistent metadata or non-ternary values.
  void validate() const;

  friend bool operator==(const SpikeVolume &, const SpikeVolume &) = default;
};

}  // namespace rvsim

#endif  // RVSIM_SPIKE_VOLUME_HPP
