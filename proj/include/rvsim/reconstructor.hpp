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

#ifndef RVSIM_RECONSTRUCTOR_HPP
#define RVSIM_RECONSTRUCTOR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rvsim/filter_bank.hpp"
#include "rvsim/image.hpp"
#include "rvsim/scene.hpp"
#include "rvsim/spike_volume.hpp"

namespace rvsim
{
enum class BrightnessAdjust { None, MatchMean, MatchMeanStd };

std::string_view toString(BrightnessAdjust adjust);
std::optional<BrightnessAdjust> parseBrightnessAdjust(std::string_view name);

// Brightness adjustment reads reference statistics; it is meant for
// evaluation only.
struct ReconstructionConfig
{
  BrightnessAdjust adjust = BrightnessAdjust::MatchMean;
  bool clamp = true;
};

// Texture-from-interval estimate for unipolar (FSM) spikes.
class TfiTracker
{
public:
  TfiTracker(int height, int width, double threshold);

  // Records the spikes of step t (t strictly increasing, t >= 1).
  void update(std::span<const std::int8_t> plane, int t);
  // phi / (latest inter-spike interval); 0 before the first spike.
  Image frame() const;

private:
  int height_;
  int width_;
  double phi_;
  int t_ = 0;
  std::vector<int> last_;
  std::vector<int> interval_;
};

// Reconstructs FSM step t (1-based) by replaying spikes 1..t.
Image tfiFrame(const SpikeVolume & volume, int t);

// Per-(scale, pixel) transform-domain rate estimates K and last firing times.
class CoefficientGrid
{
public:
  CoefficientGrid(std::size_t numScales, int height, int width);

  std::size_t numScales() const { return k_.size(); }
  int height() const { return height_; }
  int width() const { return width_; }
  int time() const { return t_; }
  const Image & coefficients(std::size_t scale) const { return k_.at(scale); }
  Image & coefficients(std::size_t scale) { return k_.at(scale); }
  int lastFire(std::size_t scale, int row, int col) const;

  // Applies the spikes of step t (all scales, scale-major) with per-scale
  // thresholds. Throws if t does not advance.
  void update(std::span<const std::int8_t> planes, int t, std::span<const double> thresholds);

private:
  int height_;
  int width_;
  int t_ = 0;
  std::vector<Image> k_;
  std::vector<std::vector<int>> lastFire_;
};

// Inverse transform: sum over scales and centers of K times the (border
// re-normalized) kernel placed at that center.
class Synthesizer
{
public:
  Synthesizer(FilterBank bank, int height, int width);
  Image operator()(const CoefficientGrid & grid) const;

private:
  FilterBank bank_;
  int height_;
  int width_;
  std::vector<Image> border_;
};

Image synthesizeFrame(const CoefficientGrid & grid, const FilterBank & bank);

// Bank matching a decoded volume's model and scale list.
FilterBank bankForVolume(const SpikeVolume & volume, std::span<const int> halfWidths = {});

// match_mean: gain mean(ref)/mean(img) (1 if mean(img) <= 1e-12).
// match_mean_std: affine map onto the reference mean and deviation.
void adjustBrightness(Image & img, const Image & reference, BrightnessAdjust mode);

std::vector<Image> reconstructSequence(
  const SpikeVolume & volume, const ReconstructionConfig & cfg,
  const SceneStream * reference = nullptr, const FilterBank * bank = nullptr);

}  // namespace rvsim

#endif  // RVSIM_RECONSTRUCTOR_HPP
