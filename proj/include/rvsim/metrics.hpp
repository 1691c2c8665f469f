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

#ifndef RVSIM_METRICS_HPP
#define RVSIM_METRICS_HPP

#include <string>
#include <vector>

#include "rvsim/image.hpp"
#include "rvsim/spike_volume.hpp"

namespace rvsim
{
inline constexpr double kPeakValue = 255.0;

// Single-scale SSIM constants (Wang et al. 2004).
struct SsimParams
{
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamicRange = kPeakValue;
};

double mse(const Image & a, const Image & b);
// 10 log10(255^2 / mse); +infinity when mse == 0.
double psnr(double mse);
// Mean of the local SSIM map over all fully-covered windows.
double ssim(const Image & a, const Image & b, const SsimParams & params = {});

struct MetricReport
{
  std::vector<double> mse;
  std::vector<double> psnr;
  std::vector<double> ssim;
  double meanMse = 0.0;
  double meanPsnr = 0.0;
  double meanSsim = 0.0;
  std::string aggregation = "per_frame_mean";
};

// Frame-wise metrics averaged over the sequence.
MetricReport evaluateSequence(const std::vector<Image> & reconstructed,
                              const std::vector<Image> & reference);

// ASS: spikes (|S| for RVSM) per sampling step.
double ass(const SpikeVolume & volume);
// ASAS: ASS per accumulator.
double asas(const SpikeVolume & volume);
// ASASS: spikes per accumulator of one scale per step; equals ASS for FSM.
double asass(const SpikeVolume & volume, double sigma);

struct RobustnessReport
{
  double i1 = 0.0;
  double i2 = 0.0;
  std::vector<double> i3;  // one per scale
  int frames = 0;
  int height = 0;
  int width = 0;
  std::size_t numScales = 0;
  double k = 0.0;
};

RobustnessReport robustness(const SpikeVolume & volume);

// First-spike latency ceil(phi / I) on a constant scene.
int responseTime(double intensity, double phi);
// |phi / ceil(phi / I) - I|: TFI error on a constant scene.
double quantizationErrorBound(double intensity, double phi);

}  // namespace rvsim

#endif  // RVSIM_METRICS_HPP
