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

#ifndef RVSIM_COMMANDS_HPP
#define RVSIM_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rvsim/metrics.hpp"
#include "rvsim/reconstructor.hpp"
#include "rvsim/run_config.hpp"

namespace rvsim
{
// Writes a builtin scene as a PGM frame directory; returns the frame count.
int cmdSynth(SceneKind kind, const SceneParams & params, const std::filesystem::path & outDir);

// Samples the configured scene into cfg.output. When reportPath is set, also
// writes a JSON report echoing the configuration and the spike statistics.
SpikeVolume cmdSample(const RunConfig & cfg,
                      const std::optional<std::filesystem::path> & reportPath = std::nullopt);

struct ReconstructOptions
{
  std::optional<std::filesystem::path> referenceDir;
  BrightnessAdjust adjust = BrightnessAdjust::None;
  bool clamp = true;
  std::vector<int> templateHalfWidths;
};

// Returns the number of frames written.
int cmdReconstruct(const std::filesystem::path & spikeFile, const std::filesystem::path & outDir,
                   const ReconstructOptions & options);

// Compares two PGM directories frame by frame. Writes a JSON report and,
// when tablePath is set, a per-frame CSV (frame,mse,psnr,ssim).
MetricReport cmdEvaluate(const std::filesystem::path & reconDir,
                         const std::filesystem::path & refDir,
                         const std::filesystem::path & reportPath,
                         const std::optional<std::filesystem::path> & tablePath = std::nullopt);

struct RobustnessOptions
{
  double kStart = 0.0;
  double kEnd = 2.0;
  int kSteps = 5;
  int seeds = 10;
  std::uint64_t firstSeed = 0;
  std::vector<std::string> models = {"FSM", "OneDoG", "TwoDoG", "ThreeDoG", "FourDoG"};
  int height = 100;
  int width = 100;
  int frames = 1000;
  double threshold = kDefaultThreshold;
  NoiseConfig noise;  // k is replaced by the sweep value
};

struct RobustnessRow
{
  double k = 0.0;
  std::string model;
  int seeds = 0;
  double i1 = 0.0;
  double i2 = 0.0;
  std::vector<double> i3;  // per scale, mean over seeds
};

// Parses "a:b:n" into (start, end, steps).
void parseKSweep(const std::string & text, RobustnessOptions & options);

// Black-scene noise sweep; every row averages the indices over the seeds.
std::vector<RobustnessRow> runRobustness(const RobustnessOptions & options);
// Delimited table: k,model,seeds,I1,I2,I3_scale1..I3_scale4.
std::string robustnessTable(const std::vector<RobustnessRow> & rows);
std::vector<RobustnessRow> cmdRobustness(const RobustnessOptions & options,
                                         const std::filesystem::path & tablePath);

nlohmann::json metricReportJson(const MetricReport & report);

}  // namespace rvsim

#endif  // RVSIM_COMMANDS_HPP
