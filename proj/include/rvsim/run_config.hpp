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

#ifndef RVSIM_RUN_CONFIG_HPP
#define RVSIM_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rvsim/noise.hpp"
#include "rvsim/sampler.hpp"
#include "rvsim/scene.hpp"

namespace rvsim
{
// Where sample frames come from: a PGM directory or a builtin generator.
struct SceneSource
{
  std::optional<std::filesystem::path> dir;
  SceneKind kind = SceneKind::Black;
  SceneParams params;

  SceneStream load() const;
};

// Sampling run description. JSON schema (all keys optional, unknown keys
// rejected):
//   model                 "FSM" | "OneDoG".."FourDoG" | "OneGauss".."FourGauss"
//                         | "RVSM_DoG" | "RVSM_Gauss" (the last two need "scales")
//   scales                [sigma, ...] strictly increasing
//   template_half_widths  [L, ...] one per scale
//   threshold             phi (default 400)
//   thresholds            [phi_sigma, ...] one per scale
//   residual_carry        bool (default false)
//   seed                  unsigned integer (default 0)
//   noise                 {enabled, e1, e2, e3, beta1, beta2, beta3, k}
//   scene                 {dir} or {kind, height, width, frames, intensity,
//                          background, period}
//   output                path of the .spk file
struct RunConfig
{
  std::string model = "FSM";
  std::vector<double> scales;
  std::vector<int> templateHalfWidths;
  double threshold = kDefaultThreshold;
  std::vector<double> thresholds;
  bool residualCarry = false;
  std::uint64_t seed = 0;
  std::optional<NoiseConfig> noise;
  SceneSource scene;
  std::filesystem::path output = "out.spk";

  SamplerConfig samplerConfig() const;
};

// Resolves a model name (and optional explicit scales) to the sampling model
// and its bank.
std::pair<Model, FilterBank> resolveModel(
  const std::string & name, const std::vector<double> & scales = {},
  const std::vector<int> & halfWidths = {});

RunConfig parseRunConfig(const nlohmann::json & j);
RunConfig loadRunConfig(const std::filesystem::path & path);
nlohmann::json toJson(const RunConfig & cfg);
nlohmann::json toJson(const NoiseConfig & noise);

}  // namespace rvsim

#endif  // RVSIM_RUN_CONFIG_HPP
