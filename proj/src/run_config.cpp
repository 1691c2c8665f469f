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

#include "rvsim/run_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "rvsim/spikeio.hpp"

namespace rvsim
{
namespace
{
using nlohmann::json;

void rejectUnknownKeys(const json & j, const std::set<std::string> & allowed, const std::string & where)
{
  if (!j.is_object()) {
    throw std::invalid_argument(where + " must be a JSON object");
  }
  for (const auto & [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown config key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get(const json & j, const std::string & key, const std::string & where)
{
  try {
    return j.at(key).get<T>();
  } catch (const json::exception & e) {
    throw std::invalid_argument("config key '" + key + "' in " + where + ": " + e.what());
  }
}

NoiseConfig parseNoise(const json & j, bool & enabled)
{
  rejectUnknownKeys(j, {"enabled", "e1", "e2", "e3", "beta1", "beta2", "beta3", "k"}, "noise");
  NoiseConfig n;
  enabled = j.contains("enabled") ? get<bool>(j, "enabled", "noise") : true;
  auto read = [&](const char * key, double & field) {
    if (j.contains(key)) {
      field = get<double>(j, key, "noise");
    }
  };
  read("e1", n.e1);
  read("e2", n.e2);
  read("e3", n.e3);
  read("beta1", n.beta1);
  read("beta2", n.beta2);
  read("beta3", n.beta3);
  read("k", n.k);
  n.validate();
  return n;
}

SceneSource parseScene(const json & j)
{
  rejectUnknownKeys(
    j, {"dir", "kind", "height", "width", "frames", "intensity", "background", "period"}, "scene");
  SceneSource src;
  if (j.contains("dir")) {
    if (j.size() != 1) {
      throw std::invalid_argument("scene 'dir' cannot be combined with generator keys");
    }
    src.dir = get<std::string>(j, "dir", "scene");
    return src;
  }
  if (j.contains("kind")) {
    const auto name = get<std::string>(j, "kind", "scene");
    const auto kind = parseSceneKind(name);
    if (!kind) {
      throw std::invalid_argument("unknown scene kind '" + name + "'");
    }
    src.kind = *kind;
  }
  auto & p = src.params;
  if (j.contains("height")) p.height = get<int>(j, "height", "scene");
  if (j.contains("width")) p.width = get<int>(j, "width", "scene");
  if (j.contains("frames")) p.frames = get<int>(j, "frames", "scene");
  if (j.contains("intensity")) p.intensity = get<double>(j, "intensity", "scene");
  if (j.contains("background")) p.background = get<double>(j, "background", "scene");
  if (j.contains("period")) p.period = get<int>(j, "period", "scene");
  if (p.height < 1 || p.width < 1 || p.frames < 1 || p.period < 1) {
    throw std::invalid_argument("scene height, width, frames and period must be positive");
  }
  return src;
}

}  // namespace

SceneStream SceneSource::load() const
{
  if (dir) {
    return readScene(*dir);
  }
  return synthScene(kind, params);
}

std::pair<Model, FilterBank> resolveModel(
  const std::string & name, const std::vector<double> & scales, const std::vector<int> & halfWidths)
{
  if (name == "RVSM_DoG" || name == "RVSM_Gauss") {
    if (scales.empty()) {
      throw std::invalid_argument("model '" + name + "' needs an explicit 'scales' list");
    }
    const bool dog = name == "RVSM_DoG";
    return {dog ? Model::RVSM_DoG : Model::RVSM_Gauss,
            FilterBank::make(dog ? BankKind::DoG : BankKind::Gaussian, scales, halfWidths)};
  }
  const auto bank = parseBankName(name);
  if (!bank) {
    throw std::invalid_argument("unknown model '" + name + "'");
  }
  if (!scales.empty()) {
    throw std::invalid_argument("'scales' is only valid with model RVSM_DoG or RVSM_Gauss");
  }
  FilterBank fb = standardBank(*bank);
  Model model = Model::FSM;
  if (fb.kind() == BankKind::DoG) {
    model = Model::RVSM_DoG;
  } else if (fb.kind() == BankKind::Gaussian) {
    model = Model::RVSM_Gauss;
  }
  if (!halfWidths.empty()) {
    if (model == Model::FSM) {
      throw std::invalid_argument("FSM has no template sizes to override");
    }
    fb = FilterBank::make(fb.kind(), fb.scales(), halfWidths);
  }
  return {model, std::move(fb)};
}

SamplerConfig RunConfig::samplerConfig() const
{
  auto [m, bank] = resolveModel(model, scales, templateHalfWidths);
  SamplerConfig cfg;
  cfg.model = m;
  cfg.bank = std::move(bank);
  cfg.threshold = threshold;
  cfg.perScaleThreshold = thresholds;
  cfg.noise = noise;
  cfg.seed = seed;
  cfg.residualCarry = residualCarry;
  cfg.validate();
  return cfg;
}

RunConfig parseRunConfig(const json & j)
{
  rejectUnknownKeys(
    j,
    {"model", "scales", "template_half_widths", "threshold", "thresholds", "residual_carry", "seed",
     "noise", "scene", "output"},
    "run config");
  const std::string where = "run config";
  RunConfig cfg;
  if (j.contains("model")) cfg.model = get<std::string>(j, "model", where);
  if (j.contains("scales")) cfg.scales = get<std::vector<double>>(j, "scales", where);
  if (j.contains("template_half_widths")) {
    cfg.templateHalfWidths = get<std::vector<int>>(j, "template_half_widths", where);
  }
  if (j.contains("threshold")) cfg.threshold = get<double>(j, "threshold", where);
  if (j.contains("thresholds")) cfg.thresholds = get<std::vector<double>>(j, "thresholds", where);
  if (j.contains("residual_carry")) cfg.residualCarry = get<bool>(j, "residual_carry", where);
  if (j.contains("seed")) cfg.seed = get<std::uint64_t>(j, "seed", where);
  if (j.contains("noise")) {
    bool enabled = true;
    NoiseConfig n = parseNoise(j.at("noise"), enabled);
    if (enabled) {
      cfg.noise = n;
    }
  }
  if (j.contains("scene")) cfg.scene = parseScene(j.at("scene"));
  if (j.contains("output")) cfg.output = get<std::string>(j, "output", where);
  // Surface model/threshold errors before any work is done.
  (void)cfg.samplerConfig();
  return cfg;
}

RunConfig loadRunConfig(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error & e) {
    throw std::invalid_argument("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parseRunConfig(j);
}

nlohmann::json toJson(const NoiseConfig & n)
{
  return {{"e1", n.e1},       {"e2", n.e2},       {"e3", n.e3}, {"beta1", n.beta1},
          {"beta2", n.beta2}, {"beta3", n.beta3}, {"k", n.k}};
}

nlohmann::json toJson(const RunConfig & cfg)
{
  json j;
  j["model"] = cfg.model;
  const SamplerConfig sc = cfg.samplerConfig();
  if (sc.model != Model::FSM) {
    std::vector<int> widths;
    for (const Kernel & k : sc.bank.kernels()) {
      widths.push_back(k.halfWidth());
    }
    j["template_half_widths"] = widths;
  }
  if (!cfg.scales.empty()) {
    j["scales"] = cfg.scales;
  }
  j["threshold"] = cfg.threshold;
  j["thresholds"] = sc.scaleThresholds();
  j["residual_carry"] = cfg.residualCarry;
  j["seed"] = cfg.seed;
  json noise = toJson(cfg.noise.value_or(NoiseConfig{}));
  noise["enabled"] = cfg.noise.has_value();
  j["noise"] = noise;
  if (cfg.scene.dir) {
    j["scene"] = {{"dir", cfg.scene.dir->string()}};
  } else {
    const auto & p = cfg.scene.params;
    j["scene"] = {{"kind", std::string(toString(cfg.scene.kind))},
                  {"height", p.height},
                  {"width", p.width},
                  {"frames", p.frames},
                  {"intensity", p.intensity},
                  {"background", p.background},
                  {"period", p.period}};
  }
  j["output"] = cfg.output.string();
  return j;
}

}  // namespace rvsim
