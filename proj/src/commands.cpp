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

#include "rvsim/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "rvsim/sampler.hpp"
#include "rvsim/spikeio.hpp"

namespace rvsim
{
namespace
{
using nlohmann::json;

constexpr std::size_t kMaxTableScales = 4;

void writeText(const std::filesystem::path & path, const std::string & text)
{
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed to write " + path.string());
  }
}

// JSON has no infinity; PSNR of identical frames is reported as "inf".
json finiteOrString(double v)
{
  if (std::isfinite(v)) {
    return v;
  }
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::string formatDouble(double v)
{
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

int cmdSynth(SceneKind kind, const SceneParams & params, const std::filesystem::path & outDir)
{
  const SceneStream scene = synthScene(kind, params);
  writeImages(scene.frames, outDir);
  return scene.numFrames();
}

SpikeVolume cmdSample(const RunConfig & cfg, const std::optional<std::filesystem::path> & reportPath)
{
  const SamplerConfig samplerCfg = cfg.samplerConfig();
  const SceneStream scene = cfg.scene.load();
  SpikeVolume volume = sampleSequence(scene, samplerCfg);
  if (cfg.output.has_parent_path()) {
    std::filesystem::create_directories(cfg.output.parent_path());
  }
  writeVolumeFile(volume, cfg.output);
  if (reportPath) {
    const RobustnessReport r = robustness(volume);
    json report;
    report["config"] = toJson(cfg);
    report["model"] = std::string(toString(volume.model));
    report["frames"] = volume.frames;
    report["height"] = volume.height;
    report["width"] = volume.width;
    report["dt_seconds"] = 1.0 / 40000.0;
    report["I1"] = r.i1;
    report["I2"] = r.i2;
    report["I3"] = r.i3;
    long long total = 0;
    for (std::int8_t v : volume.spikes) {
      total += v < 0 ? -v : v;
    }
    report["total_spikes"] = total;
    writeText(*reportPath, report.dump(2) + "\n");
  }
  return volume;
}

int cmdReconstruct(const std::filesystem::path & spikeFile, const std::filesystem::path & outDir,
                   const ReconstructOptions & options)
{
  const SpikeVolume volume = readVolumeFile(spikeFile);
  std::optional<SceneStream> reference;
  if (options.referenceDir) {
    reference = readScene(*options.referenceDir);
  }
  ReconstructionConfig cfg;
  cfg.adjust = options.adjust;
  cfg.clamp = options.clamp;
  std::optional<FilterBank> bank;
  if (!options.templateHalfWidths.empty() && volume.model != Model::FSM) {
    bank = bankForVolume(volume, options.templateHalfWidths);
  }
  const auto frames = reconstructSequence(
    volume, cfg, reference ? &*reference : nullptr, bank ? &*bank : nullptr);
  writeImages(frames, outDir);
  return static_cast<int>(frames.size());
}

json metricReportJson(const MetricReport & report)
{
  json j;
  j["aggregation"] = report.aggregation;
  j["frames"] = report.mse.size();
  j["mean_mse"] = report.meanMse;
  j["mean_psnr"] = finiteOrString(report.meanPsnr);
  j["mean_ssim"] = report.meanSsim;
  j["psnr_peak"] = kPeakValue;
  const SsimParams sp;
  j["ssim_params"] = {{"window", sp.window},
                      {"sigma", sp.sigma},
                      {"k1", sp.k1},
                      {"k2", sp.k2},
                      {"dynamic_range", sp.dynamicRange}};
  return j;
}

MetricReport cmdEvaluate(const std::filesystem::path & reconDir,
                         const std::filesystem::path & refDir,
                         const std::filesystem::path & reportPath,
                         const std::optional<std::filesystem::path> & tablePath)
{
  const SceneStream recon = readScene(reconDir);
  const SceneStream ref = readScene(refDir);
  const MetricReport report = evaluateSequence(recon.frames, ref.frames);
  json j = metricReportJson(report);
  j["recon_dir"] = reconDir.string();
  j["ref_dir"] = refDir.string();
  writeText(reportPath, j.dump(2) + "\n");
  if (tablePath) {
    std::ostringstream os;
    os << "frame,mse,psnr,ssim\n";
    for (std::size_t t = 0; t < report.mse.size(); ++t) {
      os << t << ',' << formatDouble(report.mse[t]) << ',' << formatDouble(report.psnr[t]) << ','
         << formatDouble(report.ssim[t]) << '\n';
    }
    writeText(*tablePath, os.str());
  }
  return report;
}

void parseKSweep(const std::string & text, RobustnessOptions & options)
{
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw std::invalid_argument("k sweep must look like start:end:steps, got '" + text + "'");
  }
  RobustnessOptions parsed = options;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, first);
    const std::string b = text.substr(first + 1, second - first - 1);
    const std::string n = text.substr(second + 1);
    parsed.kStart = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    parsed.kEnd = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    parsed.kSteps = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::exception &) {
    throw std::invalid_argument("k sweep must look like start:end:steps, got '" + text + "'");
  }
  if (parsed.kSteps < 1 || parsed.kStart < 0.0 || parsed.kEnd < 0.0) {
    throw std::invalid_argument("k sweep needs steps >= 1 and nonnegative k");
  }
  options = parsed;
}

std::vector<RobustnessRow> runRobustness(const RobustnessOptions & options)
{
  if (options.seeds < 1) {
    throw std::invalid_argument("robustness needs at least one seed");
  }
  if (options.kSteps < 1) {
    throw std::invalid_argument("k sweep needs at least one step");
  }
  std::vector<std::pair<Model, FilterBank>> models;
  for (const auto & name : options.models) {
    models.push_back(resolveModel(name));
  }
  const Image black(options.height, options.width, 0.0);
  std::vector<RobustnessRow> rows;
  for (int ki = 0; ki < options.kSteps; ++ki) {
    const double k = options.kSteps == 1
                       ? options.kStart
                       : options.kStart + (options.kEnd - options.kStart) * ki / (options.kSteps - 1);
    for (std::size_t m = 0; m < models.size(); ++m) {
      RobustnessRow row;
      row.k = k;
      row.model = options.models[m];
      row.seeds = options.seeds;
      row.i3.assign(models[m].second.size(), 0.0);
      for (int si = 0; si < options.seeds; ++si) {
        SamplerConfig cfg;
        cfg.model = models[m].first;
        cfg.bank = models[m].second;
        cfg.threshold = options.threshold;
        cfg.noise = options.noise;
        cfg.noise->k = k;
        cfg.seed = options.firstSeed + static_cast<std::uint64_t>(si);
        Sampler sampler(cfg, options.height, options.width);
        const std::size_t plane = black.size();
        std::vector<long long> counts(cfg.bank.size(), 0);
        for (int t = 0; t < options.frames; ++t) {
          const auto spikes = sampler.step(black);
          for (std::size_t s = 0; s < counts.size(); ++s) {
            for (std::size_t i = s * plane; i < (s + 1) * plane; ++i) {
              counts[s] += spikes[i] < 0 ? -spikes[i] : spikes[i];
            }
          }
        }
        // Same definitions as ass/asas/asass on the full volume.
        long long total = 0;
        for (long long c : counts) total += c;
        const double T = options.frames;
        const double area = static_cast<double>(options.height) * options.width;
        const double i1 = static_cast<double>(total) / T;
        row.i1 += i1;
        row.i2 += cfg.model == Model::FSM ? i1 / area : i1 / (area * counts.size());
        for (std::size_t s = 0; s < counts.size(); ++s) {
          row.i3[s] += cfg.model == Model::FSM ? i1 : static_cast<double>(counts[s]) / (T * area);
        }
      }
      row.i1 /= options.seeds;
      row.i2 /= options.seeds;
      for (double & v : row.i3) {
        v /= options.seeds;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string robustnessTable(const std::vector<RobustnessRow> & rows)
{
  std::ostringstream os;
  os << "k,model,seeds,I1,I2";
  for (std::size_t s = 1; s <= kMaxTableScales; ++s) {
    os << ",I3_scale" << s;
  }
  os << '\n';
  for (const auto & r : rows) {
    os << formatDouble(r.k) << ',' << r.model << ',' << r.seeds << ',' << formatDouble(r.i1) << ','
       << formatDouble(r.i2);
    for (std::size_t s = 0; s < kMaxTableScales; ++s) {
      os << ',';
      if (s < r.i3.size()) {
        os << formatDouble(r.i3[s]);
      }
    }
    os << '\n';
  }
  return os.str();
}

std::vector<RobustnessRow> cmdRobustness(const RobustnessOptions & options,
                                         const std::filesystem::path & tablePath)
{
  auto rows = runRobustness(options);
  writeText(tablePath, robustnessTable(rows));
  return rows;
}

}  // namespace rvsim
