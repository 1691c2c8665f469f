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

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rvsim/commands.hpp"
#include "rvsim/sampler.hpp"

namespace
{
// RVSIM_THREADS overrides the worker count of the data-parallel loops.
void applyThreadOverride()
{
  if (const char * env = std::getenv("RVSIM_THREADS")) {
    try {
      rvsim::setThreadCount(std::stoi(env));
    } catch (const std::exception &) {
      throw std::invalid_argument(std::string("RVSIM_THREADS is not an integer: ") + env);
    }
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Receptive-field spike camera sampling and reconstruction"};
  app.require_subcommand(1);

  // synth
  auto * synth = app.add_subcommand("synth", "Write a builtin scene as PGM frames");
  std::string synthKind = "rotating_bar";
  rvsim::SceneParams synthParams;
  std::string synthOut;
  synth->add_option("kind", synthKind, "constant|gradient|rotating_bar|moving_edge|black")
    ->required();
  synth->add_option("out", synthOut, "Output directory")->required();
  synth->add_option("--height", synthParams.height, "Frame height")->capture_default_str();
  synth->add_option("--width", synthParams.width, "Frame width")->capture_default_str();
  synth->add_option("--frames", synthParams.frames, "Number of frames")->capture_default_str();
  synth->add_option("--intensity", synthParams.intensity, "Foreground brightness")
    ->capture_default_str();
  synth->add_option("--background", synthParams.background, "Background brightness")
    ->capture_default_str();
  synth->add_option("--period", synthParams.period, "Motion period in steps")
    ->capture_default_str();

  // sample
  auto * sample = app.add_subcommand("sample", "Sample a scene into a .spk spike file");
  std::string configPath;
  std::string sceneDir;
  std::string sampleOut;
  std::string sampleModel;
  double sampleThreshold = 0.0;
  std::uint64_t sampleSeed = 0;
  bool sampleNoise = false;
  double sampleK = -1.0;
  std::string sampleReport;
  sample->add_option("--config", configPath, "JSON run config");
  sample->add_option("--scene", sceneDir, "Directory of PGM frames (overrides config scene)");
  sample->add_option("-o,--out", sampleOut, "Output .spk path (overrides config output)");
  sample->add_option("--model", sampleModel, "FSM, OneDoG..FourDoG, OneGauss..FourGauss");
  sample->add_option("--threshold", sampleThreshold, "Firing threshold phi");
  auto * seedOpt = sample->add_option("--seed", sampleSeed, "Noise seed");
  sample->add_flag("--noise", sampleNoise, "Enable the default noise model");
  sample->add_option("--k", sampleK, "Noise intensity multiplier (implies --noise)");
  sample->add_option("--report", sampleReport, "Write a JSON sampling report");

  // reconstruct
  auto * recon = app.add_subcommand("reconstruct", "Reconstruct PGM frames from a .spk file");
  std::string reconIn;
  std::string reconOut;
  std::string reconRef;
  std::string reconAdjust;
  bool noClamp = false;
  std::vector<int> reconWidths;
  recon->add_option("in", reconIn, "Input .spk file")->required();
  recon->add_option("out", reconOut, "Output directory")->required();
  recon->add_option("--ref", reconRef, "Reference PGM directory for brightness adjustment");
  recon->add_option("--adjust", reconAdjust, "none|mean|mean_std (default: mean with --ref)");
  recon->add_flag("--no-clamp", noClamp, "Do not clamp output to [0, 255]");
  recon->add_option("--template-half-widths", reconWidths, "Per-scale template half-widths");

  // evaluate
  auto * eval = app.add_subcommand("evaluate", "MSE/PSNR/SSIM between two PGM directories");
  std::string evalRecon;
  std::string evalRef;
  std::string evalReport;
  std::string evalTable;
  eval->add_option("recon", evalRecon, "Reconstructed frames")->required();
  eval->add_option("ref", evalRef, "Reference frames")->required();
  eval->add_option("report", evalReport, "JSON report path")->required();
  eval->add_option("--table", evalTable, "Per-frame CSV path");

  // robustness
  auto * robust = app.add_subcommand("robustness", "Noise sweep on a black scene (I1/I2/I3)");
  rvsim::RobustnessOptions robustOpts;
  std::string kSweep = "0:2:5";
  std::string robustTable;
  robust->add_option("--k-sweep", kSweep, "start:end:steps")->capture_default_str();
  robust->add_option("--seeds", robustOpts.seeds, "Seeds per point")->capture_default_str();
  robust->add_option("--first-seed", robustOpts.firstSeed, "First seed")->capture_default_str();
  robust->add_option("--models", robustOpts.models, "Model names")->delimiter(',');
  robust->add_option("--height", robustOpts.height, "Scene height")->capture_default_str();
  robust->add_option("--width", robustOpts.width, "Scene width")->capture_default_str();
  robust->add_option("--frames", robustOpts.frames, "Sampling steps T")->capture_default_str();
  robust->add_option("--threshold", robustOpts.threshold, "Firing threshold phi")
    ->capture_default_str();
  robust->add_option("table", robustTable, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    applyThreadOverride();
    if (*synth) {
      const auto kind = rvsim::parseSceneKind(synthKind);
      if (!kind) {
        throw std::invalid_argument("unknown scene kind '" + synthKind + "'");
      }
      const int n = rvsim::cmdSynth(*kind, synthParams, synthOut);
      std::cout << "wrote " << n << " frames to " << synthOut << "\n";
    } else if (*sample) {
      rvsim::RunConfig cfg = configPath.empty() ? rvsim::RunConfig{} : rvsim::loadRunConfig(configPath);
      if (!sceneDir.empty()) cfg.scene.dir = sceneDir;
      if (!sampleOut.empty()) cfg.output = sampleOut;
      if (!sampleModel.empty()) cfg.model = sampleModel;
      if (sampleThreshold > 0.0) cfg.threshold = sampleThreshold;
      if (*seedOpt) cfg.seed = sampleSeed;
      if (sampleNoise || sampleK >= 0.0) {
        rvsim::NoiseConfig n = cfg.noise.value_or(rvsim::NoiseConfig{});
        if (sampleK >= 0.0) n.k = sampleK;
        cfg.noise = n;
      }
      const auto volume = rvsim::cmdSample(
        cfg, sampleReport.empty() ? std::nullopt : std::optional<std::filesystem::path>(sampleReport));
      std::cout << "sampled " << volume.frames << " steps of " << volume.height << "x"
                << volume.width << " with " << rvsim::toString(volume.model) << " into "
                << cfg.output.string() << "\n";
    } else if (*recon) {
      rvsim::ReconstructOptions opts;
      if (!reconRef.empty()) {
        opts.referenceDir = reconRef;
        opts.adjust = rvsim::BrightnessAdjust::MatchMean;
      }
      if (!reconAdjust.empty()) {
        const auto adj = rvsim::parseBrightnessAdjust(reconAdjust);
        if (!adj) {
          throw std::invalid_argument("unknown --adjust mode '" + reconAdjust + "'");
        }
        opts.adjust = *adj;
      }
      opts.clamp = !noClamp;
      opts.templateHalfWidths = reconWidths;
      const int n = rvsim::cmdReconstruct(reconIn, reconOut, opts);
      std::cout << "wrote " << n << " frames to " << reconOut << "\n";
    } else if (*eval) {
      const auto report = rvsim::cmdEvaluate(
        evalRecon, evalRef, evalReport,
        evalTable.empty() ? std::nullopt : std::optional<std::filesystem::path>(evalTable));
      std::cout << rvsim::metricReportJson(report).dump(2) << "\n";
    } else if (*robust) {
      rvsim::parseKSweep(kSweep, robustOpts);
      const auto rows = rvsim::cmdRobustness(robustOpts, robustTable);
      std::cout << rvsim::robustnessTable(rows);
    }
  } catch (const std::exception & e) {
    std::cerr << "rvsim: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
