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

#include "rvsim/sampler.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rvsim
{
namespace
{
struct ModelName
{
  Model model;
  std::string_view text;
};

constexpr ModelName kModelNames[] = {
  {Model::FSM, "FSM"}, {Model::RVSM_DoG, "RVSM_DoG"}, {Model::RVSM_Gauss, "RVSM_Gauss"}};

}  // namespace

std::string_view toString(Model model)
{
  for (const auto & m : kModelNames) {
    if (m.model == model) {
      return m.text;
    }
  }
  return "unknown";
}

std::optional<Model> parseModel(std::string_view name)
{
  for (const auto & m : kModelNames) {
    if (m.text == name) {
      return m.model;
    }
  }
  return std::nullopt;
}

void SpikeVolume::validate() const
{
  if (scales.empty()) {
    throw std::invalid_argument("spike volume needs at least one scale");
  }
  if (thresholds.size() != scales.size()) {
    throw std::invalid_argument("spike volume needs one threshold per scale");
  }
  if (model == Model::FSM && scales.size() != 1) {
    throw std::invalid_argument("FSM spike volume has exactly one scale");
  }
  if (frames < 0 || height < 0 || width < 0) {
    throw std::invalid_argument("spike volume dimensions must be nonnegative");
  }
  if (spikes.size() != static_cast<std::size_t>(frames) * numScales() * planeSize()) {
    throw std::invalid_argument("spike payload size does not match T x |P| x H x W");
  }
  for (std::int8_t v : spikes) {
    if (v < -1 || v > 1) {
      throw std::invalid_argument("spike values must be ternary");
    }
    if (model == Model::FSM && v < 0) {
      throw std::invalid_argument("FSM spike volume cannot contain -1");
    }
  }
}

std::vector<double> SamplerConfig::scaleThresholds() const
{
  if (!perScaleThreshold.empty()) {
    return perScaleThreshold;
  }
  return std::vector<double>(bank.size(), threshold);
}

void SamplerConfig::validate() const
{
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("threshold must be positive");
  }
  if (!perScaleThreshold.empty()) {
    if (perScaleThreshold.size() != bank.size()) {
      throw std::invalid_argument(
        "per-scale thresholds: expected " + std::to_string(bank.size()) + " values, got " +
        std::to_string(perScaleThreshold.size()));
    }
    for (double phi : perScaleThreshold) {
      if (!(phi > 0.0) || !std::isfinite(phi)) {
        throw std::invalid_argument("per-scale thresholds must be positive");
      }
    }
  }
  if (model == Model::FSM && bank.kind() != BankKind::Unit) {
    throw std::invalid_argument("FSM samples with the unit bank");
  }
  if (model == Model::RVSM_Gauss && bank.kind() == BankKind::DoG) {
    throw std::invalid_argument("RVSM_Gauss needs a Gaussian bank");
  }
  if (model == Model::RVSM_DoG && bank.kind() == BankKind::Gaussian) {
    throw std::invalid_argument("RVSM_DoG needs a DoG bank");
  }
  if (noise) {
    noise->validate();
  }
}

Sampler::Sampler(SamplerConfig cfg, int height, int width)
: cfg_(std::move(cfg)), height_(height), width_(width)
{
  cfg_.validate();
  if (height < 1 || width < 1) {
    throw std::invalid_argument("sampler frame dimensions must be positive");
  }
  phi_ = cfg_.scaleThresholds();
  const std::size_t numScales = cfg_.bank.size();
  if (cfg_.noise) {
    noise_.emplace(*cfg_.noise, cfg_.seed, static_cast<int>(numScales), height, width);
  }
  for (std::size_t s = 0; s < numScales; ++s) {
    acc_.emplace_back(height, width, 0.0);
    borderScale_.push_back(borderRenormalization(cfg_.bank.kernel(s), height, width));
    Image trig(height, width, phi_[s]);
    if (noise_) {
      const Image & theta = noise_->capacitorFactor(s);
      const Image & vos = noise_->offsetVoltage(s);
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
          trig(r, c) = theta(r, c) * phi_[s] + vos(r, c);
        }
      }
    }
    trigger_.push_back(std::move(trig));
  }
  spikes_.assign(numScales * static_cast<std::size_t>(height) * width, 0);
}

std::span<const std::int8_t> Sampler::step(const Image & frame)
{
  if (frame.height() != height_ || frame.width() != width_) {
    throw std::invalid_argument(
      "frame is " + std::to_string(frame.height()) + "x" + std::to_string(frame.width()) +
      ", sampler expects " + std::to_string(height_) + "x" + std::to_string(width_));
  }
  ++t_;
  const Image * input = &frame;
  if (noise_) {
    work_ = frame;
    noise_->addDarkCurrent(work_, t_);
    input = &work_;
  }
  const std::size_t plane = static_cast<std::size_t>(height_) * width_;
  for (std::size_t s = 0; s < acc_.size(); ++s) {
    integrate(s, *input);
    fire(s, std::span<std::int8_t>(spikes_).subspan(s * plane, plane));
  }
  return spikes_;
}

void Sampler::integrate(std::size_t s, const Image & frame)
{
  const Kernel & kernel = cfg_.bank.kernel(s);
  const int L = kernel.halfWidth();
  const int side = kernel.side();
  const double * w = kernel.weights().data();
  const Image & border = borderScale_[s];
  Image & acc = acc_[s];
  const int h = height_;
  const int wd = width_;

  if (L == 0) {
    // 1x1 unit kernel: weight is exactly 1.
    auto a = acc.pixels();
    auto f = frame.pixels();
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] += f[i];
    }
    return;
  }

#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    const bool rowInterior = r >= L && r + L < h;
    for (int c = 0; c < wd; ++c) {
      double sum = 0.0;
      if (rowInterior && c >= L && c + L < wd) {
        for (int di = -L; di <= L; ++di) {
          const double * fr = frame.row(r + di).data() + (c - L);
          const double * kr = w + (di + L) * side;
          for (int dj = 0; dj < side; ++dj) {
            sum += kr[dj] * fr[dj];
          }
        }
      } else {
        const int i0 = std::max(-L, -r);
        const int i1 = std::min(L, h - 1 - r);
        const int j0 = std::max(-L, -c);
        const int j1 = std::min(L, wd - 1 - c);
        for (int di = i0; di <= i1; ++di) {
          for (int dj = j0; dj <= j1; ++dj) {
            sum += w[(di + L) * side + (dj + L)] * frame(r + di, c + dj);
          }
        }
        sum *= border(r, c);
      }
      acc(r, c) += sum;
    }
  }
}

void Sampler::fire(std::size_t s, std::span<std::int8_t> out)
{
  const bool bipolar = cfg_.model != Model::FSM;
  const bool carry = cfg_.residualCarry;
  auto a = acc_[s].pixels();
  auto trig = trigger_[s].pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double thr = trig[i];
    const double slack = kTriggerRelTolerance * std::abs(thr);
    std::int8_t spike = 0;
    if (a[i] >= thr - slack) {
      spike = 1;
      a[i] = carry ? a[i] - thr : 0.0;
    } else if (bipolar && a[i] <= -thr + slack) {
      spike = -1;
      a[i] = carry ? a[i] + thr : 0.0;
    }
    out[i] = spike;
  }
}

SpikeVolume sampleSequence(const SceneStream & scene, const SamplerConfig & cfg)
{
  scene.validate();
  Sampler sampler(cfg, scene.height, scene.width);
  SpikeVolume vol;
  vol.model = cfg.model;
  vol.scales = cfg.bank.scales();
  vol.thresholds = cfg.scaleThresholds();
  vol.frames = scene.numFrames();
  vol.height = scene.height;
  vol.width = scene.width;
  vol.noiseEnabled = cfg.noise.has_value();
  if (cfg.noise) {
    vol.noise = *cfg.noise;
  }
  vol.seed = cfg.seed;
  vol.spikes.resize(static_cast<std::size_t>(vol.frames) * vol.numScales() * vol.planeSize());
  for (int t = 0; t < vol.frames; ++t) {
    const auto planes = sampler.step(scene.frames[static_cast<std::size_t>(t)]);
    std::copy(planes.begin(), planes.end(), vol.spikes.begin() + vol.planeIndex(t, 0));
  }
  return vol;
}

void setThreadCount(int n) { omp_set_num_threads(n > 0 ? n : omp_get_num_procs()); }

int threadCount() { return omp_get_max_threads(); }

}  // namespace rvsim
