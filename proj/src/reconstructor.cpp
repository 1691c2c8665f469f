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

#include "rvsim/reconstructor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rvsim
{
namespace
{
constexpr double kMeanEpsilon = 1e-12;

constexpr std::pair<BrightnessAdjust, std::string_view> kAdjustNames[] = {
  {BrightnessAdjust::None, "none"},
  {BrightnessAdjust::MatchMean, "mean"},
  {BrightnessAdjust::MatchMeanStd, "mean_std"},
};

}  // namespace

std::string_view toString(BrightnessAdjust adjust)
{
  for (const auto & [a, name] : kAdjustNames) {
    if (a == adjust) {
      return name;
    }
  }
  return "unknown";
}

std::optional<BrightnessAdjust> parseBrightnessAdjust(std::string_view name)
{
  for (const auto & [a, text] : kAdjustNames) {
    if (text == name) {
      return a;
    }
  }
  return std::nullopt;
}

TfiTracker::TfiTracker(int height, int width, double threshold)
: height_(height),
  width_(width),
  phi_(threshold),
  last_(static_cast<std::size_t>(height) * width, 0),
  interval_(static_cast<std::size_t>(height) * width, 0)
{
}

void TfiTracker::update(std::span<const std::int8_t> plane, int t)
{
  if (t <= t_) {
    throw std::invalid_argument("TFI update times must strictly increase");
  }
  if (plane.size() != last_.size()) {
    throw std::invalid_argument("TFI spike plane has the wrong size");
  }
  t_ = t;
  for (std::size_t i = 0; i < plane.size(); ++i) {
    if (plane[i] > 0) {
      interval_[i] = t - last_[i];
      last_[i] = t;
    }
  }
}

Image TfiTracker::frame() const
{
  Image img(height_, width_);
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = interval_[i] > 0 ? phi_ / static_cast<double>(interval_[i]) : 0.0;
  }
  return img;
}

Image tfiFrame(const SpikeVolume & volume, int t)
{
  if (volume.model != Model::FSM) {
    throw std::invalid_argument("TFI reconstruction needs an FSM spike volume");
  }
  if (t < 1 || t > volume.frames) {
    throw std::out_of_range("TFI time outside [1, T]");
  }
  TfiTracker tracker(volume.height, volume.width, volume.thresholds.at(0));
  for (int step = 1; step <= t; ++step) {
    tracker.update(volume.plane(step - 1, 0), step);
  }
  return tracker.frame();
}

CoefficientGrid::CoefficientGrid(std::size_t numScales, int height, int width)
: height_(height), width_(width)
{
  for (std::size_t s = 0; s < numScales; ++s) {
    k_.emplace_back(height, width, 0.0);
    lastFire_.emplace_back(static_cast<std::size_t>(height) * width, 0);
  }
}

int CoefficientGrid::lastFire(std::size_t scale, int row, int col) const
{
  return lastFire_.at(scale)[static_cast<std::size_t>(row) * width_ + col];
}

void CoefficientGrid::update(
  std::span<const std::int8_t> planes, int t, std::span<const double> thresholds)
{
  if (t <= t_) {
    throw std::invalid_argument(
      "coefficient update at t=" + std::to_string(t) + " does not follow t=" + std::to_string(t_));
  }
  const std::size_t plane = static_cast<std::size_t>(height_) * width_;
  if (planes.size() != plane * k_.size()) {
    throw std::invalid_argument("spike planes do not match the coefficient grid");
  }
  if (thresholds.size() != k_.size()) {
    throw std::invalid_argument("need one threshold per scale");
  }
  t_ = t;
  for (std::size_t s = 0; s < k_.size(); ++s) {
    auto k = k_[s].pixels();
    auto & last = lastFire_[s];
    const auto spikes = planes.subspan(s * plane, plane);
    for (std::size_t i = 0; i < plane; ++i) {
      if (spikes[i] != 0) {
        const double rate = thresholds[s] / static_cast<double>(t - last[i]);
        k[i] = spikes[i] > 0 ? rate : -rate;
        last[i] = t;
      }
    }
  }
}

Synthesizer::Synthesizer(FilterBank bank, int height, int width)
: bank_(std::move(bank)), height_(height), width_(width)
{
  for (const Kernel & kernel : bank_.kernels()) {
    border_.push_back(borderRenormalization(kernel, height, width));
  }
}

Image Synthesizer::operator()(const CoefficientGrid & grid) const
{
  if (grid.numScales() != bank_.size()) {
    throw std::invalid_argument("coefficient grid and filter bank differ in scale count");
  }
  if (grid.height() != height_ || grid.width() != width_) {
    throw std::invalid_argument("coefficient grid shape differs from the synthesizer");
  }
  const int h = height_;
  const int w = width_;
  Image out(h, w, 0.0);
  for (std::size_t s = 0; s < bank_.size(); ++s) {
    const Kernel & kernel = bank_.kernel(s);
    const int L = kernel.halfWidth();
    // Fold each center's border factor into its coefficient, then gather.
    Image scaled = grid.coefficients(s);
    auto sp = scaled.pixels();
    auto bp = border_[s].pixels();
    for (std::size_t i = 0; i < sp.size(); ++i) {
      sp[i] *= bp[i];
    }
#pragma omp parallel for schedule(static)
    for (int x = 0; x < h; ++x) {
      for (int y = 0; y < w; ++y) {
        double sum = 0.0;
        const int i0 = std::max(-L, x - (h - 1));
        const int i1 = std::min(L, x);
        const int j0 = std::max(-L, y - (w - 1));
        const int j1 = std::min(L, y);
        // Center (x - di, y - dj) sees pixel (x, y) at offset (di, dj).
        for (int di = i0; di <= i1; ++di) {
          for (int dj = j0; dj <= j1; ++dj) {
            sum += scaled(x - di, y - dj) * kernel.atOffset(di, dj);
          }
        }
        out(x, y) += sum;
      }
    }
  }
  return out;
}

Image synthesizeFrame(const CoefficientGrid & grid, const FilterBank & bank)
{
  return Synthesizer(bank, grid.height(), grid.width())(grid);
}

FilterBank bankForVolume(const SpikeVolume & volume, std::span<const int> halfWidths)
{
  switch (volume.model) {
    case Model::FSM:
      return FilterBank::make(BankKind::Unit, {1.0});
    case Model::RVSM_DoG:
      return FilterBank::make(BankKind::DoG, volume.scales, halfWidths);
    case Model::RVSM_Gauss:
      return FilterBank::make(BankKind::Gaussian, volume.scales, halfWidths);
  }
  throw std::invalid_argument("unknown model");
}

void adjustBrightness(Image & img, const Image & reference, BrightnessAdjust mode)
{
  if (mode == BrightnessAdjust::None) {
    return;
  }
  if (!img.sameShape(reference)) {
    throw std::invalid_argument("reference frame shape differs from reconstruction");
  }
  const double mImg = mean(img);
  const double mRef = mean(reference);
  if (mode == BrightnessAdjust::MatchMean) {
    const double gain = mImg <= kMeanEpsilon ? 1.0 : mRef / mImg;
    for (double & v : img.pixels()) {
      v *= gain;
    }
    return;
  }
  const double sImg = stddev(img);
  const double sRef = stddev(reference);
  const double gain = sImg <= kMeanEpsilon ? 1.0 : sRef / sImg;
  for (double & v : img.pixels()) {
    v = (v - mImg) * gain + mRef;
  }
}

std::vector<Image> reconstructSequence(
  const SpikeVolume & volume, const ReconstructionConfig & cfg, const SceneStream * reference,
  const FilterBank * bank)
{
  if (cfg.adjust != BrightnessAdjust::None) {
    if (reference == nullptr) {
      throw std::invalid_argument(
        "brightness adjustment '" + std::string(toString(cfg.adjust)) +
        "' needs a reference scene");
    }
    if (reference->numFrames() < volume.frames || reference->height != volume.height ||
        reference->width != volume.width) {
      throw std::invalid_argument("reference scene does not cover the spike volume");
    }
  }
  std::vector<Image> out;
  out.reserve(static_cast<std::size_t>(volume.frames));
  if (volume.model == Model::FSM) {
    TfiTracker tracker(volume.height, volume.width, volume.thresholds.at(0));
    for (int t = 1; t <= volume.frames; ++t) {
      tracker.update(volume.plane(t - 1, 0), t);
      out.push_back(tracker.frame());
    }
  } else {
    const FilterBank owned = bank != nullptr ? *bank : bankForVolume(volume);
    if (owned.scales() != volume.scales) {
      throw std::invalid_argument("filter bank scales differ from the spike volume");
    }
    const Synthesizer synthesize(owned, volume.height, volume.width);
    CoefficientGrid grid(volume.numScales(), volume.height, volume.width);
    for (int t = 1; t <= volume.frames; ++t) {
      grid.update(volume.step(t - 1), t, volume.thresholds);
      out.push_back(synthesize(grid));
    }
  }
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (cfg.adjust != BrightnessAdjust::None) {
      adjustBrightness(out[t], reference->frames[t], cfg.adjust);
    }
    if (cfg.clamp) {
      for (double & v : out[t].pixels()) {
        v = std::clamp(v, 0.0, 255.0);
      }
    }
  }
  return out;
}

}  // namespace rvsim
