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

#include "rvsim/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rvsim
{
namespace
{
void requireSameShape(const Image & a, const Image & b)
{
  if (!a.sameShape(b)) {
    throw std::invalid_argument(
      "image shapes differ: " + std::to_string(a.height()) + "x" + std::to_string(a.width()) +
      " vs " + std::to_string(b.height()) + "x" + std::to_string(b.width()));
  }
}

std::vector<double> gaussianWindow1d(int size, double sigma)
{
  std::vector<double> w(static_cast<std::size_t>(size));
  const double c = 0.5 * (size - 1);
  for (int i = 0; i < size; ++i) {
    const double d = i - c;
    w[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  const double total = pairwiseSum(w);
  for (double & v : w) {
    v /= total;
  }
  return w;
}

// Separable "valid" filtering of img with the window w.
Image filterValid(const Image & img, const std::vector<double> & w)
{
  const int n = static_cast<int>(w.size());
  const int oh = img.height() - n + 1;
  const int ow = img.width() - n + 1;
  Image horiz(img.height(), ow);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += w[static_cast<std::size_t>(k)] * img(r, c + k);
      }
      horiz(r, c) = s;
    }
  }
  Image out(oh, ow);
  for (int r = 0; r < oh; ++r) {
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += w[static_cast<std::size_t>(k)] * horiz(r + k, c);
      }
      out(r, c) = s;
    }
  }
  return out;
}

double totalSpikes(const SpikeVolume & volume, std::size_t firstScale, std::size_t lastScale)
{
  long long count = 0;
  for (int t = 0; t < volume.frames; ++t) {
    for (std::size_t s = firstScale; s < lastScale; ++s) {
      for (std::int8_t v : volume.plane(t, s)) {
        // FSM spikes are unary; RVSM counts |S|.
        count += v < 0 ? -v : v;
      }
    }
  }
  return static_cast<double>(count);
}

void requireFrames(const SpikeVolume & volume)
{
  if (volume.frames <= 0) {
    throw std::invalid_argument("robustness indices need T > 0");
  }
}

}  // namespace

double mse(const Image & a, const Image & b)
{
  requireSameShape(a, b);
  if (a.empty()) {
    throw std::invalid_argument("mse of empty images");
  }
  std::vector<double> sq(a.size());
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double d = pa[i] - pb[i];
    sq[i] = d * d;
  }
  return pairwiseSum(sq) / static_cast<double>(sq.size());
}

double psnr(double mseValue)
{
  if (!(mseValue >= 0.0)) {
    throw std::domain_error("psnr needs a nonnegative mse");
  }
  if (mseValue == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(kPeakValue * kPeakValue / mseValue);
}

double ssim(const Image & a, const Image & b, const SsimParams & params)
{
  requireSameShape(a, b);
  if (a.height() < params.window || a.width() < params.window) {
    throw std::invalid_argument(
      "ssim needs images of at least " + std::to_string(params.window) + "x" +
      std::to_string(params.window));
  }
  const double c1 = (params.k1 * params.dynamicRange) * (params.k1 * params.dynamicRange);
  const double c2 = (params.k2 * params.dynamicRange) * (params.k2 * params.dynamicRange);
  const auto w = gaussianWindow1d(params.window, params.sigma);

  Image aa(a.height(), a.width());
  Image bb(a.height(), a.width());
  Image ab(a.height(), a.width());
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    aa.pixels()[i] = pa[i] * pa[i];
    bb.pixels()[i] = pb[i] * pb[i];
    ab.pixels()[i] = pa[i] * pb[i];
  }
  const Image muA = filterValid(a, w);
  const Image muB = filterValid(b, w);
  const Image eAA = filterValid(aa, w);
  const Image eBB = filterValid(bb, w);
  const Image eAB = filterValid(ab, w);

  std::vector<double> map(muA.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double ma = muA.pixels()[i];
    const double mb = muB.pixels()[i];
    const double va = eAA.pixels()[i] - ma * ma;
    const double vb = eBB.pixels()[i] - mb * mb;
    const double cov = eAB.pixels()[i] - ma * mb;
    map[i] = ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return pairwiseSum(map) / static_cast<double>(map.size());
}

MetricReport evaluateSequence(const std::vector<Image> & reconstructed,
                              const std::vector<Image> & reference)
{
  if (reconstructed.size() != reference.size()) {
    throw std::invalid_argument(
      "sequence lengths differ: " + std::to_string(reconstructed.size()) + " vs " +
      std::to_string(reference.size()));
  }
  if (reconstructed.empty()) {
    throw std::invalid_argument("cannot evaluate empty sequences");
  }
  MetricReport report;
  for (std::size_t t = 0; t < reference.size(); ++t) {
    const double m = mse(reconstructed[t], reference[t]);
    report.mse.push_back(m);
    report.psnr.push_back(psnr(m));
    report.ssim.push_back(ssim(reconstructed[t], reference[t]));
  }
  const double n = static_cast<double>(reference.size());
  report.meanMse = pairwiseSum(report.mse) / n;
  report.meanPsnr = pairwiseSum(report.psnr) / n;
  report.meanSsim = pairwiseSum(report.ssim) / n;
  return report;
}

double ass(const SpikeVolume & volume)
{
  requireFrames(volume);
  return totalSpikes(volume, 0, volume.numScales()) / volume.frames;
}

double asas(const SpikeVolume & volume)
{
  const double perStep = ass(volume);
  const double area = static_cast<double>(volume.height) * volume.width;
  if (volume.model == Model::FSM) {
    return perStep / area;
  }
  return perStep / (area * static_cast<double>(volume.numScales()));
}

double asass(const SpikeVolume & volume, double sigma)
{
  requireFrames(volume);
  if (volume.model == Model::FSM) {
    return ass(volume);
  }
  std::size_t s = 0;
  for (; s < volume.numScales(); ++s) {
    if (volume.scales[s] == sigma) {
      break;
    }
  }
  if (s == volume.numScales()) {
    throw std::invalid_argument("scale " + std::to_string(sigma) + " is not in the spike volume");
  }
  const double area = static_cast<double>(volume.height) * volume.width;
  return totalSpikes(volume, s, s + 1) / (static_cast<double>(volume.frames) * area);
}

RobustnessReport robustness(const SpikeVolume & volume)
{
  RobustnessReport r;
  r.i1 = ass(volume);
  r.i2 = asas(volume);
  for (double sigma : volume.scales) {
    r.i3.push_back(asass(volume, sigma));
  }
  r.frames = volume.frames;
  r.height = volume.height;
  r.width = volume.width;
  r.numScales = volume.numScales();
  r.k = volume.noiseEnabled ? volume.noise.k : 0.0;
  return r;
}

int responseTime(double intensity, double phi)
{
  if (!(intensity > 0.0) || !(phi > 0.0)) {
    throw std::domain_error("response time needs positive intensity and threshold");
  }
  return static_cast<int>(std::ceil(phi / intensity));
}

double quantizationErrorBound(double intensity, double phi)
{
  const int n = responseTime(intensity, phi);
  return std::abs(phi / static_cast<double>(n) - intensity);
}

}  // namespace rvsim
