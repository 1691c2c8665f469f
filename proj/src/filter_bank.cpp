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

#include "rvsim/filter_bank.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rvsim/image.hpp"

namespace rvsim
{
namespace
{
constexpr std::array<double, 4> kStandardScales = {0.24, 0.348, 0.5046, 0.7317};

struct NamedBank
{
  BankName name;
  std::string_view text;
  BankKind kind;
  int numScales;
};

constexpr std::array<NamedBank, 9> kNamedBanks = {{
  {BankName::FSM, "FSM", BankKind::Unit, 1},
  {BankName::OneDoG, "OneDoG", BankKind::DoG, 1},
  {BankName::TwoDoG, "TwoDoG", BankKind::DoG, 2},
  {BankName::ThreeDoG, "ThreeDoG", BankKind::DoG, 3},
  {BankName::FourDoG, "FourDoG", BankKind::DoG, 4},
  {BankName::OneGauss, "OneGauss", BankKind::Gaussian, 1},
  {BankName::TwoGauss, "TwoGauss", BankKind::Gaussian, 2},
  {BankName::ThreeGauss, "ThreeGauss", BankKind::Gaussian, 3},
  {BankName::FourGauss, "FourGauss", BankKind::Gaussian, 4},
}};

const NamedBank & lookup(BankName name)
{
  for (const auto & b : kNamedBanks) {
    if (b.name == name) {
      return b;
    }
  }
  throw std::invalid_argument("unknown filter bank");
}

}  // namespace

void KernelSpec::validate() const
{
  if (!(scale > 0.0)) {
    throw std::invalid_argument("kernel scale must be positive");
  }
  if (halfWidth < 1) {
    throw std::invalid_argument("kernel template half-width must be >= 1");
  }
  if (kind != KernelKind::Gaussian && kind != KernelKind::DoG) {
    throw std::invalid_argument("unknown kernel kind");
  }
}

double gaussianValue(double di, double dj, double sigma)
{
  if (!(sigma > 0.0)) {
    throw std::domain_error("gaussian sigma must be positive");
  }
  const double s2 = sigma * sigma;
  return std::exp(-(di * di + dj * dj) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

double gaussianKernelValue(int i, int j, int x0, int y0, double sigma)
{
  return gaussianValue(static_cast<double>(i - x0), static_cast<double>(j - y0), sigma);
}

double dogMotherValue(double i, double j)
{
  return gaussianValue(i, j, kDogInnerScale) - gaussianValue(i, j, kDogOuterScale);
}

int templateHalfWidth(double sigma, double base)
{
  if (!(sigma > 0.0) || !(base > 0.0)) {
    throw std::domain_error("template scale must be positive");
  }
  return std::max(1, static_cast<int>(std::ceil(sigma / base)));
}

double Kernel::at(int i, int j) const
{
  const int di = i - spec_.centerRow;
  const int dj = j - spec_.centerCol;
  const int L = spec_.halfWidth;
  if (di < -L || di > L || dj < -L || dj > L) {
    return 0.0;
  }
  return atOffset(di, dj);
}

double Kernel::l1Norm() const
{
  std::vector<double> mags(weights_.size());
  std::transform(weights_.begin(), weights_.end(), mags.begin(), [](double w) {
    return std::abs(w);
  });
  return pairwiseSum(mags);
}

double Kernel::sum() const { return pairwiseSum(weights_); }

Kernel Kernel::unit()
{
  KernelSpec spec;
  spec.scale = 1.0;
  spec.kind = KernelKind::DoG;
  spec.halfWidth = 0;
  return Kernel(spec, {1.0});
}

Kernel buildKernel(const KernelSpec & spec)
{
  spec.validate();
  const int L = spec.halfWidth;
  const int side = 2 * L + 1;
  std::vector<double> raw(static_cast<std::size_t>(side * side));
  // Offsets are integer, so the template only depends on (i - x0, j - y0).
  for (int di = -L; di <= L; ++di) {
    for (int dj = -L; dj <= L; ++dj) {
      const double u = static_cast<double>(di) / spec.scale;
      const double v = static_cast<double>(dj) / spec.scale;
      raw[static_cast<std::size_t>((di + L) * side + (dj + L))] =
        spec.kind == KernelKind::DoG ? dogMotherValue(u, v) : gaussianValue(u, v, 1.0);
    }
  }
  std::vector<double> mags(raw.size());
  std::transform(raw.begin(), raw.end(), mags.begin(), [](double w) { return std::abs(w); });
  const double norm = pairwiseSum(mags);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::runtime_error("degenerate kernel template: all weights vanish");
  }
  for (double & w : raw) {
    w /= norm;
  }
  return Kernel(spec, std::move(raw));
}

Image borderRenormalization(const Kernel & kernel, int height, int width)
{
  const int L = kernel.halfWidth();
  Image scale(height, width, 1.0);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (r >= L && r + L < height && c >= L && c + L < width) {
        continue;
      }
      std::vector<double> mags;
      for (int di = -L; di <= L; ++di) {
        for (int dj = -L; dj <= L; ++dj) {
          const int i = r + di;
          const int j = c + dj;
          if (i >= 0 && i < height && j >= 0 && j < width) {
            mags.push_back(std::abs(kernel.atOffset(di, dj)));
          }
        }
      }
      const double norm = pairwiseSum(mags);
      if (!(norm > 0.0)) {
        throw std::runtime_error("clipped kernel template vanishes at the frame border");
      }
      scale(r, c) = 1.0 / norm;
    }
  }
  return scale;
}

std::string_view toString(BankName name) { return lookup(name).text; }

std::optional<BankName> parseBankName(std::string_view name)
{
  for (const auto & b : kNamedBanks) {
    if (b.text == name) {
      return b.name;
    }
  }
  return std::nullopt;
}

FilterBank FilterBank::make(BankKind kind, std::vector<double> scales, std::span<const int> halfWidths)
{
  if (scales.empty()) {
    throw std::invalid_argument("filter bank needs at least one scale");
  }
  for (std::size_t s = 1; s < scales.size(); ++s) {
    if (!(scales[s] > scales[s - 1])) {
      throw std::invalid_argument("filter bank scales must be strictly increasing");
    }
  }
  if (!halfWidths.empty() && halfWidths.size() != scales.size()) {
    throw std::invalid_argument("template half-width override must give one value per scale");
  }
  std::vector<Kernel> kernels;
  if (kind == BankKind::Unit) {
    if (scales.size() != 1) {
      throw std::invalid_argument("unit bank has exactly one scale");
    }
    kernels.push_back(Kernel::unit());
  } else {
    for (std::size_t s = 0; s < scales.size(); ++s) {
      KernelSpec spec;
      spec.scale = scales[s];
      spec.kind = kind == BankKind::DoG ? KernelKind::DoG : KernelKind::Gaussian;
      spec.halfWidth = halfWidths.empty() ? templateHalfWidth(scales[s]) : halfWidths[s];
      kernels.push_back(buildKernel(spec));
    }
  }
  return FilterBank(kind, std::move(scales), std::move(kernels));
}

FilterBank standardBank(BankName name)
{
  const NamedBank & b = lookup(name);
  if (b.kind == BankKind::Unit) {
    return FilterBank::make(BankKind::Unit, {1.0});
  }
  return FilterBank::make(
    b.kind, std::vector<double>(kStandardScales.begin(), kStandardScales.begin() + b.numScales));
}

FilterBank standardBank(std::string_view name)
{
  const auto parsed = parseBankName(name);
  if (!parsed) {
    throw std::invalid_argument("unknown filter bank name: " + std::string(name));
  }
  return standardBank(*parsed);
}

}  // namespace rvsim
