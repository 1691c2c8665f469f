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

#ifndef RVSIM_FILTER_BANK_HPP
#define RVSIM_FILTER_BANK_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rvsim/image.hpp"

namespace rvsim
{
// Scales of the two Gaussians forming the DoG mother wavelet.
inline constexpr double kDogInnerScale = 1.0;
inline constexpr double kDogOuterScale = 1.5874;

// Scale that maps to a 3x3 template; anchors templateHalfWidth().
inline constexpr double kBaseTemplateScale = 0.24;

enum class KernelKind { Gaussian, DoG };

struct KernelSpec
{
  double scale = 1.0;  // sigma
  int centerRow = 0;   // x0
  int centerCol = 0;   // y0
  KernelKind kind = KernelKind::DoG;
  int halfWidth = 1;  // L_sigma

  void validate() const;
};

// Isotropic 2D Gaussian with standard deviation sigma centered at (x0, y0).
double gaussianKernelValue(int i, int j, int x0, int y0, double sigma);
double gaussianValue(double di, double dj, double sigma);

// DoG mother wavelet: G_1 - G_1.5874 centered at the origin.
double dogMotherValue(double i, double j);

// max(1, ceil(sigma / base)).
int templateHalfWidth(double sigma, double base = kBaseTemplateScale);

// Receptive-field template of (2L+1) x (2L+1) weights with sum |w| = 1.
class Kernel
{
public:
  // 1x1 kernel with weight 1 (the per-pixel sampling of FSM).
  static Kernel unit();

  const KernelSpec & spec() const { return spec_; }
  int halfWidth() const { return spec_.halfWidth; }
  int side() const { return 2 * spec_.halfWidth + 1; }

  // Weight at offset (di, dj) from the center, |di|, |dj| <= L.
  double atOffset(int di, int dj) const
  {
    const int L = spec_.halfWidth;
    return weights_[static_cast<std::size_t>((di + L) * side() + (dj + L))];
  }
  // Weight at absolute pixel (i, j); zero outside the template.
  double at(int i, int j) const;

  std::span<const double> weights() const { return weights_; }
  double l1Norm() const;
  double sum() const;

  friend bool operator==(const Kernel & a, const Kernel & b) { return a.weights_ == b.weights_; }

private:
  friend Kernel buildKernel(const KernelSpec & spec);

// Per-position factor 1 / sum|w| over the part of the template inside a
// height x width frame; exactly 1 where the template is not clipped.
Image borderRenormalization(const Kernel & kernel, int height, int width);
  Kernel(KernelSpec spec, std::vector<double> weights)
  : spec_(spec), weights_(std::move(weights))
  {
  }

  KernelSpec spec_;
  std::vector<double> weights_;
};

Kernel buildKernel(const KernelSpec & spec);

// Per-position factor 1 / sum|w| over the part of the template inside a
// height x width frame; exactly 1 where the template is not clipped.
Image borderRenormalization(const Kernel & kernel, int height, int width);

enum class BankKind { Unit, Gaussian, DoG };

enum class BankName {
  FSM,
  OneDoG,
  TwoDoG,
  ThreeDoG,
  FourDoG,
  OneGauss,
  TwoGauss,
  ThreeGauss,
  FourGauss
};

inline constexpr BankName kAllBankNames[] = {
  BankName::FSM,      BankName::OneDoG,   BankName::TwoDoG,
  BankName::ThreeDoG, BankName::FourDoG,  BankName::OneGauss,
  BankName::TwoGauss, BankName::ThreeGauss, BankName::FourGauss};

std::string_view toString(BankName name);
std::optional<BankName> parseBankName(std::string_view name);

// One centered kernel per scale; translating it gives the kernel at any center.
class FilterBank
{
public:
  // halfWidths, when given, overrides templateHalfWidth() per scale.
  static FilterBank make(
    BankKind kind, std::vector<double> scales, std::span<const int> halfWidths = {});

  BankKind kind() const { return kind_; }
  const std::vector<double> & scales() const { return scales_; }
  const std::vector<Kernel> & kernels() const { return kernels_; }
  const Kernel & kernel(std::size_t s) const { return kernels_.at(s); }
  std::size_t size() const { return scales_.size(); }

private:
  FilterBank(BankKind kind, std::vector<double> scales, std::vector<Kernel> kernels)
  : kind_(kind), scales_(std::move(scales)), kernels_(std::move(kernels))
  {
  }

  BankKind kind_;
  std::vector<double> scales_;
  std::vector<Kernel> kernels_;
};

FilterBank standardBank(BankName name);
FilterBank standardBank(std::string_view name);

}  // namespace rvsim

#endif  // RVSIM_FILTER_BANK_HPP
