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

#include "rvsim/image.hpp"

#include <cmath>
#include <stdexcept>

namespace rvsim
{
Image::Image(int height, int width, double fill) : height_(height), width_(width)
{
  if (height < 0 || width < 0) {
    throw std::invalid_argument("image dimensions must be nonnegative");
  }
  data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), fill);
}

double pairwiseSum(std::span<const double> values)
{
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwiseSum(values.first(half)) + pairwiseSum(values.subspan(half));
}

double mean(const Image & img)
{
  if (img.empty()) {
    return 0.0;
  }
  return pairwiseSum(img.pixels()) / static_cast<double>(img.size());
}

double stddev(const Image & img)
{
  if (img.empty()) {
    return 0.0;
  }
  const double m = mean(img);
  std::vector<double> sq(img.size());
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    sq[i] = (px[i] - m) * (px[i] - m);
  }
  return std::sqrt(pairwiseSum(sq) / static_cast<double>(img.size()));
}

}  // namespace rvsim
