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

#ifndef RVSIM_IMAGE_HPP
#define RVSIM_IMAGE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace rvsim
{
// Dense row-major grid of brightness values in digital units.
class Image
{
public:
  Image() = default;
  Image(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double & operator()(int row, int col) { return data_[index(row, col)]; }
  double operator()(int row, int col) const { return data_[index(row, col)]; }

  std::span<double> pixels() { return data_; }
  std::span<const double> pixels() const { return data_; }
  std::span<double> row(int r) { return {data_.data() + index(r, 0), static_cast<std::size_t>(width_)}; }
  std::span<const double> row(int r) const
  {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(width_)};
  }

  bool sameShape(const Image & other) const
  {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image &, const Image &) = default;

private:
  std::size_t index(int row, int col) const
  {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Pairwise (cascade) summation; result depends only on the input order.
double pairwiseSum(std::span<const double> values);

double mean(const Image & img);
// Population standard deviation.
double stddev(const Image & img);

}  // namespace rvsim

#endif  // RVSIM_IMAGE_HPP
