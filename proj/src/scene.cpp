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

#include "rvsim/scene.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rvsim
{
namespace
{
constexpr std::array<std::pair<SceneKind, std::string_view>, 5> kSceneNames = {{
  {SceneKind::Constant, "constant"},
  {SceneKind::Gradient, "gradient"},
  {SceneKind::RotatingBar, "rotating_bar"},
  {SceneKind::MovingEdge, "moving_edge"},
  {SceneKind::Black, "black"},
}};

Image rotatingBarFrame(const SceneParams & p, int t)
{
  Image img(p.height, p.width, p.background);
  // Phase from t mod period keeps frames exactly periodic.
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(t % p.period) / p.period;
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  const double cy = 0.5 * (p.height - 1);
  const double cx = 0.5 * (p.width - 1);
  const double halfThickness = std::max(1.0, 0.06 * std::min(p.height, p.width));
  const double halfLength = 0.45 * std::min(p.height, p.width);
  for (int r = 0; r < p.height; ++r) {
    for (int c = 0; c < p.width; ++c) {
      const double dy = r - cy;
      const double dx = c - cx;
      const double along = dx * ca + dy * sa;
      const double across = -dx * sa + dy * ca;
      if (std::abs(across) <= halfThickness && std::abs(along) <= halfLength) {
        img(r, c) = p.intensity;
      }
    }
  }
  return img;
}

Image movingEdgeFrame(const SceneParams & p, int t)
{
  Image img(p.height, p.width, p.background);
  const int phase = t % p.period;
  const int edge = static_cast<int>(
    static_cast<long long>(phase) * (p.width + 1) / p.period);
  for (int r = 0; r < p.height; ++r) {
    for (int c = 0; c < std::min(edge, p.width); ++c) {
      img(r, c) = p.intensity;
    }
  }
  return img;
}

}  // namespace

void SceneStream::validate() const
{
  if (frames.empty()) {
    throw std::invalid_argument("scene has no frames");
  }
  if (height < 1 || width < 1) {
    throw std::invalid_argument("scene dimensions must be positive");
  }
  for (const Image & f : frames) {
    if (f.height() != height || f.width() != width) {
      throw std::invalid_argument("scene frames must all be " + std::to_string(height) + "x" +
                                  std::to_string(width));
    }
    for (double v : f.pixels()) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("scene brightness must be finite and nonnegative");
      }
    }
  }
}

std::string_view toString(SceneKind kind)
{
  for (const auto & [k, name] : kSceneNames) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

std::optional<SceneKind> parseSceneKind(std::string_view name)
{
  for (const auto & [k, text] : kSceneNames) {
    if (text == name) {
      return k;
    }
  }
  return std::nullopt;
}

SceneStream synthScene(SceneKind kind, const SceneParams & p)
{
  if (p.height < 1 || p.width < 1 || p.frames < 1) {
    throw std::invalid_argument("scene dimensions must be positive");
  }
  if (p.period < 1) {
    throw std::invalid_argument("scene period must be positive");
  }
  if (!(p.intensity >= 0.0) || !(p.background >= 0.0)) {
    throw std::invalid_argument("scene intensities must be nonnegative");
  }
  SceneStream scene;
  scene.height = p.height;
  scene.width = p.width;
  scene.frames.reserve(static_cast<std::size_t>(p.frames));
  switch (kind) {
    case SceneKind::Black:
    case SceneKind::Constant: {
      const Image frame(p.height, p.width, kind == SceneKind::Black ? 0.0 : p.intensity);
      scene.frames.assign(static_cast<std::size_t>(p.frames), frame);
      break;
    }
    case SceneKind::Gradient: {
      Image frame(p.height, p.width);
      for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
          const double a = p.width > 1 ? static_cast<double>(c) / (p.width - 1) : 0.0;
          frame(r, c) = p.background + a * (p.intensity - p.background);
        }
      }
      scene.frames.assign(static_cast<std::size_t>(p.frames), frame);
      break;
    }
    case SceneKind::RotatingBar:
      for (int t = 0; t < p.frames; ++t) {
        scene.frames.push_back(rotatingBarFrame(p, t));
      }
      break;
    case SceneKind::MovingEdge:
      for (int t = 0; t < p.frames; ++t) {
        scene.frames.push_back(movingEdgeFrame(p, t));
      }
      break;
  }
  return scene;
}

}  // namespace rvsim
