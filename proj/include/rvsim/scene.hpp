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

#ifndef RVSIM_SCENE_HPP
#define RVSIM_SCENE_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "rvsim/image.hpp"

namespace rvsim
{
// Brightness frames in [0, 255] digital units, one per sampling step.
struct SceneStream
{
  int height = 0;
  int width = 0;
  std::vector<Image> frames;

  int numFrames() const { return static_cast<int>(frames.size()); }
  // Throws if frames are empty, mis-shaped or contain negative values.
  void validate() const;
};

enum class SceneKind { Constant, Gradient, RotatingBar, MovingEdge, Black };

std::string_view toString(SceneKind kind);
std::optional<SceneKind> parseSceneKind(std::string_view name);

struct SceneParams
{
  int height = 100;
  int width = 100;
  int frames = 1000;
  double intensity = 100.0;  // constant level, or foreground for bar/edge
  double background = 0.0;
  int period = 100;  // steps per revolution (bar) or per sweep (edge)
};

SceneStream synthScene(SceneKind kind, const SceneParams & params);

}  // namespace rvsim

#endif  // RVSIM_SCENE_HPP
