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

#ifndef RVSIM_SPIKEIO_HPP
#define RVSIM_SPIKEIO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvsim/image.hpp"
#include "rvsim/scene.hpp"
#include "rvsim/spike_volume.hpp"

namespace rvsim
{
// .spk layout (all little-endian):
//   "RVS1" | u16 version=1 | u8 model | u32 H | u32 W | u32 T | u16 n_scales
//   | f64 scales[n] | f64 thresholds[n] | u8 noise_enabled
//   | f64 e1 e2 e3 beta1 beta2 beta3 k | u64 seed
// followed by T * n_scales planes of H*W spikes, 2 bits each, first pixel in
// the most significant pair (00 -> 0, 01 -> +1, 10 -> -1, 11 invalid), each
// plane padded to a whole byte.
inline constexpr char kSpikeMagic[4] = {'R', 'V', 'S', '1'};
inline constexpr std::uint16_t kSpikeVersion = 1;

struct SpikeFileHeader
{
  Model model = Model::FSM;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t frames = 0;
  std::vector<double> scales;
  std::vector<double> thresholds;
  bool noiseEnabled = false;
  NoiseConfig noise;
  std::uint64_t seed = 0;

  static std::size_t encodedSize(std::size_t numScales) { return 86 + 16 * numScales; }
  std::size_t planeBytes() const
  {
    return (static_cast<std::size_t>(height) * width + 3) / 4;
  }
};

class SpikeIoError : public std::runtime_error
{
public:
  enum class Code { BadMagic, BadVersion, BadHeader, InvalidCode, Truncated, Io };

  SpikeIoError(Code code, const std::string & what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

private:
  Code code_;
};

SpikeFileHeader headerOf(const SpikeVolume & volume);

// Packs one plane of ternary spikes.
std::vector<std::uint8_t> packPlane(std::span<const std::int8_t> spikes);
// Inverse of packPlane; throws SpikeIoError(InvalidCode) on code 11.
void unpackPlane(std::span<const std::uint8_t> bytes, std::span<std::int8_t> spikes);

void writeHeader(const SpikeFileHeader & header, std::ostream & out);
SpikeFileHeader readHeader(std::istream & in);

// Writes header and payload; returns bytes written.
std::size_t encodeVolume(const SpikeVolume & volume, std::ostream & out);
SpikeVolume decodeVolume(std::istream & in);

// Streaming reader, one (t, scale) plane at a time.
class SpikeReader
{
public:
  explicit SpikeReader(std::istream & in);

  const SpikeFileHeader & header() const { return header_; }
  // Reads the next plane into spikes (resized to H*W); false after the last one.
  bool nextPlane(std::vector<std::int8_t> & spikes);

private:
  std::istream & in_;
  SpikeFileHeader header_;
  std::uint64_t planesLeft_;
  std::vector<std::uint8_t> buffer_;
};

void writeVolumeFile(const SpikeVolume & volume, const std::filesystem::path & path);
SpikeVolume readVolumeFile(const std::filesystem::path & path);

// 8-bit grayscale binary PGM (P5). Values are rounded and clamped to [0, 255].
void writePgm(const Image & img, const std::filesystem::path & path);
Image readPgm(const std::filesystem::path & path);

// Reads every .pgm file in dir in lexicographic filename order.
SceneStream readScene(const std::filesystem::path & dir);
// Writes frames as <prefix><zero-padded index>.pgm; creates dir if needed.
void writeImages(const std::vector<Image> & frames, const std::filesystem::path & dir,
                 const std::string & prefix = "frame_");

}  // namespace rvsim

#endif  // RVSIM_SPIKEIO_HPP
