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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rvsim/spikeio.hpp"

using namespace rvsim;
namespace fs = std::filesystem;

namespace
{
fs::path scratchDir(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("rvsim_test_spikeio_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SpikeVolume tinyVolume(std::vector<std::int8_t> spikes, Model model = Model::RVSM_DoG)
{
  SpikeVolume v;
  v.model = model;
  v.scales = {model == Model::FSM ? 1.0 : 0.24};
  v.thresholds = {400.0};
  v.frames = 1;
  v.height = 2;
  v.width = 2;
  v.spikes = std::move(spikes);
  return v;
}

std::string encode(const SpikeVolume & v)
{
  std::ostringstream out(std::ios::binary);
  encodeVolume(v, out);
  return out.str();
}

SpikeVolume decode(const std::string & bytes)
{
  std::istringstream in(bytes, std::ios::binary);
  return decodeVolume(in);
}

SpikeIoError::Code decodeError(const std::string & bytes)
{
  try {
    decode(bytes);
  } catch (const SpikeIoError & e) {
    return e.code();
  }
  FAIL("decode accepted a malformed stream");
  return SpikeIoError::Code::Io;
}
}  // namespace

TEST_CASE("hand-packed planes")
{
  CHECK(packPlane(std::vector<std::int8_t>{0, 0, 0, 0}) == std::vector<std::uint8_t>{0x00});
  CHECK(packPlane(std::vector<std::int8_t>{1, -1, 0, 0}) == std::vector<std::uint8_t>{0x60});
  CHECK(packPlane(std::vector<std::int8_t>{0, 0, 0, 1, -1}) ==
        std::vector<std::uint8_t>{0x01, 0x80});

  const std::string zero = encode(tinyVolume({0, 0, 0, 0}));
  REQUIRE(zero.size() == SpikeFileHeader::encodedSize(1) + 1);
  CHECK(static_cast<unsigned char>(zero.back()) == 0x00);
  const std::string mixed = encode(tinyVolume({1, -1, 0, 0}));
  CHECK(static_cast<unsigned char>(mixed.back()) == 0x60);
  CHECK(decode(mixed).spikes == std::vector<std::int8_t>{1, -1, 0, 0});
}

TEST_CASE("header layout")
{
  SpikeVolume v = tinyVolume({0, 0, 0, 0});
  v.seed = 0x0102030405060708ull;
  const std::string b = encode(v);
  CHECK(b.substr(0, 4) == "RVS1");
  CHECK(static_cast<unsigned char>(b[4]) == 1);
  CHECK(static_cast<unsigned char>(b[5]) == 0);
  CHECK(static_cast<unsigned char>(b[6]) == 1);  // model
  CHECK(static_cast<unsigned char>(b[7]) == 2);  // height, little-endian
  CHECK(static_cast<unsigned char>(b[19]) == 1);  // n_scales
  const std::size_t seedAt = SpikeFileHeader::encodedSize(1) - 8;
  CHECK(static_cast<unsigned char>(b[seedAt]) == 0x08);
  CHECK(static_cast<unsigned char>(b[seedAt + 7]) == 0x01);
}

TEST_CASE("random volumes round-trip")
{
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Model model = static_cast<Model>(rng() % 3);
    const std::size_t scales = model == Model::FSM ? 1 : 1 + rng() % 4;
    const SpikeVolume v =
      oracle::randomVolume(rng, model, 1 + rng() % 5, 1 + rng() % 9, 1 + rng() % 9, scales);
    const std::string bytes = encode(v);
    const std::size_t expected = SpikeFileHeader::encodedSize(scales) +
                                 v.frames * scales * ((v.height * v.width + 3) / 4);
    CHECK(bytes.size() == expected);
    CHECK(decode(bytes) == v);
  }
}

TEST_CASE("streaming reader")
{
  std::mt19937_64 rng(7);
  const SpikeVolume v = oracle::randomVolume(rng, Model::RVSM_Gauss, 3, 5, 3, 2);
  std::istringstream in(encode(v), std::ios::binary);
  SpikeReader reader(in);
  CHECK(reader.header().frames == 3);
  std::vector<std::int8_t> plane;
  int count = 0;
  while (reader.nextPlane(plane)) {
    const auto expected = v.plane(count / 2, count % 2);
    CHECK(std::equal(plane.begin(), plane.end(), expected.begin(), expected.end()));
    ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("malformed streams")
{
  const std::string good = encode(tinyVolume({1, 0, -1, 0}));
  std::string bad = good;
  bad[0] = 'X';
  CHECK(decodeError(bad) == SpikeIoError::Code::BadMagic);
  bad = good;
  bad[4] = 2;
  CHECK(decodeError(bad) == SpikeIoError::Code::BadVersion);
  bad = good;
  bad.back() = static_cast<char>(0xC0);
  CHECK(decodeError(bad) == SpikeIoError::Code::InvalidCode);
  CHECK(decodeError(good.substr(0, good.size() - 1)) == SpikeIoError::Code::Truncated);
  CHECK(decodeError(good.substr(0, 30)) == SpikeIoError::Code::Truncated);
  bad = good;
  bad[6] = 9;
  CHECK(decodeError(bad) == SpikeIoError::Code::BadHeader);
  // FSM volumes cannot hold negative spikes.
  bad = good;
  bad[6] = 0;
  CHECK(decodeError(bad) != SpikeIoError::Code::Io);
  CHECK_THROWS(encode(tinyVolume({0, 0, -1, 0}, Model::FSM)));
}

TEST_CASE("file round trips")
{
  const fs::path dir = scratchDir("files");
  std::mt19937_64 rng(3);
  const SpikeVolume v = oracle::randomVolume(rng, Model::RVSM_DoG, 4, 6, 7, 3);
  writeVolumeFile(v, dir / "v.spk");
  CHECK(readVolumeFile(dir / "v.spk") == v);
  CHECK_THROWS(readVolumeFile(dir / "missing.spk"));

  Image img(5, 4);
  for (int i = 0; i < 20; ++i) img.pixels()[i] = i * 13;
  writePgm(img, dir / "a.pgm");
  CHECK(readPgm(dir / "a.pgm") == img);
}

TEST_CASE("scene directories")
{
  const fs::path dir = scratchDir("scene");
  CHECK_THROWS(readScene(dir));
  CHECK_THROWS(readScene(dir / "nope"));
  for (int k : {2, 0, 1}) {
    char name[16];
    std::snprintf(name, sizeof name, "f_%04d.pgm", k);
    writePgm(Image(3, 3, 10.0 * k), dir / name);
  }
  const SceneStream s = readScene(dir);
  REQUIRE(s.numFrames() == 3);
  for (int k = 0; k < 3; ++k) CHECK(s.frames[k](1, 1) == 10.0 * k);

  writePgm(Image(4, 3, 0.0), dir / "f_0003.pgm");
  CHECK_THROWS(readScene(dir));

  const fs::path out = scratchDir("images");
  writeImages({Image(2, 2, 1.0), Image(2, 2, 2.0)}, out);
  CHECK(fs::exists(out / "frame_000000.pgm"));
  CHECK(fs::exists(out / "frame_000001.pgm"));
  CHECK(readScene(out).frames[1] == Image(2, 2, 2.0));
}
