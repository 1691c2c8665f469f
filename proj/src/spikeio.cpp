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

#include "rvsim/spikeio.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace rvsim
{
namespace
{
class ByteWriter
{
public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char * p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  const std::vector<std::uint8_t> & bytes() const { return bytes_; }

private:
  void le(std::uint64_t v, int n)
  {
    for (int i = 0; i < n; ++i) {
      bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  std::vector<std::uint8_t> bytes_;
};

class ByteReader
{
public:
  explicit ByteReader(std::istream & in) : in_(in) {}

  void raw(char * p, std::size_t n, const char * what)
  {
    in_.read(p, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw SpikeIoError(
        SpikeIoError::Code::Truncated, std::string("spike stream truncated while reading ") + what);
    }
  }
  std::uint64_t le(int n, const char * what)
  {
    std::array<unsigned char, 8> b{};
    raw(reinterpret_cast<char *>(b.data()), static_cast<std::size_t>(n), what);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    }
    return v;
  }
  std::uint8_t u8(const char * what) { return static_cast<std::uint8_t>(le(1, what)); }
  std::uint16_t u16(const char * what) { return static_cast<std::uint16_t>(le(2, what)); }
  std::uint32_t u32(const char * what) { return static_cast<std::uint32_t>(le(4, what)); }
  std::uint64_t u64(const char * what) { return le(8, what); }
  double f64(const char * what) { return std::bit_cast<double>(le(8, what)); }

private:
  std::istream & in_;
};

std::uint8_t encodeSpike(std::int8_t v)
{
  switch (v) {
    case 0:
      return 0b00;
    case 1:
      return 0b01;
    case -1:
      return 0b10;
    default:
      throw std::invalid_argument("spike value " + std::to_string(v) + " is not ternary");
  }
}

}  // namespace

SpikeFileHeader headerOf(const SpikeVolume & volume)
{
  SpikeFileHeader h;
  h.model = volume.model;
  h.height = static_cast<std::uint32_t>(volume.height);
  h.width = static_cast<std::uint32_t>(volume.width);
  h.frames = static_cast<std::uint32_t>(volume.frames);
  h.scales = volume.scales;
  h.thresholds = volume.thresholds;
  h.noiseEnabled = volume.noiseEnabled;
  h.noise = volume.noise;
  h.seed = volume.seed;
  return h;
}

std::vector<std::uint8_t> packPlane(std::span<const std::int8_t> spikes)
{
  std::vector<std::uint8_t> out((spikes.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    const int shift = 6 - 2 * static_cast<int>(i % 4);
    out[i / 4] |= static_cast<std::uint8_t>(encodeSpike(spikes[i]) << shift);
  }
  return out;
}

void unpackPlane(std::span<const std::uint8_t> bytes, std::span<std::int8_t> spikes)
{
  if (bytes.size() != (spikes.size() + 3) / 4) {
    throw SpikeIoError(SpikeIoError::Code::Truncated, "packed plane has the wrong byte count");
  }
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    const int shift = 6 - 2 * static_cast<int>(i % 4);
    const int code = (bytes[i / 4] >> shift) & 0b11;
    if (code == 0b11) {
      throw SpikeIoError(
        SpikeIoError::Code::InvalidCode,
        "invalid spike code 11 at plane position " + std::to_string(i));
    }
    spikes[i] = code == 0b01 ? 1 : (code == 0b10 ? -1 : 0);
  }
}

void writeHeader(const SpikeFileHeader & h, std::ostream & out)
{
  if (h.scales.empty() || h.scales.size() > 0xFFFF || h.thresholds.size() != h.scales.size()) {
    throw SpikeIoError(SpikeIoError::Code::BadHeader, "header needs 1..65535 scales and thresholds");
  }
  ByteWriter w;
  w.raw(kSpikeMagic, 4);
  w.u16(kSpikeVersion);
  w.u8(static_cast<std::uint8_t>(h.model));
  w.u32(h.height);
  w.u32(h.width);
  w.u32(h.frames);
  w.u16(static_cast<std::uint16_t>(h.scales.size()));
  for (double s : h.scales) {
    w.f64(s);
  }
  for (double phi : h.thresholds) {
    w.f64(phi);
  }
  w.u8(h.noiseEnabled ? 1 : 0);
  for (double v : {h.noise.e1, h.noise.e2, h.noise.e3, h.noise.beta1, h.noise.beta2,
                   h.noise.beta3, h.noise.k}) {
    w.f64(v);
  }
  w.u64(h.seed);
  out.write(reinterpret_cast<const char *>(w.bytes().data()),
            static_cast<std::streamsize>(w.bytes().size()));
  if (!out) {
    throw SpikeIoError(SpikeIoError::Code::Io, "failed to write spike header");
  }
}

SpikeFileHeader readHeader(std::istream & in)
{
  ByteReader r(in);
  char magic[4];
  r.raw(magic, 4, "magic");
  if (std::memcmp(magic, kSpikeMagic, 4) != 0) {
    throw SpikeIoError(SpikeIoError::Code::BadMagic, "not a spike file: magic is not \"RVS1\"");
  }
  const std::uint16_t version = r.u16("version");
  if (version != kSpikeVersion) {
    throw SpikeIoError(
      SpikeIoError::Code::BadVersion,
      "unsupported spike file version " + std::to_string(version) + " (expected 1)");
  }
  SpikeFileHeader h;
  const std::uint8_t model = r.u8("model");
  if (model > 2) {
    throw SpikeIoError(SpikeIoError::Code::BadHeader, "unknown model code " + std::to_string(model));
  }
  h.model = static_cast<Model>(model);
  h.height = r.u32("height");
  h.width = r.u32("width");
  h.frames = r.u32("frame count");
  const std::uint16_t n = r.u16("scale count");
  if (n == 0) {
    throw SpikeIoError(SpikeIoError::Code::BadHeader, "spike header has zero scales");
  }
  if (h.model == Model::FSM && n != 1) {
    throw SpikeIoError(SpikeIoError::Code::BadHeader, "FSM spike header must have one scale");
  }
  for (int i = 0; i < n; ++i) {
    h.scales.push_back(r.f64("scales"));
  }
  for (int i = 0; i < n; ++i) {
    h.thresholds.push_back(r.f64("thresholds"));
  }
  const std::uint8_t noise = r.u8("noise flag");
  if (noise > 1) {
    throw SpikeIoError(SpikeIoError::Code::BadHeader, "noise flag must be 0 or 1");
  }
  h.noiseEnabled = noise == 1;
  h.noise.e1 = r.f64("noise e1");
  h.noise.e2 = r.f64("noise e2");
  h.noise.e3 = r.f64("noise e3");
  h.noise.beta1 = r.f64("noise beta1");
  h.noise.beta2 = r.f64("noise beta2");
  h.noise.beta3 = r.f64("noise beta3");
  h.noise.k = r.f64("noise k");
  h.seed = r.u64("seed");
  return h;
}

std::size_t encodeVolume(const SpikeVolume & volume, std::ostream & out)
{
  volume.validate();
  const SpikeFileHeader h = headerOf(volume);
  writeHeader(h, out);
  std::size_t written = SpikeFileHeader::encodedSize(h.scales.size());
  for (int t = 0; t < volume.frames; ++t) {
    for (std::size_t s = 0; s < volume.numScales(); ++s) {
      const auto bytes = packPlane(volume.plane(t, s));
      out.write(reinterpret_cast<const char *>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
      written += bytes.size();
    }
  }
  if (!out) {
    throw SpikeIoError(SpikeIoError::Code::Io, "failed to write spike payload");
  }
  return written;
}

SpikeReader::SpikeReader(std::istream & in) : in_(in), header_(readHeader(in))
{
  planesLeft_ = static_cast<std::uint64_t>(header_.frames) * header_.scales.size();
  buffer_.resize(header_.planeBytes());
}

bool SpikeReader::nextPlane(std::vector<std::int8_t> & spikes)
{
  if (planesLeft_ == 0) {
    return false;
  }
  ByteReader r(in_);
  r.raw(reinterpret_cast<char *>(buffer_.data()), buffer_.size(), "spike payload");
  spikes.resize(static_cast<std::size_t>(header_.height) * header_.width);
  unpackPlane(buffer_, spikes);
  --planesLeft_;
  return true;
}

SpikeVolume decodeVolume(std::istream & in)
{
  SpikeReader reader(in);
  const SpikeFileHeader & h = reader.header();
  const std::uint64_t payload =
    static_cast<std::uint64_t>(h.frames) * h.scales.size() * h.planeBytes();
  // Reject truncated seekable streams before allocating the volume.
  const auto here = in.tellg();
  if (here != std::streampos(-1)) {
    in.seekg(0, std::ios::end);
    const auto end = in.tellg();
    in.seekg(here);
    if (end != std::streampos(-1) && static_cast<std::uint64_t>(end - here) < payload) {
      throw SpikeIoError(
        SpikeIoError::Code::Truncated,
        "spike payload truncated: header announces " + std::to_string(payload) + " bytes, " +
          std::to_string(static_cast<std::uint64_t>(end - here)) + " present");
    }
  }
  SpikeVolume v;
  v.model = h.model;
  v.scales = h.scales;
  v.thresholds = h.thresholds;
  v.frames = static_cast<int>(h.frames);
  v.height = static_cast<int>(h.height);
  v.width = static_cast<int>(h.width);
  v.noiseEnabled = h.noiseEnabled;
  v.noise = h.noise;
  v.seed = h.seed;
  v.spikes.resize(static_cast<std::size_t>(v.frames) * v.numScales() * v.planeSize());
  std::vector<std::int8_t> plane;
  std::size_t offset = 0;
  while (reader.nextPlane(plane)) {
    if (v.model == Model::FSM &&
        std::any_of(plane.begin(), plane.end(), [](std::int8_t s) { return s < 0; })) {
      throw SpikeIoError(SpikeIoError::Code::InvalidCode, "FSM spike stream contains a -1 spike");
    }
    std::copy(plane.begin(), plane.end(), v.spikes.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += plane.size();
  }
  return v;
}

void writeVolumeFile(const SpikeVolume & volume, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw SpikeIoError(SpikeIoError::Code::Io, "cannot open " + path.string() + " for writing");
  }
  encodeVolume(volume, out);
}

SpikeVolume readVolumeFile(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SpikeIoError(SpikeIoError::Code::Io, "cannot open " + path.string());
  }
  return decodeVolume(in);
}

void writePgm(const Image & img, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> bytes(img.size());
  auto px = img.pixels();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<unsigned char>(std::clamp(std::lround(px[i]), 0L, 255L));
  }
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("failed to write " + path.string());
  }
}

Image readPgm(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  // Header tokens may be separated by whitespace and '#' comments.
  auto token = [&]() {
    std::string tok;
    char c;
    while (in.get(c)) {
      if (c == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!tok.empty()) {
          break;
        }
        continue;
      }
      tok.push_back(c);
    }
    return tok;
  };
  if (token() != "P5") {
    throw std::runtime_error(path.string() + " is not a binary PGM (P5) file");
  }
  int width = 0;
  int height = 0;
  int maxval = 0;
  try {
    width = std::stoi(token());
    height = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception &) {
    throw std::runtime_error(path.string() + ": malformed PGM header");
  }
  if (width < 1 || height < 1 || maxval != 255) {
    throw std::runtime_error(path.string() + ": only 8-bit PGM with maxval 255 is supported");
  }
  std::vector<unsigned char> bytes(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw std::runtime_error(path.string() + ": truncated PGM pixel data");
  }
  Image img(height, width);
  auto px = img.pixels();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    px[i] = bytes[i];
  }
  return img;
}

SceneStream readScene(const std::filesystem::path & dir)
{
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("scene directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw std::runtime_error("scene directory " + dir.string() + " contains no .pgm frames");
  }
  std::sort(files.begin(), files.end(), [](const auto & a, const auto & b) {
    return a.filename().string() < b.filename().string();
  });
  SceneStream scene;
  for (const auto & f : files) {
    Image img = readPgm(f);
    if (scene.frames.empty()) {
      scene.height = img.height();
      scene.width = img.width();
    } else if (img.height() != scene.height || img.width() != scene.width) {
      throw std::runtime_error(
        "frame " + f.filename().string() + " is " + std::to_string(img.height()) + "x" +
        std::to_string(img.width()) + ", expected " + std::to_string(scene.height) + "x" +
        std::to_string(scene.width));
    }
    scene.frames.push_back(std::move(img));
  }
  return scene;
}

void writeImages(const std::vector<Image> & frames, const std::filesystem::path & dir,
                 const std::string & prefix)
{
  std::filesystem::create_directories(dir);
  const int digits = std::max<int>(6, static_cast<int>(std::to_string(frames.size()).size()));
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::ostringstream name;
    name << prefix << std::setw(digits) << std::setfill('0') << i << ".pgm";
    writePgm(frames[i], dir / name.str());
  }
}

}  // namespace rvsim
