// Copyright 2026 The tcctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------

#include "tcctl/frame_model.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

constexpr std::string_view kY4mMagic = "YUV4MPEG2";
constexpr std::string_view kY4mFrameMarker = "FRAME";

int64_t FrameBytes420(int width, int height) {
  const int64_t luma = static_cast<int64_t>(width) * height;
  const int64_t chroma =
      static_cast<int64_t>((width + 1) / 2) * ((height + 1) / 2);
  return luma + 2 * chroma;
}

// In-place 8-point Walsh-Hadamard butterfly over elements spaced `stride`.
void Hadamard8(int32_t* v, int stride) {
  for (int half = 1; half < kHadamardSize; half <<= 1) {
    for (int i = 0; i < kHadamardSize; i += 2 * half) {
      for (int j = i; j < i + half; ++j) {
        const int32_t a = v[j * stride];
        const int32_t b = v[(j + half) * stride];
        v[j * stride] = a + b;
        v[(j + half) * stride] = a - b;
      }
    }
  }
}

// Parses the Y4M stream header line. Only 8-bit 4:2:0 streams are accepted.
void ParseY4mHeader(const std::string& line, const std::string& path,
                    VideoInfo& info) {
  std::istringstream tokens(line);
  std::string token;
  tokens >> token;  // magic
  int width = 0;
  int height = 0;
  while (tokens >> token) {
    const char tag = token[0];
    const std::string value = token.substr(1);
    if (tag == 'W') {
      width = std::atoi(value.c_str());
    } else if (tag == 'H') {
      height = std::atoi(value.c_str());
    } else if (tag == 'C') {
      const bool is_420 = value == "420" || value == "420jpeg" ||
                          value == "420paldv" || value == "420mpeg2";
      if (!is_420) {
        throw FormatError(path + ": unsupported Y4M colorspace 'C" + value +
                          "' (only 8-bit 4:2:0 is accepted)");
      }
    }
  }
  if (width <= 0 || height <= 0) {
    throw FormatError(path + ": Y4M header lacks a valid W/H");
  }
  info.width = width;
  info.height = height;
}

}  // namespace

FramePlane::FramePlane(int width, int height)
    : FramePlane(width, height,
                 std::vector<uint8_t>(static_cast<size_t>(width > 0 ? width : 0) *
                                      (height > 0 ? height : 0))) {}

FramePlane::FramePlane(int width, int height, std::vector<uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width <= 0 || height <= 0) {
    throw ArgumentError("frame dimensions must be positive, got " +
                        std::to_string(width) + "x" + std::to_string(height));
  }
  if (samples_.size() != static_cast<size_t>(width) * height) {
    throw ArgumentError("sample count does not match frame dimensions");
  }
}

VideoInfo ProbeVideo(const std::string& path, int width, int height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::error_code ec;
  const int64_t file_size =
      static_cast<int64_t>(std::filesystem::file_size(path, ec));
  if (ec) throw IoError("cannot stat '" + path + "': " + ec.message());

  VideoInfo info;
  char magic[kY4mMagic.size()] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() == static_cast<std::streamsize>(sizeof(magic)) &&
      std::string_view(magic, sizeof(magic)) == kY4mMagic) {
    in.seekg(0);
    std::string header;
    std::getline(in, header);
    if (!in) throw FormatError(path + ": unterminated Y4M header");
    ParseY4mHeader(header, path, info);
    info.is_y4m = true;
    info.header_bytes = static_cast<int64_t>(header.size()) + 1;

    // Walk frame markers; each may carry its own parameters.
    const int64_t payload = FrameBytes420(info.width, info.height);
    int64_t pos = info.header_bytes;
    std::string marker;
    while (pos < file_size) {
      in.seekg(pos);
      if (!std::getline(in, marker) ||
          marker.compare(0, kY4mFrameMarker.size(), kY4mFrameMarker) != 0) {
        info.trailing_bytes = file_size - pos;
        break;
      }
      const int64_t data_start = pos + static_cast<int64_t>(marker.size()) + 1;
      if (data_start + payload > file_size) {
        info.trailing_bytes = file_size - pos;
        break;
      }
      ++info.frame_count;
      pos = data_start + payload;
    }
    return info;
  }

  if (width <= 0 || height <= 0) {
    throw ArgumentError("raw input '" + path +
                        "' needs a positive --width and --height");
  }
  info.width = width;
  info.height = height;
  const int64_t frame_bytes = FrameBytes420(width, height);
  info.frame_count = file_size / frame_bytes;
  info.trailing_bytes = file_size % frame_bytes;
  return info;
}

FramePlane LoadFrame(const std::string& path, int width, int height,
                     int64_t frame_index) {
  const VideoInfo info = ProbeVideo(path, width, height);
  if (frame_index < 0) {
    throw RangeError("negative frame index " + std::to_string(frame_index));
  }
  if (frame_index >= info.frame_count) {
    if (frame_index == info.frame_count && info.trailing_bytes > 0) {
      throw TruncationError("'" + path + "' ends inside frame " +
                            std::to_string(frame_index));
    }
    throw RangeError("frame " + std::to_string(frame_index) +
                     " out of range: '" + path + "' holds " +
                     std::to_string(info.frame_count) + " whole frame(s)");
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  const int64_t payload = FrameBytes420(info.width, info.height);
  int64_t offset = 0;
  if (info.is_y4m) {
    // Frame headers may differ in length, so walk them.
    offset = info.header_bytes;
    std::string marker;
    for (int64_t i = 0;; ++i) {
      in.seekg(offset);
      std::getline(in, marker);
      offset += static_cast<int64_t>(marker.size()) + 1;
      if (i == frame_index) break;
      offset += payload;
    }
  } else {
    offset = frame_index * payload;
  }
  in.seekg(offset);
  std::vector<uint8_t> luma(static_cast<size_t>(info.width) * info.height);
  in.read(reinterpret_cast<char*>(luma.data()),
          static_cast<std::streamsize>(luma.size()));
  if (in.gcount() != static_cast<std::streamsize>(luma.size())) {
    throw TruncationError("short read in '" + path + "' at frame " +
                          std::to_string(frame_index));
  }
  return FramePlane(info.width, info.height, std::move(luma));
}

void AppendRawFrame(std::ostream& out, const FramePlane& plane) {
  const auto samples = plane.samples();
  out.write(reinterpret_cast<const char*>(samples.data()),
            static_cast<std::streamsize>(samples.size()));
  const size_t chroma = static_cast<size_t>((plane.width() + 1) / 2) *
                        ((plane.height() + 1) / 2);
  const std::string neutral(2 * chroma, static_cast<char>(128));
  out.write(neutral.data(), static_cast<std::streamsize>(neutral.size()));
}

std::vector<CtuGeometry> PartitionCtus(int width, int height) {
  if (width < 1 || height < 1) {
    throw ArgumentError("cannot partition a " + std::to_string(width) + "x" +
                        std::to_string(height) + " picture");
  }
  const int cols = (width + kCtuSize - 1) / kCtuSize;
  const int rows = (height + kCtuSize - 1) / kCtuSize;
  std::vector<CtuGeometry> ctus;
  ctus.reserve(static_cast<size_t>(cols) * rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      CtuGeometry g;
      g.index = static_cast<int>(ctus.size());
      g.x = c * kCtuSize;
      g.y = r * kCtuSize;
      g.width = std::min(kCtuSize, width - g.x);
      g.height = std::min(kCtuSize, height - g.y);
      ctus.push_back(g);
    }
  }
  return ctus;
}

int64_t Sa8dBlock(const Block8x8& block) {
  Block8x8 coeffs = block;
  for (int r = 0; r < kHadamardSize; ++r) {
    Hadamard8(&coeffs[r * kHadamardSize], 1);
  }
  for (int c = 0; c < kHadamardSize; ++c) {
    Hadamard8(&coeffs[c], kHadamardSize);
  }
  int64_t sum = 0;
  for (const int32_t v : coeffs) sum += std::abs(static_cast<int64_t>(v));
  return sum;
}

CtuWeight ComputeCtuWeight(const FramePlane& plane, const CtuGeometry& geom) {
  if (geom.x < 0 || geom.y < 0 || geom.width <= 0 || geom.height <= 0 ||
      geom.x + geom.width > plane.width() ||
      geom.y + geom.height > plane.height()) {
    throw ArgumentError("CTU " + std::to_string(geom.index) +
                        " lies outside the " + std::to_string(plane.width()) +
                        "x" + std::to_string(plane.height()) + " plane");
  }
  int64_t total = 0;
  Block8x8 block;
  for (int by = 0; by + kHadamardSize <= geom.height; by += kHadamardSize) {
    for (int bx = 0; bx + kHadamardSize <= geom.width; bx += kHadamardSize) {
      for (int r = 0; r < kHadamardSize; ++r) {
        const auto src = plane.row(geom.y + by + r).subspan(geom.x + bx,
                                                           kHadamardSize);
        for (int c = 0; c < kHadamardSize; ++c) {
          block[r * kHadamardSize + c] = src[c];
        }
      }
      total += Sa8dBlock(block);
    }
  }
  // Flat or sub-block-sized CTUs still cost encode time.
  return CtuWeight{geom.index, total > 0 ? total : 1};
}

std::vector<CtuWeight> ComputeFrameWeights(const FramePlane& plane) {
  std::vector<CtuWeight> weights;
  for (const CtuGeometry& g : PartitionCtus(plane.width(), plane.height())) {
    weights.push_back(ComputeCtuWeight(plane, g));
  }
  return weights;
}

void WriteWeightCsvHeader(std::ostream& out) { out << kWeightCsvHeader << '\n'; }

void WriteWeightCsvRows(std::ostream& out, int64_t frame,
                        std::span<const CtuGeometry> geoms,
                        std::span<const CtuWeight> weights) {
  if (geoms.size() != weights.size()) {
    throw ArgumentError("geometry and weight lists differ in length");
  }
  for (size_t i = 0; i < geoms.size(); ++i) {
    const CtuGeometry& g = geoms[i];
    out << frame << ',' << g.index << ',' << g.x << ',' << g.y << ','
        << g.width << ',' << g.height << ',' << weights[i].weight << '\n';
  }
}

std::vector<WeightRecord> ReadWeightCsv(std::istream& in,
                                        const std::string& source_name) {
  csv::Reader reader(in, source_name, kWeightCsvHeader);
  std::vector<WeightRecord> records;
  csv::Row row;
  while (reader.Next(row)) {
    const std::string where = reader.Where(row.line);
    WeightRecord rec;
    rec.frame = csv::ParseInt(row.fields[0], where);
    rec.geom.index = static_cast<int>(csv::ParseInt(row.fields[1], where));
    rec.geom.x = static_cast<int>(csv::ParseInt(row.fields[2], where));
    rec.geom.y = static_cast<int>(csv::ParseInt(row.fields[3], where));
    rec.geom.width = static_cast<int>(csv::ParseInt(row.fields[4], where));
    rec.geom.height = static_cast<int>(csv::ParseInt(row.fields[5], where));
    rec.weight = csv::ParseInt(row.fields[6], where);
    if (rec.geom.width <= 0 || rec.geom.height <= 0 ||
        rec.geom.width > kCtuSize || rec.geom.height > kCtuSize) {
      throw ParseError(where + ": CTU size must be within 1..64");
    }
    if (rec.weight < 0) throw ParseError(where + ": negative weight");
    records.push_back(rec);
  }
  return records;
}

}  // namespace tcctl
