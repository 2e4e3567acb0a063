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
//
// Luma frame ingestion, CTU partitioning and SA8D complexity weights.
//
// A picture is covered by 64x64 CTUs in raster order; the last column and row
// hold the remainder rectangles when the frame size is not a multiple of 64.
// Each CTU is weighted by the sum of absolute 8x8 Hadamard coefficients of
// its source luma, taken over the whole 8x8 blocks it contains.

#ifndef TCCTL_FRAME_MODEL_H_
#define TCCTL_FRAME_MODEL_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tcctl {

inline constexpr int kCtuSize = 64;
inline constexpr int kHadamardSize = 8;

// An 8-bit luma plane, row-major.
class FramePlane {
 public:
  FramePlane() = default;
  // Zero-filled plane. Throws ArgumentError on non-positive dimensions.
  FramePlane(int width, int height);
  // Takes ownership of `samples`, which must hold exactly width*height values.
  FramePlane(int width, int height, std::vector<uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  uint8_t at(int x, int y) const {
    return samples_[static_cast<size_t>(y) * width_ + x];
  }
  uint8_t& at(int x, int y) {
    return samples_[static_cast<size_t>(y) * width_ + x];
  }
  std::span<const uint8_t> samples() const { return samples_; }
  std::span<const uint8_t> row(int y) const {
    return std::span<const uint8_t>(samples_).subspan(
        static_cast<size_t>(y) * width_, width_);
  }

  friend bool operator==(const FramePlane&, const FramePlane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> samples_;
};

struct CtuGeometry {
  int index = 0;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const CtuGeometry&, const CtuGeometry&) = default;
};

struct CtuWeight {
  int ctu_index = 0;
  int64_t weight = 0;

  friend bool operator==(const CtuWeight&, const CtuWeight&) = default;
};

// Geometry and frame count of a video file. For Y4M input the stream header
// supplies the dimensions; for raw input they are taken from the caller.
struct VideoInfo {
  int width = 0;
  int height = 0;
  bool is_y4m = false;
  int64_t frame_count = 0;     // whole frames present
  int64_t header_bytes = 0;    // Y4M stream header length, 0 for raw
  int64_t trailing_bytes = 0;  // bytes after the last whole frame
};

// Inspects `path`. Raw files need `width`/`height` > 0; Y4M files ignore them.
// Throws IoError, FormatError (bad Y4M header or non-4:2:0 chroma) or
// ArgumentError (missing raw geometry).
VideoInfo ProbeVideo(const std::string& path, int width, int height);

// Reads the luma plane of frame `frame_index` from a planar 8-bit 4:2:0 file
// (raw or Y4M). Chroma is skipped. Throws RangeError when the frame does not
// exist and TruncationError when the file ends inside the requested frame.
FramePlane LoadFrame(const std::string& path, int width, int height,
                     int64_t frame_index);

// Appends one raw 4:2:0 frame: the plane followed by neutral (128) chroma.
void AppendRawFrame(std::ostream& out, const FramePlane& plane);

// Raster-order CTU grid covering a width x height picture.
std::vector<CtuGeometry> PartitionCtus(int width, int height);

using Block8x8 = std::array<int32_t, kHadamardSize * kHadamardSize>;

// Sum of |H * block * H| with the unnormalized 8x8 Hadamard matrix. Exact.
int64_t Sa8dBlock(const Block8x8& block);

// Sum of Sa8dBlock over every whole 8x8 block inside `geom`; blocks that
// cross the frame edge are skipped. A result of 0 is floored to 1.
CtuWeight ComputeCtuWeight(const FramePlane& plane, const CtuGeometry& geom);

std::vector<CtuWeight> ComputeFrameWeights(const FramePlane& plane);

// Weight dump, one row per CTU:
//   frame,ctu_index,x,y,width,height,weight
struct WeightRecord {
  int64_t frame = 0;
  CtuGeometry geom;
  int64_t weight = 0;

  friend bool operator==(const WeightRecord&, const WeightRecord&) = default;
};

inline constexpr const char* kWeightCsvHeader =
    "frame,ctu_index,x,y,width,height,weight";

void WriteWeightCsvHeader(std::ostream& out);
void WriteWeightCsvRows(std::ostream& out, int64_t frame,
                        std::span<const CtuGeometry> geoms,
                        std::span<const CtuWeight> weights);
std::vector<WeightRecord> ReadWeightCsv(std::istream& in,
                                        const std::string& source_name);

}  // namespace tcctl

#endif  // TCCTL_FRAME_MODEL_H_
