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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

Block8x8 RandomBlock(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Block8x8 b;
  for (auto& v : b) v = dist(rng);
  return b;
}

void WriteBytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

FramePlane GradientPlane(int w, int h) {
  FramePlane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.at(x, y) = static_cast<uint8_t>((3 * x + 5 * y) % 256);
  }
  return p;
}

TEST_CASE("partition_ctus tiles exactly") {
  SUBCASE("128x128") {
    const auto ctus = PartitionCtus(128, 128);
    REQUIRE(ctus.size() == 4);
    for (const auto& c : ctus) {
      CHECK(c.width == 64);
      CHECK(c.height == 64);
    }
  }
  SUBCASE("130x70 has remainder column and row") {
    const auto ctus = PartitionCtus(130, 70);
    REQUIRE(ctus.size() == 6);
    CHECK(ctus[2].width == 2);
    CHECK(ctus[2].x == 128);
    CHECK(ctus[3].height == 6);
    CHECK(ctus[5].width == 2);
    CHECK(ctus[5].height == 6);
  }
  SUBCASE("1080p") {
    const auto ctus = PartitionCtus(1920, 1080);
    CHECK(ctus.size() == 30 * 17);
    CHECK(ctus.back().height == 56);
    CHECK(ctus.back().width == 64);
  }
  SUBCASE("zero dimension") {
    CHECK_THROWS_AS(PartitionCtus(0, 10), ArgumentError);
    CHECK_THROWS_AS(PartitionCtus(10, 0), ArgumentError);
  }
}

TEST_CASE("partition covers every pixel once for random sizes") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = dim(rng);
    const int h = dim(rng);
    std::vector<int> cover(static_cast<size_t>(w) * h, 0);
    const auto ctus = PartitionCtus(w, h);
    CHECK(ctus.size() == static_cast<size_t>(((w + 63) / 64) * ((h + 63) / 64)));
    for (size_t i = 0; i < ctus.size(); ++i) {
      const auto& c = ctus[i];
      CHECK(c.index == static_cast<int>(i));
      CHECK(c.width >= 1);
      CHECK(c.width <= 64);
      for (int y = c.y; y < c.y + c.height; ++y) {
        for (int x = c.x; x < c.x + c.width; ++x) ++cover[static_cast<size_t>(y) * w + x];
      }
    }
    bool exact = true;
    for (int v : cover) exact = exact && v == 1;
    CHECK(exact);
  }
}

TEST_CASE("Hadamard matrix is self-inverse up to 8") {
  const auto h = oracle::DenseHadamard();
  const auto hh = oracle::Multiply(h, h);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) CHECK(hh[i][j] == (i == j ? 8 : 0));
  }
}

TEST_CASE("sa8d_block reference values") {
  Block8x8 zero{};
  CHECK(Sa8dBlock(zero) == 0);

  Block8x8 flat;
  flat.fill(100);
  CHECK(oracle::DenseSa8d(flat) == 6400);
  CHECK(Sa8dBlock(flat) == 6400);

  Block8x8 impulse{};
  impulse[27] = 1;
  CHECK(oracle::DenseSa8d(impulse) == 64);
  CHECK(Sa8dBlock(impulse) == 64);
}

TEST_CASE("sa8d_block matches the dense oracle on random blocks") {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Block8x8 b = RandomBlock(rng, -255, 255);
    CHECK(Sa8dBlock(b) == oracle::DenseSa8d(b));
  }
}

TEST_CASE("sa8d_block symmetry and homogeneity") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> scale(0, 40);
  for (int i = 0; i < 200; ++i) {
    const Block8x8 b = RandomBlock(rng, -255, 255);
    Block8x8 neg;
    Block8x8 scaled;
    const int c = scale(rng);
    for (size_t k = 0; k < b.size(); ++k) {
      neg[k] = -b[k];
      scaled[k] = c * b[k];
    }
    CHECK(Sa8dBlock(neg) == Sa8dBlock(b));
    CHECK(Sa8dBlock(scaled) == c * Sa8dBlock(b));
  }
}

TEST_CASE("ctu_weight") {
  SUBCASE("constant 100 CTU") {
    FramePlane p(64, 64);
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) p.at(x, y) = 100;
    }
    CHECK(ComputeCtuWeight(p, PartitionCtus(64, 64)[0]).weight == 64 * 6400);
  }
  SUBCASE("boundary CTU without a whole 8x8 block is floored") {
    FramePlane p = GradientPlane(64, 70);
    const auto ctus = PartitionCtus(64, 70);
    REQUIRE(ctus.size() == 2);
    CHECK(ctus[1].height == 6);
    CHECK(ComputeCtuWeight(p, ctus[1]).weight == 1);
  }
  SUBCASE("zero CTU is floored") {
    FramePlane p(64, 64);
    CHECK(ComputeCtuWeight(p, PartitionCtus(64, 64)[0]).weight == 1);
  }
  SUBCASE("partial blocks are excluded") {
    // 20-wide boundary CTU: two whole columns of blocks, 4 pixels dropped.
    FramePlane p = GradientPlane(84, 64);
    const auto ctus = PartitionCtus(84, 64);
    int64_t expected = 0;
    for (int by = 0; by < 64; by += 8) {
      for (int bx = 64; bx + 8 <= 84; bx += 8) {
        std::array<int64_t, 64> block{};
        for (int r = 0; r < 8; ++r) {
          for (int c = 0; c < 8; ++c) block[r * 8 + c] = p.at(bx + c, by + r);
        }
        expected += oracle::DenseSa8d(block);
      }
    }
    CHECK(ComputeCtuWeight(p, ctus[1]).weight == expected);
  }
  SUBCASE("geometry outside the plane") {
    FramePlane p(64, 64);
    CHECK_THROWS_AS(ComputeCtuWeight(p, CtuGeometry{0, 32, 0, 64, 64}), ArgumentError);
  }
  SUBCASE("deterministic") {
    const FramePlane p = GradientPlane(200, 130);
    CHECK(ComputeFrameWeights(p) == ComputeFrameWeights(p));
  }
}

TEST_CASE("FramePlane validates its shape") {
  CHECK_THROWS_AS(FramePlane(0, 4), ArgumentError);
  CHECK_THROWS_AS(FramePlane(4, 4, std::vector<uint8_t>(15)), ArgumentError);
}

TEST_CASE("load_frame on raw 4:2:0 files") {
  const auto dir = oracle::ScratchDir("frame");
  SUBCASE("zero-filled 64x64") {
    const auto path = dir / "zero.yuv";
    WriteBytes(path, std::string(64 * 64 * 3 / 2, '\0'));
    const FramePlane p = LoadFrame(path.string(), 64, 64, 0);
    CHECK(p.samples().size() == 4096);
    bool all_zero = true;
    for (uint8_t v : p.samples()) all_zero = all_zero && v == 0;
    CHECK(all_zero);
  }
  SUBCASE("single frame file, frame 1 is out of range") {
    const auto path = dir / "one.yuv";
    WriteBytes(path, std::string(64 * 64 * 3 / 2, '\0'));
    CHECK_THROWS_AS(LoadFrame(path.string(), 64, 64, 1), RangeError);
  }
  SUBCASE("short file is a truncation") {
    const auto path = dir / "short.yuv";
    WriteBytes(path, std::string(64 * 64, '\0'));
    CHECK_THROWS_AS(LoadFrame(path.string(), 64, 64, 0), TruncationError);
  }
  SUBCASE("gradient frames round-trip") {
    const auto path = dir / "grad.yuv";
    const FramePlane a = GradientPlane(130, 70);
    FramePlane b = GradientPlane(130, 70);
    b.at(0, 0) = 7;
    {
      std::ofstream out(path, std::ios::binary);
      AppendRawFrame(out, a);
      AppendRawFrame(out, b);
    }
    CHECK(LoadFrame(path.string(), 130, 70, 0) == a);
    CHECK(LoadFrame(path.string(), 130, 70, 1) == b);
    const VideoInfo info = ProbeVideo(path.string(), 130, 70);
    CHECK(info.frame_count == 2);
    CHECK(info.trailing_bytes == 0);
  }
  SUBCASE("missing geometry") {
    const auto path = dir / "nogeo.yuv";
    WriteBytes(path, std::string(96, '\0'));
    CHECK_THROWS_AS(LoadFrame(path.string(), 0, 0, 0), ArgumentError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(LoadFrame((dir / "absent.yuv").string(), 8, 8, 0), IoError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_frame on Y4M streams") {
  const auto dir = oracle::ScratchDir("y4m");
  const FramePlane a = GradientPlane(16, 8);
  std::ostringstream raw;
  AppendRawFrame(raw, a);
  const std::string payload = raw.str();

  SUBCASE("header geometry overrides supplied geometry") {
    const auto path = dir / "clip.y4m";
    WriteBytes(path, "YUV4MPEG2 W16 H8 F25:1 Ip A1:1 C420jpeg\nFRAME\n" + payload +
                         "FRAME Ixyz\n" + payload);
    const VideoInfo info = ProbeVideo(path.string(), 999, 999);
    CHECK(info.is_y4m);
    CHECK(info.width == 16);
    CHECK(info.height == 8);
    CHECK(info.frame_count == 2);
    CHECK(LoadFrame(path.string(), 999, 999, 1) == a);
    CHECK_THROWS_AS(LoadFrame(path.string(), 0, 0, 2), RangeError);
  }
  SUBCASE("non-4:2:0 is rejected") {
    const auto path = dir / "c444.y4m";
    WriteBytes(path, "YUV4MPEG2 W16 H8 C444\nFRAME\n" + payload);
    CHECK_THROWS_AS(ProbeVideo(path.string(), 0, 0), FormatError);
  }
  SUBCASE("truncated frame") {
    const auto path = dir / "cut.y4m";
    WriteBytes(path, "YUV4MPEG2 W16 H8\nFRAME\n" + payload.substr(0, 50));
    CHECK_THROWS_AS(LoadFrame(path.string(), 0, 0, 0), TruncationError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("weight CSV round-trips") {
  const FramePlane p = GradientPlane(130, 70);
  const auto geoms = PartitionCtus(130, 70);
  const auto weights = ComputeFrameWeights(p);
  std::stringstream ss;
  WriteWeightCsvHeader(ss);
  WriteWeightCsvRows(ss, 3, geoms, weights);
  const auto records = ReadWeightCsv(ss, "mem");
  REQUIRE(records.size() == geoms.size());
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].frame == 3);
    CHECK(records[i].geom == geoms[i]);
    CHECK(records[i].weight == weights[i].weight);
  }

  std::istringstream bad(std::string(kWeightCsvHeader) + "\n0,0,0,0,64,64,-5\n");
  CHECK_THROWS_AS(ReadWeightCsv(bad, "bad"), ParseError);
}

}  // namespace
}  // namespace tcctl
