// Copyright 2026 The Authors.
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

#ifndef GLYPHBOOK_CODEC_H_
#define GLYPHBOOK_CODEC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glyphbook/bitmap.h"
#include "glyphbook/glyph.h"
#include "glyphbook/kmedian.h"
#include "glyphbook/metric.h"

namespace glyphbook {

struct Codebook {
  // Distinct patterns in order of first use; only the bitmap and anchor of
  // each are meaningful.
  std::vector<Glyph> patterns;
  std::vector<Units> pattern_cost;
  // Per glyph: index into `patterns`.
  std::vector<int> assignment;
  // Per glyph: page coordinates of the glyph's anchor. The decoder places
  // the pattern's anchor here.
  std::vector<std::pair<int, int>> positions;
  Kappa kappa;
  int page_width = 0;
  int page_height = 0;

  int size() const { return static_cast<int>(patterns.size()); }
  void Validate() const;
  // Pattern geometry, assignment and positions (no pixels).
  std::string ToJson() const;
  // All patterns side by side on one row, separated by a blank column.
  Bitmap Strip() const;
};

// Self-coded glyphs become their own patterns; bit-identical patterns are
// merged.
Codebook MaterializeCodebook(const Solution& solution,
                             std::span<const Glyph> glyphs,
                             const CostModel& model, int page_width,
                             int page_height);
Codebook MaterializeCodebook(const Partition& partition,
                             std::span<const Glyph> glyphs,
                             const CostModel& model, int page_width,
                             int page_height);

// Pixels where a glyph and its pattern differ, in anchor-relative
// coordinates (dx, dy), sorted by row then column.
struct Residual {
  std::vector<std::pair<int, int>> pixels;
  // Area of the union of the two anchor-aligned bounding boxes.
  std::int64_t union_area = 0;
};

Residual ComputeResidual(const Glyph& glyph, const Glyph& pattern);

// The glyph's ink recovered from pattern and residual, as a bitmap together
// with the anchor-relative offset of its top-left corner.
struct AnchoredBitmap {
  Bitmap bitmap;
  int offset_x = 0;
  int offset_y = 0;
};
AnchoredBitmap ApplyResidual(const Glyph& pattern, const Residual& residual);

std::vector<Residual> ComputeResiduals(const Codebook& codebook,
                                       std::span<const Glyph> glyphs);

enum class CodingMode { kLossy, kLossless };

const char* ToString(CodingMode mode);
CodingMode ParseCodingMode(const std::string& text);

struct SizeReport {
  std::int64_t codebook_bits = 0;
  std::int64_t index_bits = 0;
  std::int64_t position_bits = 0;
  std::int64_t residual_bits = 0;
  std::int64_t total_lossy_bits = 0;
  std::int64_t total_lossless_bits = 0;
  std::int64_t original_bits = 0;
  double lossy_ratio = 0;
  double lossless_ratio = 0;

  std::string ToJson() const;
};

// Closed-form size estimates: pattern areas times kappa, the zeroth-order
// entropy of the assignment stream, fixed-width positions and, for lossless
// mode, per-glyph residual pixel indices. Ratios are 0 when a total is 0.
SizeReport EstimateSizes(const Codebook& codebook,
                         std::span<const Glyph> glyphs, const Bitmap& page,
                         CodingMode mode);

// ceil(log2(x)) for x >= 1.
int CeilLog2(std::int64_t x);

class MissingResidualError : public std::runtime_error {
 public:
  explicit MissingResidualError(int glyph)
      : std::runtime_error("lossless reconstruction: no residual for glyph " +
                           std::to_string(glyph)),
        glyph_(glyph) {}
  int glyph() const { return glyph_; }

 private:
  int glyph_;
};

// Stamps every glyph's pattern (anchor-aligned, OR-combined). Lossless mode
// applies the residuals first and must get one per glyph.
Bitmap Reconstruct(const Codebook& codebook, CodingMode mode,
                   std::span<const Residual> residuals = {});

std::string ResidualsToJson(std::span<const Residual> residuals);

}  // namespace glyphbook

#endif  // GLYPHBOOK_CODEC_H_
