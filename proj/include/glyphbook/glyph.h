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

#ifndef GLYPHBOOK_GLYPH_H_
#define GLYPHBOOK_GLYPH_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "glyphbook/bitmap.h"

namespace glyphbook {

// A connected blob of ink cut out of a page.
//
// `bitmap` is the tight bounding box; (page_x, page_y) is its top-left corner
// on the page. The anchor is the ink centroid rounded half-up on each axis,
// expressed relative to the bounding box. Everything that compares two glyphs
// (distances, averaging, residuals, reconstruction) aligns them at their
// anchors, so the anchor is the one canonical frame for a shape.
struct Glyph {
  Bitmap bitmap;
  int page_x = 0;
  int page_y = 0;
  std::int64_t ink_count = 0;
  int anchor_dx = 0;
  int anchor_dy = 0;
};

// Builds a glyph from any bitmap holding at least one ink pixel: crops to the
// tight box and computes ink count and anchor. (page_x, page_y) is the
// position of `bitmap`'s own top-left corner; the crop offset is added.
Glyph MakeGlyph(const Bitmap& bitmap, int page_x = 0, int page_y = 0);

// Rounded-half-up centroid of the ink of `bitmap`, as (dx, dy).
void InkAnchor(const Bitmap& bitmap, int* dx, int* dy);

enum class Connectivity { kFour, kEight };

// One glyph per connected component, in reading order: bounding-box top
// edge first, then left edge.
std::vector<Glyph> ExtractGlyphs(const Bitmap& page,
                                 Connectivity connectivity =
                                     Connectivity::kEight);

// ORs every glyph back onto a blank page of the given size.
Bitmap RepaintGlyphs(std::span<const Glyph> glyphs, int width, int height);

class DegenerateCentroidError : public std::runtime_error {
 public:
  DegenerateCentroidError()
      : std::runtime_error("degenerate centroid: no pixel reached threshold") {}
};

// Overlays the members aligned at their anchors and keeps a pixel iff at
// least half of the members have ink there. The result is cropped to its
// ink. Throws DegenerateCentroidError if nothing survives.
Bitmap AverageAndThreshold(std::span<const Glyph> members);
Bitmap AverageAndThreshold(std::span<const Glyph* const> members);

// Ink pixels having a 4-neighbour that is background (or off the bitmap).
std::int64_t BoundaryLength(const Bitmap& bitmap);

}  // namespace glyphbook

#endif  // GLYPHBOOK_GLYPH_H_
