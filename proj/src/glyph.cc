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

#include "glyphbook/glyph.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace glyphbook {

namespace {

// floor((2 * sum + count) / (2 * count)) == round-half-up of sum / count for
// non-negative sums.
int RoundHalfUp(std::int64_t sum, std::int64_t count) {
  return static_cast<int>((2 * sum + count) / (2 * count));
}

}  // namespace

void InkAnchor(const Bitmap& bitmap, int* dx, int* dy) {
  std::int64_t sx = 0, sy = 0, count = 0;
  for (int y = 0; y < bitmap.height(); ++y) {
    for (int x = 0; x < bitmap.width(); ++x) {
      if (!bitmap.Get(x, y)) continue;
      sx += x;
      sy += y;
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("InkAnchor: bitmap has no ink");
  *dx = RoundHalfUp(sx, count);
  *dy = RoundHalfUp(sy, count);
}

Glyph MakeGlyph(const Bitmap& bitmap, int page_x, int page_y) {
  int x0, y0, x1, y1;
  if (!bitmap.InkBounds(&x0, &y0, &x1, &y1)) {
    throw std::invalid_argument("MakeGlyph: bitmap has no ink");
  }
  Glyph g;
  g.bitmap = bitmap.Crop(x0, y0, x1 - x0 + 1, y1 - y0 + 1);
  g.page_x = page_x + x0;
  g.page_y = page_y + y0;
  g.ink_count = g.bitmap.InkCount();
  InkAnchor(g.bitmap, &g.anchor_dx, &g.anchor_dy);
  return g;
}

std::vector<Glyph> ExtractGlyphs(const Bitmap& page,
                                 Connectivity connectivity) {
  const int w = page.width();
  const int h = page.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);

  struct Component {
    int min_x, min_y, max_x, max_y;
    std::vector<std::pair<int, int>> pixels;
  };
  std::vector<Component> components;
  std::vector<std::pair<int, int>> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!page.Get(x, y) || label[static_cast<std::size_t>(y) * w + x] >= 0) continue;
      const int id = static_cast<int>(components.size());
      Component comp{x, y, x, y, {}};
      stack.assign(1, {x, y});
      label[static_cast<std::size_t>(y) * w + x] = id;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        comp.pixels.emplace_back(cx, cy);
        comp.min_x = std::min(comp.min_x, cx);
        comp.max_x = std::max(comp.max_x, cx);
        comp.min_y = std::min(comp.min_y, cy);
        comp.max_y = std::max(comp.max_y, cy);
        for (int ny = cy - 1; ny <= cy + 1; ++ny) {
          for (int nx = cx - 1; nx <= cx + 1; ++nx) {
            if (nx == cx && ny == cy) continue;
            if (connectivity == Connectivity::kFour && nx != cx && ny != cy) {
              continue;
            }
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            std::size_t idx = static_cast<std::size_t>(ny) * w + nx;
            if (label[idx] >= 0 || !page.Get(nx, ny)) continue;
            label[idx] = id;
            stack.emplace_back(nx, ny);
          }
        }
      }
      components.push_back(std::move(comp));
    }
  }

  // Components were discovered in raster order of their first pixel; a
  // stable sort on the bounding-box corner keeps that as the tie-break.
  std::vector<int> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ca = components[a];
    const auto& cb = components[b];
    if (ca.min_y != cb.min_y) return ca.min_y < cb.min_y;
    return ca.min_x < cb.min_x;
  });

  std::vector<Glyph> glyphs;
  glyphs.reserve(components.size());
  for (int id : order) {
    const auto& c = components[id];
    Bitmap bm(c.max_x - c.min_x + 1, c.max_y - c.min_y + 1);
    for (auto [px, py] : c.pixels) bm.Set(px - c.min_x, py - c.min_y, true);
    Glyph g;
    g.bitmap = std::move(bm);
    g.page_x = c.min_x;
    g.page_y = c.min_y;
    g.ink_count = static_cast<std::int64_t>(c.pixels.size());
    InkAnchor(g.bitmap, &g.anchor_dx, &g.anchor_dy);
    glyphs.push_back(std::move(g));
  }
  return glyphs;
}

Bitmap RepaintGlyphs(std::span<const Glyph> glyphs, int width, int height) {
  Bitmap page(width, height);
  for (const Glyph& g : glyphs) page.Stamp(g.bitmap, g.page_x, g.page_y);
  return page;
}

Bitmap AverageAndThreshold(std::span<const Glyph* const> members) {
  if (members.empty()) {
    throw std::invalid_argument("AverageAndThreshold: empty class");
  }
  // Frame in anchor-relative coordinates covering every member.
  int left = std::numeric_limits<int>::max();
  int top = std::numeric_limits<int>::max();
  int right = std::numeric_limits<int>::min();
  int bottom = std::numeric_limits<int>::min();
  for (const Glyph* g : members) {
    left = std::min(left, -g->anchor_dx);
    top = std::min(top, -g->anchor_dy);
    right = std::max(right, g->bitmap.width() - g->anchor_dx);
    bottom = std::max(bottom, g->bitmap.height() - g->anchor_dy);
  }
  const int fw = right - left;
  const int fh = bottom - top;
  std::vector<int> votes(static_cast<std::size_t>(fw) * fh, 0);
  for (const Glyph* g : members) {
    const int ox = -g->anchor_dx - left;
    const int oy = -g->anchor_dy - top;
    for (int y = 0; y < g->bitmap.height(); ++y) {
      for (int x = 0; x < g->bitmap.width(); ++x) {
        if (g->bitmap.Get(x, y)) {
          ++votes[static_cast<std::size_t>(y + oy) * fw + (x + ox)];
        }
      }
    }
  }
  const std::int64_t m = static_cast<std::int64_t>(members.size());
  Bitmap frame(fw, fh);
  bool any = false;
  for (int y = 0; y < fh; ++y) {
    for (int x = 0; x < fw; ++x) {
      if (2 * std::int64_t{votes[static_cast<std::size_t>(y) * fw + x]} >= m) {
        frame.Set(x, y, true);
        any = true;
      }
    }
  }
  if (!any) throw DegenerateCentroidError();
  int x0, y0, x1, y1;
  frame.InkBounds(&x0, &y0, &x1, &y1);
  return frame.Crop(x0, y0, x1 - x0 + 1, y1 - y0 + 1);
}

Bitmap AverageAndThreshold(std::span<const Glyph> members) {
  std::vector<const Glyph*> ptrs;
  ptrs.reserve(members.size());
  for (const Glyph& g : members) ptrs.push_back(&g);
  return AverageAndThreshold(std::span<const Glyph* const>(ptrs));
}

std::int64_t BoundaryLength(const Bitmap& bitmap) {
  std::int64_t n = 0;
  for (int y = 0; y < bitmap.height(); ++y) {
    for (int x = 0; x < bitmap.width(); ++x) {
      if (!bitmap.Get(x, y)) continue;
      if (!bitmap.GetOr0(x - 1, y) || !bitmap.GetOr0(x + 1, y) ||
          !bitmap.GetOr0(x, y - 1) || !bitmap.GetOr0(x, y + 1)) {
        ++n;
      }
    }
  }
  return n;
}

}  // namespace glyphbook
