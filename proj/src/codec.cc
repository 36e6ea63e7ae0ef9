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

#include "glyphbook/codec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "json.hpp"

namespace glyphbook {

using json = nlohmann::ordered_json;

void Codebook::Validate() const {
  if (assignment.size() != positions.size()) {
    throw std::logic_error("codebook: assignment/position size mismatch");
  }
  std::vector<char> used(patterns.size(), 0);
  for (int a : assignment) {
    if (a < 0 || a >= size()) {
      throw std::logic_error("codebook: assignment out of range");
    }
    used[a] = 1;
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    throw std::logic_error("codebook: unreferenced pattern");
  }
}

std::string Codebook::ToJson() const {
  json pats = json::array();
  int strip_x = 0;
  for (int p = 0; p < size(); ++p) {
    pats.push_back({{"width", patterns[p].bitmap.width()},
                    {"height", patterns[p].bitmap.height()},
                    {"anchor_dx", patterns[p].anchor_dx},
                    {"anchor_dy", patterns[p].anchor_dy},
                    {"cost_units", pattern_cost[p]},
                    {"strip_x", strip_x}});
    strip_x += patterns[p].bitmap.width() + 1;
  }
  json pos = json::array();
  for (auto [x, y] : positions) pos.push_back({x, y});
  json j;
  j["page_width"] = page_width;
  j["page_height"] = page_height;
  j["kappa"] = kappa.ToString();
  j["patterns"] = std::move(pats);
  j["assignment"] = assignment;
  j["positions"] = std::move(pos);
  return j.dump();
}

Bitmap Codebook::Strip() const {
  int width = 0, height = 0;
  for (const Glyph& p : patterns) {
    width += p.bitmap.width() + 1;
    height = std::max(height, p.bitmap.height());
  }
  if (width > 0) --width;
  Bitmap strip(width, height);
  int x = 0;
  for (const Glyph& p : patterns) {
    strip.Stamp(p.bitmap, x, 0);
    x += p.bitmap.width() + 1;
  }
  return strip;
}

namespace {

// Builds a codebook from a per-glyph pattern source, merging bit-identical
// bitmaps (identical bitmaps have identical anchors).
class CodebookBuilder {
 public:
  CodebookBuilder(std::span<const Glyph> glyphs, const CostModel& model,
                  int page_width, int page_height)
      : model_(model) {
    book_.kappa = model.kappa;
    book_.page_width = page_width;
    book_.page_height = page_height;
    for (const Glyph& g : glyphs) {
      book_.positions.emplace_back(g.page_x + g.anchor_dx,
                                   g.page_y + g.anchor_dy);
    }
  }

  void Assign(const Glyph& pattern) {
    const auto key = std::make_tuple(pattern.bitmap.width(),
                                     pattern.bitmap.height(),
                                     pattern.ink_count);
    auto& bucket = index_[key];
    for (int p : bucket) {
      if (book_.patterns[p].bitmap == pattern.bitmap) {
        book_.assignment.push_back(p);
        return;
      }
    }
    Glyph stored;
    stored.bitmap = pattern.bitmap;
    stored.ink_count = pattern.ink_count;
    stored.anchor_dx = pattern.anchor_dx;
    stored.anchor_dy = pattern.anchor_dy;
    const int p = book_.size();
    book_.patterns.push_back(std::move(stored));
    book_.pattern_cost.push_back(GlyphCost(pattern, model_));
    bucket.push_back(p);
    book_.assignment.push_back(p);
  }

  Codebook Finish() {
    book_.Validate();
    return std::move(book_);
  }

 private:
  CostModel model_;
  Codebook book_;
  std::map<std::tuple<int, int, std::int64_t>, std::vector<int>> index_;
};

}  // namespace

Codebook MaterializeCodebook(const Solution& solution,
                             std::span<const Glyph> glyphs,
                             const CostModel& model, int page_width,
                             int page_height) {
  const int n = static_cast<int>(glyphs.size());
  if (solution.n != n) {
    throw std::invalid_argument("solution does not match the glyph list");
  }
  CodebookBuilder builder(glyphs, model, page_width, page_height);
  for (int v = 0; v < n; ++v) {
    const int id = solution.assignment[v];
    if (id == kSelfCoded) {
      builder.Assign(glyphs[v]);
    } else if (id < n) {
      builder.Assign(glyphs[id]);
    } else {
      builder.Assign(solution.synthesized[id - n]);
    }
  }
  return builder.Finish();
}

Codebook MaterializeCodebook(const Partition& partition,
                             std::span<const Glyph> glyphs,
                             const CostModel& model, int page_width,
                             int page_height) {
  const int n = static_cast<int>(glyphs.size());
  partition.Validate(n);
  std::vector<const Glyph*> source(n, nullptr);
  for (const auto& c : partition.classes) {
    const Glyph* pattern =
        c.pattern ? &*c.pattern
                  : &glyphs[c.representative >= 0 ? c.representative
                                                  : c.members.front()];
    for (int v : c.members) source[v] = pattern;
  }
  CodebookBuilder builder(glyphs, model, page_width, page_height);
  for (int v = 0; v < n; ++v) builder.Assign(*source[v]);
  return builder.Finish();
}

Residual ComputeResidual(const Glyph& glyph, const Glyph& pattern) {
  if (pattern.bitmap.empty()) {
    throw std::invalid_argument("ComputeResidual: empty pattern");
  }
  // Anchor-relative extents of both boxes.
  const int left = std::min(-glyph.anchor_dx, -pattern.anchor_dx);
  const int top = std::min(-glyph.anchor_dy, -pattern.anchor_dy);
  const int right = std::max(glyph.bitmap.width() - glyph.anchor_dx,
                             pattern.bitmap.width() - pattern.anchor_dx);
  const int bottom = std::max(glyph.bitmap.height() - glyph.anchor_dy,
                              pattern.bitmap.height() - pattern.anchor_dy);
  Residual r;
  r.union_area = std::int64_t{right - left} * (bottom - top);
  for (int dy = top; dy < bottom; ++dy) {
    for (int dx = left; dx < right; ++dx) {
      const bool a =
          glyph.bitmap.GetOr0(dx + glyph.anchor_dx, dy + glyph.anchor_dy);
      const bool b =
          pattern.bitmap.GetOr0(dx + pattern.anchor_dx, dy + pattern.anchor_dy);
      if (a != b) r.pixels.emplace_back(dx, dy);
    }
  }
  return r;
}

AnchoredBitmap ApplyResidual(const Glyph& pattern, const Residual& residual) {
  int left = -pattern.anchor_dx;
  int top = -pattern.anchor_dy;
  int right = pattern.bitmap.width() - pattern.anchor_dx;
  int bottom = pattern.bitmap.height() - pattern.anchor_dy;
  for (auto [dx, dy] : residual.pixels) {
    left = std::min(left, dx);
    top = std::min(top, dy);
    right = std::max(right, dx + 1);
    bottom = std::max(bottom, dy + 1);
  }
  AnchoredBitmap out{Bitmap(right - left, bottom - top), left, top};
  out.bitmap.Stamp(pattern.bitmap, -pattern.anchor_dx - left,
                   -pattern.anchor_dy - top);
  for (auto [dx, dy] : residual.pixels) {
    const int x = dx - left;
    const int y = dy - top;
    out.bitmap.Set(x, y, !out.bitmap.Get(x, y));
  }
  return out;
}

std::vector<Residual> ComputeResiduals(const Codebook& codebook,
                                       std::span<const Glyph> glyphs) {
  if (glyphs.size() != codebook.assignment.size()) {
    throw std::invalid_argument("codebook does not match the glyph list");
  }
  std::vector<Residual> out;
  out.reserve(glyphs.size());
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    out.push_back(
        ComputeResidual(glyphs[i], codebook.patterns[codebook.assignment[i]]));
  }
  return out;
}

const char* ToString(CodingMode mode) {
  return mode == CodingMode::kLossy ? "lossy" : "lossless";
}

CodingMode ParseCodingMode(const std::string& text) {
  if (text == "lossy") return CodingMode::kLossy;
  if (text == "lossless") return CodingMode::kLossless;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

int CeilLog2(std::int64_t x) {
  if (x < 1) throw std::invalid_argument("CeilLog2 needs x >= 1");
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(x - 1)));
}

std::string SizeReport::ToJson() const {
  json j;
  j["codebook_bits"] = codebook_bits;
  j["index_bits"] = index_bits;
  j["position_bits"] = position_bits;
  j["residual_bits"] = residual_bits;
  j["total_lossy_bits"] = total_lossy_bits;
  j["total_lossless_bits"] = total_lossless_bits;
  j["original_bits"] = original_bits;
  j["lossy_ratio"] = lossy_ratio;
  j["lossless_ratio"] = lossless_ratio;
  return j.dump();
}

SizeReport EstimateSizes(const Codebook& codebook,
                         std::span<const Glyph> glyphs, const Bitmap& page,
                         CodingMode mode) {
  const std::int64_t n = static_cast<std::int64_t>(glyphs.size());
  if (static_cast<std::size_t>(n) != codebook.assignment.size()) {
    throw std::invalid_argument("codebook does not match the glyph list");
  }
  SizeReport r;
  Units area = 0;
  for (Units c : codebook.pattern_cost) area += c;
  r.codebook_bits = codebook.kappa.CeilBits(area);

  std::vector<std::int64_t> freq(codebook.patterns.size(), 0);
  for (int a : codebook.assignment) ++freq[a];
  // n * H0 = n log2 n - sum f log2 f.
  long double nh = n > 0 ? n * std::log2l(static_cast<long double>(n)) : 0;
  for (std::int64_t f : freq) {
    if (f > 0) nh -= f * std::log2l(static_cast<long double>(f));
  }
  // Exact integers come out of log2l a few ulps high; don't round them up.
  r.index_bits =
      nh <= 1e-9L ? 0 : static_cast<std::int64_t>(std::ceil(nh - 1e-9L));

  if (n > 0) {
    r.position_bits = n * (CeilLog2(std::max(1, page.width())) +
                           CeilLog2(std::max(1, page.height())));
  }
  if (mode == CodingMode::kLossless) {
    for (const Residual& res : ComputeResiduals(codebook, glyphs)) {
      const std::int64_t b = CeilLog2(res.union_area + 1);
      r.residual_bits += b + static_cast<std::int64_t>(res.pixels.size()) * b;
    }
  }
  r.total_lossy_bits = r.codebook_bits + r.index_bits + r.position_bits;
  r.total_lossless_bits = r.total_lossy_bits + r.residual_bits;
  r.original_bits = std::int64_t{page.width()} * page.height();
  auto ratio = [&](std::int64_t total) {
    return total == 0 ? 0.0 : static_cast<double>(r.original_bits) / total;
  };
  r.lossy_ratio = ratio(r.total_lossy_bits);
  r.lossless_ratio = ratio(r.total_lossless_bits);
  return r;
}

Bitmap Reconstruct(const Codebook& codebook, CodingMode mode,
                   std::span<const Residual> residuals) {
  Bitmap page(codebook.page_width, codebook.page_height);
  const std::size_t n = codebook.assignment.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Glyph& pattern = codebook.patterns[codebook.assignment[i]];
    const auto [ax, ay] = codebook.positions[i];
    if (mode == CodingMode::kLossy) {
      page.Stamp(pattern.bitmap, ax - pattern.anchor_dx,
                 ay - pattern.anchor_dy);
      continue;
    }
    if (i >= residuals.size()) throw MissingResidualError(static_cast<int>(i));
    const AnchoredBitmap glyph = ApplyResidual(pattern, residuals[i]);
    page.Stamp(glyph.bitmap, ax + glyph.offset_x, ay + glyph.offset_y);
  }
  return page;
}

std::string ResidualsToJson(std::span<const Residual> residuals) {
  json arr = json::array();
  for (const Residual& r : residuals) {
    json px = json::array();
    for (auto [dx, dy] : r.pixels) px.push_back({dx, dy});
    arr.push_back(std::move(px));
  }
  return arr.dump();
}

}  // namespace glyphbook
