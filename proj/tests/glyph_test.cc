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
#include <random>

#include <gtest/gtest.h>

#include "glyphbook/corpus.h"

namespace glyphbook {
namespace {

// Glyph with an explicit (possibly loose) bitmap and anchor, for averaging
// fixtures that are easier to state on a fixed frame.
Glyph Framed(const std::string& row, int anchor_dx) {
  Glyph g;
  g.bitmap = Bitmap::FromAscii({row});
  g.ink_count = g.bitmap.InkCount();
  g.anchor_dx = anchor_dx;
  return g;
}

TEST(GlyphTest, AnchorRoundsHalfUp) {
  int dx, dy;
  InkAnchor(Bitmap::FromAscii({"##"}), &dx, &dy);
  EXPECT_EQ(dx, 1);
  EXPECT_EQ(dy, 0);
  InkAnchor(Bitmap::FromAscii({"###", "#..", "#.."}), &dx, &dy);
  EXPECT_EQ(dx, 1);  // 3/5
  EXPECT_EQ(dy, 1);  // 3/5
}

TEST(GlyphTest, MakeGlyphCropsAndOffsets) {
  Glyph g = MakeGlyph(Bitmap::FromAscii({"....", "..#.", "..##"}), 10, 20);
  EXPECT_EQ(g.page_x, 12);
  EXPECT_EQ(g.page_y, 21);
  EXPECT_EQ(g.bitmap.ToAscii(), "#.\n##\n");
  EXPECT_EQ(g.ink_count, 3);
  EXPECT_THROW(MakeGlyph(Bitmap(2, 2)), std::invalid_argument);
}

TEST(GlyphTest, ExtractsInReadingOrder) {
  Bitmap page = Bitmap::FromAscii({
      ".....#",
      "##...#",
      "##....",
      "...#..",
  });
  auto glyphs = ExtractGlyphs(page);
  ASSERT_EQ(glyphs.size(), 3u);
  EXPECT_EQ(glyphs[0].page_x, 5);
  EXPECT_EQ(glyphs[0].page_y, 0);
  EXPECT_EQ(glyphs[1].page_x, 0);
  EXPECT_EQ(glyphs[1].ink_count, 4);
  EXPECT_EQ(glyphs[2].page_x, 3);
  EXPECT_EQ(glyphs[2].page_y, 3);
}

TEST(GlyphTest, ConnectivityMatters) {
  Bitmap page = Bitmap::FromAscii({"#.", ".#"});
  EXPECT_EQ(ExtractGlyphs(page, Connectivity::kEight).size(), 1u);
  EXPECT_EQ(ExtractGlyphs(page, Connectivity::kFour).size(), 2u);
}

TEST(GlyphTest, TightBoxAndAnchorInvariants) {
  CorpusSpec spec;
  spec.noise_flip_probability = 0.2;
  spec.seed = 3;
  for (const Glyph& g : ExtractGlyphs(GenerateCorpus(spec).page)) {
    const Bitmap& b = g.bitmap;
    int x0, y0, x1, y1;
    ASSERT_TRUE(b.InkBounds(&x0, &y0, &x1, &y1));
    EXPECT_EQ(x0, 0);
    EXPECT_EQ(y0, 0);
    EXPECT_EQ(x1, b.width() - 1);
    EXPECT_EQ(y1, b.height() - 1);
    EXPECT_EQ(g.ink_count, b.InkCount());
    EXPECT_GE(g.anchor_dx, 0);
    EXPECT_LT(g.anchor_dx, b.width());
    EXPECT_GE(g.anchor_dy, 0);
    EXPECT_LT(g.anchor_dy, b.height());
  }
}

TEST(GlyphTest, RepaintIsLossless) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CorpusSpec spec;
    spec.noise_flip_probability = 0.1;
    spec.jitter_max = 2;
    spec.seed = seed;
    Bitmap page = GenerateCorpus(spec).page;
    for (auto conn : {Connectivity::kFour, Connectivity::kEight}) {
      auto glyphs = ExtractGlyphs(page, conn);
      EXPECT_EQ(RepaintGlyphs(glyphs, page.width(), page.height()), page);
    }
  }
}

TEST(GlyphTest, CountInvariantUnderPadding) {
  CorpusSpec spec;
  spec.noise_flip_probability = 0.1;
  Bitmap page = GenerateCorpus(spec).page;
  Bitmap padded(page.width() + 13, page.height() + 7);
  padded.Stamp(page, 5, 3);
  EXPECT_EQ(ExtractGlyphs(page).size(), ExtractGlyphs(padded).size());
}

TEST(AverageTest, IdenticalMembersGiveThatGlyph) {
  Glyph g = MakeGlyph(Bitmap::FromAscii({".#.", "###", "#.."}));
  std::vector<Glyph> members(4, g);
  EXPECT_EQ(AverageAndThreshold(members), g.bitmap);
}

TEST(AverageTest, HalfVotesKeepInk) {
  // Inks {left, center} and {center, right}, both anchored at the center:
  // every column reaches at least one half.
  std::vector<Glyph> members = {Framed("##.", 1), Framed(".##", 1)};
  EXPECT_EQ(AverageAndThreshold(members).ToAscii(), "###\n");
}

TEST(AverageTest, DisjointPairKeepsBoth) {
  std::vector<Glyph> members = {Framed("#.#", 1), Framed("#", 0)};
  EXPECT_EQ(AverageAndThreshold(members).ToAscii(), "###\n");
}

TEST(AverageTest, MinorityPixelsDropOrDegenerate) {
  std::vector<Glyph> three = {Framed("##", 0), Framed("#", 0),
                              Framed("#", 0)};
  EXPECT_EQ(AverageAndThreshold(three).ToAscii(), "#\n");
  std::vector<Glyph> degenerate = {Framed("#..", 0), Framed("#..", 2),
                                   Framed("#....", 4)};
  EXPECT_THROW(AverageAndThreshold(degenerate), DegenerateCentroidError);
}

TEST(AverageTest, PermutationInvariant) {
  CorpusSpec spec;
  spec.base_shape_count = 1;
  spec.glyph_instance_count = 9;
  spec.noise_flip_probability = 0.3;
  auto glyphs = ExtractGlyphs(GenerateCorpus(spec).page);
  const Bitmap expected = AverageAndThreshold(glyphs);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(glyphs.begin(), glyphs.end(), rng);
    EXPECT_EQ(AverageAndThreshold(glyphs), expected);
  }
}

TEST(GlyphTest, BoundaryLength) {
  EXPECT_EQ(BoundaryLength(Bitmap::FromAscii({"###", "###", "###"})), 8);
  EXPECT_EQ(BoundaryLength(Bitmap::FromAscii({"#"})), 1);
}

}  // namespace
}  // namespace glyphbook
