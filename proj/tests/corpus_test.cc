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


#include "glyphbook/corpus.h"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "glyphbook/glyph.h"

namespace glyphbook {
namespace {

TEST(CorpusTest, NoiselessGivesExactClasses) {
  CorpusSpec spec;
  spec.base_shape_count = 5;
  spec.glyph_instance_count = 100;
  Corpus c = GenerateCorpus(spec);
  auto glyphs = ExtractGlyphs(c.page);
  ASSERT_EQ(glyphs.size(), 100u);
  ASSERT_EQ(c.truth.size(), 100u);
  std::map<std::string, std::set<int>> labels_of_bitmap;
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    labels_of_bitmap[glyphs[i].bitmap.ToAscii()].insert(c.truth[i]);
  }
  EXPECT_EQ(labels_of_bitmap.size(), 5u);
  for (const auto& [bitmap, labels] : labels_of_bitmap) {
    EXPECT_EQ(labels.size(), 1u);
  }
}

TEST(CorpusTest, Deterministic) {
  CorpusSpec spec;
  spec.noise_flip_probability = 0.1;
  spec.jitter_max = 3;
  spec.seed = 99;
  Corpus a = GenerateCorpus(spec);
  Corpus b = GenerateCorpus(spec);
  EXPECT_EQ(a.page, b.page);
  EXPECT_EQ(a.truth, b.truth);
  spec.seed = 100;
  EXPECT_FALSE(GenerateCorpus(spec).page == a.page);
}

TEST(CorpusTest, RoundRobinHistogram) {
  CorpusSpec spec;
  spec.base_shape_count = 3;
  spec.glyph_instance_count = 30;
  spec.noise_flip_probability = 0.1;
  spec.seed = 42;
  Corpus c = GenerateCorpus(spec);
  std::map<int, int> hist;
  for (int t : c.truth) ++hist[t];
  EXPECT_EQ(hist, (std::map<int, int>{{0, 10}, {1, 10}, {2, 10}}));
}

TEST(CorpusTest, TruthFollowsReadingOrderUnderNoise) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CorpusSpec spec;
    spec.base_shape_count = 7;
    spec.glyph_instance_count = 60;
    spec.noise_flip_probability = 0.15;
    spec.jitter_max = 2;
    spec.seed = seed;
    Corpus c = GenerateCorpus(spec);
    auto glyphs = ExtractGlyphs(c.page);
    ASSERT_EQ(glyphs.size(), c.truth.size()) << "seed " << seed;
  }
}

TEST(CorpusTest, CapacityError) {
  CorpusSpec spec;
  spec.glyph_instance_count = 100;
  spec.page_width = 10;
  spec.page_height = 10;
  spec.shape_area_min = 9;
  spec.shape_area_max = 9;
  EXPECT_THROW(GenerateCorpus(spec), CapacityError);
}

TEST(CorpusTest, ValidatesSpec) {
  CorpusSpec spec;
  spec.base_shape_count = 0;
  EXPECT_THROW(GenerateCorpus(spec), std::invalid_argument);
  spec = CorpusSpec();
  spec.glyph_instance_count = 2;
  EXPECT_THROW(GenerateCorpus(spec), std::invalid_argument);
  spec = CorpusSpec();
  spec.noise_flip_probability = 0.6;
  EXPECT_THROW(GenerateCorpus(spec), std::invalid_argument);
}

TEST(CorpusTest, TruthJson) {
  EXPECT_EQ(TruthToJson({0, 1, 2}), "[0,1,2]");
  EXPECT_EQ(TruthToJson({}), "[]");
}

}  // namespace
}  // namespace glyphbook
