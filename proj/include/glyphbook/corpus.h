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

#ifndef GLYPHBOOK_CORPUS_H_
#define GLYPHBOOK_CORPUS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "glyphbook/bitmap.h"

namespace glyphbook {

// Parameters of a synthetic page: `base_shape_count` random blobs, each
// stamped repeatedly with boundary noise and position jitter.
struct CorpusSpec {
  int base_shape_count = 5;
  int glyph_instance_count = 100;
  double noise_flip_probability = 0.0;
  int jitter_max = 0;
  // Zero means "size the page to fit" (see FitPage).
  int page_width = 0;
  int page_height = 0;
  std::uint64_t seed = 1;
  // Ink area of each base shape is drawn uniformly from this range.
  int shape_area_min = 30;
  int shape_area_max = 80;

  void Validate() const;
};

struct Corpus {
  Bitmap page;
  // Base-shape label of every glyph, in ExtractGlyphs reading order.
  std::vector<int> truth;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic in `spec` (including the seed). Instance i is drawn from
// shape i % base_shape_count and placed in grid cell i, row-major.
Corpus GenerateCorpus(const CorpusSpec& spec);

// Truth labels as a JSON array, e.g. "[0,1,2]".
std::string TruthToJson(const std::vector<int>& truth);

}  // namespace glyphbook

#endif  // GLYPHBOOK_CORPUS_H_
