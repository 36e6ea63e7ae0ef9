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

#ifndef GLYPHBOOK_PIPELINE_H_
#define GLYPHBOOK_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glyphbook/bitmap.h"
#include "glyphbook/codec.h"
#include "glyphbook/glyph.h"
#include "glyphbook/kmedian.h"
#include "glyphbook/metric.h"

namespace glyphbook {

enum class Algorithm {
  kFirstFit,
  kFirstFitKMeans,
  kGkm,
  kGkmWithKMeans,
  kGkmThenKMeans,
};

const char* ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& text);
const std::vector<Algorithm>& AllAlgorithms();

struct PipelineConfig {
  Algorithm algorithm = Algorithm::kGkm;
  CostModel model;
  Connectivity connectivity = Connectivity::kEight;
  // Match threshold in bits; when unset it is derived from `noise_hint`.
  std::optional<double> threshold_bits;
  double noise_hint = 0.05;
  double epsilon = 0.0;
  int kmeans_min_decrease = 1;
  MatchMode kmeans_mode = MatchMode::kFirstMatch;
  CodingMode mode = CodingMode::kLossless;
  // nullopt disables oracle pruning.
  std::optional<Units> prefilter_slack;
};

// Threshold used when none is given: 4 * noise * mean boundary length, in
// units, at least 1 (so exact duplicates always match).
Units DefaultThresholdUnits(const std::vector<Glyph>& glyphs, double noise);

// Smallest integer unit threshold equivalent to "distance in bits < bits".
Units ThresholdUnitsFromBits(double bits, const Kappa& kappa);

struct PipelineResult {
  std::vector<Glyph> glyphs;
  Units threshold = 0;
  // Classes produced by the algorithm (before pattern de-duplication).
  int classes = 0;
  Codebook codebook;
  std::vector<Residual> residuals;  // lossless mode only
  SizeReport sizes;
  // c + delta of the pattern set the algorithm settled on.
  Units objective = 0;
  std::optional<Solution> solution;
  std::optional<Partition> partition;
  // Class counts per k-means round, when k-means ran.
  std::vector<int> kmeans_class_counts;
  Bitmap reconstruction;
};

PipelineResult RunPipeline(const Bitmap& page, const PipelineConfig& config);

// c + delta of a partition's representatives (real vertices and centroids).
Units PartitionObjective(const Partition& partition,
                         const DistanceOracle& oracle);

// Small metric instance for guarantee campaigns: n noisy glyphs drawn from a
// few random shapes, seeded.
DistanceOracle RandomGlyphInstance(std::uint64_t seed, int n,
                                   const CostModel& model = {});

}  // namespace glyphbook

#endif  // GLYPHBOOK_PIPELINE_H_
