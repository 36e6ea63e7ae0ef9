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

#include "glyphbook/pipeline.h"

#include <algorithm>
#include <cmath>

#include "glyphbook/corpus.h"

namespace glyphbook {

const char* ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kFirstFit:
      return "first_fit";
    case Algorithm::kFirstFitKMeans:
      return "ff_kmeans";
    case Algorithm::kGkm:
      return "gkm";
    case Algorithm::kGkmWithKMeans:
      return "gkm_kmeans";
    case Algorithm::kGkmThenKMeans:
      return "gkm_then_kmeans";
  }
  return "?";
}

const std::vector<Algorithm>& AllAlgorithms() {
  static const std::vector<Algorithm> all = {
      Algorithm::kFirstFit, Algorithm::kFirstFitKMeans, Algorithm::kGkm,
      Algorithm::kGkmWithKMeans, Algorithm::kGkmThenKMeans};
  return all;
}

Algorithm ParseAlgorithm(const std::string& text) {
  for (Algorithm a : AllAlgorithms()) {
    if (text == ToString(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + text + "'");
}

Units DefaultThresholdUnits(const std::vector<Glyph>& glyphs, double noise) {
  if (glyphs.empty()) return 1;
  std::int64_t boundary = 0;
  for (const Glyph& g : glyphs) boundary += BoundaryLength(g.bitmap);
  const double mean = static_cast<double>(boundary) / glyphs.size();
  return std::max<Units>(1, static_cast<Units>(std::ceil(noise * mean * 4)));
}

Units ThresholdUnitsFromBits(double bits, const Kappa& kappa) {
  if (!(bits >= 0)) throw std::invalid_argument("threshold must be >= 0");
  return static_cast<Units>(
      std::ceil(bits * static_cast<double>(kappa.den) / kappa.num));
}

Units PartitionObjective(const Partition& partition,
                         const DistanceOracle& oracle) {
  std::vector<int> vertices;
  std::vector<Glyph> synthesized;
  for (const auto& c : partition.classes) {
    if (c.pattern) {
      synthesized.push_back(*c.pattern);
    } else {
      vertices.push_back(c.representative >= 0 ? c.representative
                                               : c.members.front());
    }
  }
  return EvaluateCenters(oracle, vertices, synthesized).objective;
}

PipelineResult RunPipeline(const Bitmap& page, const PipelineConfig& config) {
  config.model.Validate();
  PipelineResult r;
  r.glyphs = ExtractGlyphs(page, config.connectivity);
  r.threshold = config.threshold_bits
                    ? ThresholdUnitsFromBits(*config.threshold_bits,
                                             config.model.kappa)
                    : DefaultThresholdUnits(r.glyphs, config.noise_hint);
  if (r.glyphs.empty()) {
    r.codebook.kappa = config.model.kappa;
    r.codebook.page_width = page.width();
    r.codebook.page_height = page.height();
    r.sizes = EstimateSizes(r.codebook, r.glyphs, page, config.mode);
    r.reconstruction = Bitmap(page.width(), page.height());
    return r;
  }

  const DistanceOracle oracle =
      DistanceOracle::Build(r.glyphs, config.model, config.prefilter_slack);
  switch (config.algorithm) {
    case Algorithm::kFirstFit:
      r.partition = FirstFit(r.glyphs, config.model, r.threshold);
      break;
    case Algorithm::kFirstFitKMeans: {
      RefinementResult km = ModifiedKMeans(
          FirstFit(r.glyphs, config.model, r.threshold), r.glyphs,
          config.model, config.kmeans_mode, r.threshold,
          config.kmeans_min_decrease);
      r.partition = std::move(km.partition);
      r.kmeans_class_counts = std::move(km.class_counts);
      break;
    }
    case Algorithm::kGkm:
      r.solution = GreedyKMedian(oracle);
      break;
    case Algorithm::kGkmWithKMeans:
      r.solution = GkmWithKMeans(oracle, config.epsilon);
      break;
    case Algorithm::kGkmThenKMeans: {
      GkmThenKMeansResult g =
          GkmThenKMeans(oracle, r.threshold, config.kmeans_min_decrease,
                        config.kmeans_mode);
      r.partition = std::move(g.refinement.partition);
      r.kmeans_class_counts = std::move(g.refinement.class_counts);
      break;
    }
  }

  if (r.solution) {
    r.classes = PartitionFromSolution(*r.solution).size();
    r.objective = r.solution->objective;
    r.codebook = MaterializeCodebook(*r.solution, r.glyphs, config.model,
                                     page.width(), page.height());
  } else {
    r.classes = r.partition->size();
    r.objective = PartitionObjective(*r.partition, oracle);
    r.codebook = MaterializeCodebook(*r.partition, r.glyphs, config.model,
                                     page.width(), page.height());
  }
  if (config.mode == CodingMode::kLossless) {
    r.residuals = ComputeResiduals(r.codebook, r.glyphs);
  }
  r.sizes = EstimateSizes(r.codebook, r.glyphs, page, config.mode);
  r.reconstruction = Reconstruct(r.codebook, config.mode, r.residuals);
  return r;
}

DistanceOracle RandomGlyphInstance(std::uint64_t seed, int n,
                                   const CostModel& model) {
  CorpusSpec spec;
  spec.base_shape_count = 1 + static_cast<int>(seed % std::min(n, 4));
  spec.glyph_instance_count = n;
  spec.noise_flip_probability = 0.15;
  spec.shape_area_min = 4;
  spec.shape_area_max = 16;
  spec.seed = seed;
  const Corpus corpus = GenerateCorpus(spec);
  return DistanceOracle::Build(ExtractGlyphs(corpus.page), model);
}

}  // namespace glyphbook
