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

#ifndef GLYPHBOOK_METRIC_H_
#define GLYPHBOOK_METRIC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glyphbook/glyph.h"

namespace glyphbook {

// Costs and distances are integers in "kappa units": weighted pixel counts.
// Multiplying by kappa gives bits. Every algorithm compares units only, so
// its choices do not depend on kappa.
using Units = std::int64_t;

// Bits per pixel, kept as an exact positive fraction.
struct Kappa {
  std::int64_t num = 1;
  std::int64_t den = 1;

  // Accepts "1", "1.5", "3/2".
  static Kappa Parse(const std::string& text);
  double ToDouble() const { return static_cast<double>(num) / den; }
  double Bits(Units u) const { return static_cast<double>(u) * num / den; }
  // ceil(kappa * u) for u >= 0, exact.
  std::int64_t CeilBits(Units u) const { return (u * num + den - 1) / den; }
  std::string ToString() const;
};

enum class DistanceMode {
  // |ink(u) xor ink(v)| after anchor alignment. A metric.
  kInkHamming,
  // alpha * |ink(u) \ ink(v)| + beta * |ink(v) \ ink(u)|. Directed; exists
  // to exercise non-metric code paths.
  kAsymmetric,
};

struct CostModel {
  Kappa kappa;
  DistanceMode mode = DistanceMode::kInkHamming;
  std::int64_t alpha = 1;
  std::int64_t beta = 1;

  void Validate() const;
};

const char* ToString(DistanceMode mode);
DistanceMode ParseDistanceMode(const std::string& text);

// Number of ink pixels shared by u and v once their anchors coincide.
std::int64_t AlignedOverlap(const Glyph& u, const Glyph& v);

// c(g) in units: the ink area.
Units GlyphCost(const Glyph& g, const CostModel& model);
double GlyphCostBits(const Glyph& g, const CostModel& model);

// d(u, v) in units: the cost of coding glyph u given pattern v.
Units GlyphDistance(const Glyph& u, const Glyph& v, const CostModel& model);
double GlyphDistanceBits(const Glyph& u, const Glyph& v,
                         const CostModel& model);

// Vertex costs c(v) and directed distances d(u, v) over a glyph set, fully
// materialized at construction and immutable afterwards.
//
// With a prefilter slack, the entry d(u, v) is not computed when the cheap
// lower bound from ink counts already exceeds c(u) + slack. Such an entry
// stores the lower bound and is flagged as pruned. Every consumer that caps
// d(u, v) at c(u) sees the same capped value it would with the exact
// distance; ExactDistance recomputes pruned entries on demand.
class DistanceOracle {
 public:
  DistanceOracle() = default;

  // `prefilter_slack` of nullopt disables pruning.
  static DistanceOracle Build(std::vector<Glyph> glyphs,
                              const CostModel& model,
                              std::optional<Units> prefilter_slack =
                                  std::nullopt);

  // Abstract instance without glyphs. `distances` is row-major n x n,
  // distances[u * n + v] = d(u, v).
  static DistanceOracle FromMatrix(std::vector<Units> costs,
                                   std::vector<Units> distances,
                                   const CostModel& model = {});

  int size() const { return n_; }
  Units cost(int v) const { return costs_[v]; }
  Units distance(int u, int v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }
  bool pruned(int u, int v) const {
    return !pruned_.empty() && pruned_[static_cast<std::size_t>(u) * n_ + v];
  }
  Units ExactDistance(int u, int v) const;
  std::int64_t pruned_count() const { return pruned_count_; }

  const CostModel& model() const { return model_; }
  bool has_glyphs() const { return !glyphs_.empty(); }
  const std::vector<Glyph>& glyphs() const { return glyphs_; }
  const std::vector<Units>& costs() const { return costs_; }

  // JSON: {"n", "kappa": {"num","den"}, "mode", "alpha", "beta", "costs",
  // "distances": [[...], ...]}; values are integer units. Pruned entries are
  // written as their exact distances.
  std::string ToJson() const;
  static DistanceOracle FromJson(const std::string& text);

 private:
  int n_ = 0;
  CostModel model_;
  std::vector<Units> costs_;
  std::vector<Units> dist_;
  std::vector<char> pruned_;
  std::int64_t pruned_count_ = 0;
  std::vector<Glyph> glyphs_;
};

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::int64_t checked = 0;
  // Vertices of the first counterexample and a readable description.
  std::vector<int> counterexample;
  std::string detail;
};

struct MetricReport {
  std::vector<PropertyCheck> checks;
  bool passed() const;
  std::string ToJson() const;
};

// Checks identity (d(v,v) = 0), non-negativity, symmetry, the triangle
// inequality and c(v) <= c(u) + d(u,v). With `sample_triples` == 0 every
// pair and triple is checked; otherwise that many (u, v, w) triples are drawn
// uniformly with `seed`. Requires an oracle without pruned entries.
MetricReport VerifyMetricProperties(const DistanceOracle& oracle,
                                    std::int64_t sample_triples,
                                    std::uint64_t seed);

}  // namespace glyphbook

#endif  // GLYPHBOOK_METRIC_H_
