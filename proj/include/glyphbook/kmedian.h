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

//
// Glyph partitioning: First-Fit, modified k-means, greedy fixed-cost
// k-median and its two k-means combinations, plus the exhaustive optimum
// and the empirical guarantee checks used to validate the greedy.
//

#ifndef GLYPHBOOK_KMEDIAN_H_
#define GLYPHBOOK_KMEDIAN_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glyphbook/glyph.h"
#include "glyphbook/metric.h"

namespace glyphbook {

// ---------------------------------------------------------------------------
// Partitions

struct Partition {
  struct Class {
    std::vector<int> members;
    // Vertex whose glyph is the class pattern, or -1 when the pattern is a
    // synthesized centroid held in `pattern`.
    int representative = -1;
    std::optional<Glyph> pattern;
  };
  std::vector<Class> classes;
  // Glyph order the partition was built in.
  std::vector<int> order;

  int size() const { return static_cast<int>(classes.size()); }
  // Throws std::logic_error unless the classes are non-empty, disjoint and
  // cover 0..n-1.
  void Validate(int n) const;
};

// Single pass over `order`. A glyph joins the first class whose FIRST member
// f satisfies distance(glyph, f) < threshold, else it opens a new class.
Partition FirstFit(std::span<const int> order,
                   const std::function<Units(int glyph, int first)>& distance,
                   Units threshold);

// First-Fit over glyphs in index order with GlyphDistance.
Partition FirstFit(std::span<const Glyph> glyphs, const CostModel& model,
                   Units threshold);

enum class MatchMode { kFirstMatch, kBestMatch };

const char* ToString(MatchMode mode);

struct RefinementResult {
  Partition partition;
  // Class count of the start partition followed by one entry per round.
  std::vector<int> class_counts;
  int rounds() const { return static_cast<int>(class_counts.size()) - 1; }
};

inline constexpr int kUnboundedDecrease = std::numeric_limits<int>::max();

// Average-threshold-reassign rounds. Each round replaces every class pattern
// by the thresholded average of its members (keeping the old pattern when
// the average is degenerate), then reassigns every glyph, in index order, to
// the first (or nearest) pattern within `threshold`; a glyph matching none
// seeds a singleton class that later glyphs may join. Empty classes are
// dropped. Rounds continue while the class count falls by at least
// `min_decrease` (>= 1); the last partition with the fewest classes wins.
RefinementResult ModifiedKMeans(const Partition& start,
                                std::span<const Glyph> glyphs,
                                const CostModel& model, MatchMode mode,
                                Units threshold, int min_decrease);

// ---------------------------------------------------------------------------
// Fixed-cost k-median

// Sum over v of min(d(v, S), c(v)); d(v, {}) is infinite.
Units CappedDistortion(std::span<const int> set, const DistanceOracle& oracle);

inline constexpr int kSelfCoded = -1;

struct CentroidStep {
  double rate_before = 0;
  double rate_after = 0;
  int members = 0;
};

struct GreedyStep {
  // Vertex index, or n + k for the k-th synthesized centroid.
  int vertex = 0;
  Units cost = 0;
  Units delta_before = 0;
  Units delta_after = 0;
  double rate = 0;
  // Centroid replacements accepted before this pick (k-means variant only).
  std::vector<CentroidStep> refinements;
  bool refinement_cap_hit = false;
};

struct Solution {
  int n = 0;
  // Chosen centers in pick order. Ids >= n name synthesized[id - n].
  std::vector<int> chosen;
  std::vector<Glyph> synthesized;
  // Per vertex: the serving center id, or kSelfCoded when c(v) <= d(v, S).
  std::vector<int> assignment;
  Units cost = 0;
  Units capped_distortion = 0;
  // Uncapped d(S); absent when S is empty.
  std::optional<Units> true_distortion;
  Units objective = 0;
  // delta of the empty set, i.e. the sum of all costs.
  Units initial_delta = 0;
  std::vector<GreedyStep> trace;

  // Chosen ids that are real vertices, sorted.
  std::vector<int> ChosenVertices() const;
  int SelfCodedCount() const;
  std::string ToJson(const Kappa& kappa) const;
};

// Evaluates an arbitrary center set: real vertices plus synthesized patterns
// (which need an oracle with glyphs). Fills everything but the trace.
Solution EvaluateCenters(const DistanceOracle& oracle,
                         std::span<const int> vertices,
                         std::span<const Glyph> synthesized = {});

// Greedy: repeatedly add the vertex of highest marginal drop in capped
// distortion per unit cost (lowest index on ties) while that strictly lowers
// cost plus capped distortion.
Solution GreedyKMedian(const DistanceOracle& oracle);

inline constexpr int kDefaultCentroidIterations = 32;

// Greedy with the candidate repeatedly replaced by the centroid of the
// vertices it would serve, while that raises the rate by more than
// `epsilon`. Needs an oracle built from glyphs.
Solution GkmWithKMeans(const DistanceOracle& oracle, double epsilon = 0.0,
                       int max_centroid_iterations =
                           kDefaultCentroidIterations);

// Classes implied by a solution: one per used center, plus a singleton per
// self-coded vertex, ordered by smallest member.
Partition PartitionFromSolution(const Solution& solution);

struct GkmThenKMeansResult {
  Solution greedy;
  RefinementResult refinement;
  int initial_classes() const { return refinement.class_counts.front(); }
  int final_classes() const { return refinement.partition.size(); }
};

GkmThenKMeansResult GkmThenKMeans(const DistanceOracle& oracle,
                                  Units threshold, int min_decrease,
                                  MatchMode mode = MatchMode::kFirstMatch);

// ---------------------------------------------------------------------------
// Exhaustive optimum and guarantee checks

inline constexpr int kBruteForceMaxVertices = 20;

class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptResult {
  std::vector<int> set;
  Units cost = 0;
  Units distortion = 0;
  Units objective = 0;
};

// Minimizes c(S) + d(S) over non-empty S. Ties prefer smaller |S|, then the
// lexicographically smaller sorted set. Refuses n > kBruteForceMaxVertices.
OptResult BruteForceOpt(const DistanceOracle& oracle);

struct ClaimCheck {
  int step = 0;  // prefix length t
  Units cost = 0;
  Units delta = 0;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  bool holds = true;
};

struct GuaranteeReport {
  // Set when delta(empty) <= d(OPT): the ratio is undefined.
  bool claim_vacuous = false;
  // Prefixes with delta(S_t) <= d(OPT) are skipped.
  int claim_skipped = 0;
  std::vector<ClaimCheck> claim_checks;
  double objective = 0;
  std::optional<double> objective_true;  // c(S) + d(S), S non-empty
  double corollary1_bound = 0;
  double corollary1_slack = 0;
  double corollary2_bound = 0;
  double corollary2_slack = 0;

  int ClaimViolations() const;
  bool Corollary1Holds() const;
  bool Corollary2Holds() const;
  bool passed() const;
  std::string ToJson() const;
};

// Floating-point allowance when comparing against exp() and ln() bounds.
inline constexpr double kBoundTolerance = 1e-9;

// Checks, for every greedy prefix, the exponential decay of the capped
// distortion toward d(OPT), and the two approximation bounds on the returned
// objective c(S) + delta(S).
GuaranteeReport CheckGuarantees(const Solution& greedy, const OptResult& opt,
                                int n);

inline constexpr int kSupermodularityMaxVertices = 14;

struct SupermodularityReport {
  bool passed = true;
  std::int64_t checked = 0;
  std::string counterexample;
};

// Exhaustive: delta is nonincreasing and, for all S within T and v outside T,
// delta(S) - delta(S + v) >= delta(T) - delta(T + v).
SupermodularityReport CheckSupermodularity(const DistanceOracle& oracle);

}  // namespace glyphbook

#endif  // GLYPHBOOK_KMEDIAN_H_
