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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "glyphbook/kmedian.h"
#include "json.hpp"

namespace glyphbook {

using json = nlohmann::ordered_json;

Units CappedDistortion(std::span<const int> set,
                       const DistanceOracle& oracle) {
  Units total = 0;
  for (int v = 0; v < oracle.size(); ++v) {
    Units best = oracle.cost(v);
    for (int w : set) best = std::min(best, oracle.distance(v, w));
    total += best;
  }
  return total;
}

std::vector<int> Solution::ChosenVertices() const {
  std::vector<int> out;
  for (int id : chosen) {
    if (id < n) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Solution::SelfCodedCount() const {
  return static_cast<int>(
      std::count(assignment.begin(), assignment.end(), kSelfCoded));
}

std::string Solution::ToJson(const Kappa& kappa) const {
  json j;
  j["n"] = n;
  j["chosen"] = chosen;
  j["synthesized"] = synthesized.size();
  j["assignment"] = assignment;
  j["cost_units"] = cost;
  j["capped_distortion_units"] = capped_distortion;
  if (true_distortion) {
    j["true_distortion_units"] = *true_distortion;
  } else {
    j["true_distortion_units"] = nullptr;
  }
  j["objective_units"] = objective;
  j["kappa"] = kappa.ToString();
  j["objective_bits"] = kappa.Bits(objective);
  json trace_json = json::array();
  for (const GreedyStep& s : trace) {
    json e;
    e["vertex"] = s.vertex;
    e["cost"] = s.cost;
    e["delta_before"] = s.delta_before;
    e["delta_after"] = s.delta_after;
    e["rate"] = s.rate;
    if (!s.refinements.empty() || s.refinement_cap_hit) {
      json r = json::array();
      for (const CentroidStep& c : s.refinements) {
        r.push_back({{"rate_before", c.rate_before},
                     {"rate_after", c.rate_after},
                     {"members", c.members}});
      }
      e["refinements"] = std::move(r);
      e["refinement_cap_hit"] = s.refinement_cap_hit;
    }
    trace_json.push_back(std::move(e));
  }
  j["trace"] = std::move(trace_json);
  return j.dump();
}

namespace {

// A candidate or chosen center: the distance column d(w, center) over all
// vertices and its cost.
struct Center {
  int id = 0;
  Units cost = 0;
  std::vector<Units> column;
};

Center RealCenter(const DistanceOracle& oracle, int v) {
  Center c{v, oracle.cost(v), std::vector<Units>(oracle.size())};
  for (int w = 0; w < oracle.size(); ++w) c.column[w] = oracle.distance(w, v);
  return c;
}

Center SyntheticCenter(const DistanceOracle& oracle, const Glyph& pattern,
                       int id) {
  const auto& glyphs = oracle.glyphs();
  Center c{id, GlyphCost(pattern, oracle.model()),
           std::vector<Units>(oracle.size())};
  for (int w = 0; w < oracle.size(); ++w) {
    c.column[w] = GlyphDistance(glyphs[w], pattern, oracle.model());
  }
  return c;
}

Units Gain(const Center& c, const std::vector<Units>& served) {
  Units gain = 0;
  for (std::size_t w = 0; w < served.size(); ++w) {
    if (c.column[w] < served[w]) gain += served[w] - c.column[w];
  }
  return gain;
}

// gain_a / cost_a  vs  gain_b / cost_b, exactly.
int CompareRates(Units gain_a, Units cost_a, Units gain_b, Units cost_b) {
  const __int128 lhs = static_cast<__int128>(gain_a) * cost_b;
  const __int128 rhs = static_cast<__int128>(gain_b) * cost_a;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// True iff gain_a / cost_a > gain_b / cost_b + epsilon.
bool RateExceeds(Units gain_a, Units cost_a, Units gain_b, Units cost_b,
                 double epsilon) {
  if (std::isinf(epsilon)) return false;
  if (epsilon == 0.0) return CompareRates(gain_a, cost_a, gain_b, cost_b) > 0;
  const long double a = static_cast<long double>(gain_a) / cost_a;
  const long double b = static_cast<long double>(gain_b) / cost_b;
  return a > b + epsilon;
}

double Rate(Units gain, Units cost) {
  return static_cast<double>(gain) / static_cast<double>(cost);
}

Solution Evaluate(const DistanceOracle& oracle,
                  const std::vector<Center>& centers,
                  std::vector<Glyph> synthesized) {
  const int n = oracle.size();
  Solution s;
  s.n = n;
  s.synthesized = std::move(synthesized);
  s.assignment.assign(n, kSelfCoded);
  for (const Center& c : centers) {
    s.chosen.push_back(c.id);
    s.cost += c.cost;
  }
  for (int v = 0; v < n; ++v) {
    s.initial_delta += oracle.cost(v);
    Units best = 0;
    int best_id = kSelfCoded;
    for (const Center& c : centers) {
      const Units d = c.column[v];
      if (best_id == kSelfCoded || d < best || (d == best && c.id < best_id)) {
        best = d;
        best_id = c.id;
      }
    }
    if (best_id != kSelfCoded && best < oracle.cost(v)) {
      s.assignment[v] = best_id;
      s.capped_distortion += best;
    } else {
      s.capped_distortion += oracle.cost(v);
    }
  }
  if (!centers.empty()) {
    Units total = 0;
    for (int v = 0; v < n; ++v) {
      Units best = std::numeric_limits<Units>::max();
      for (const Center& c : centers) {
        const Units d = c.id < n ? oracle.ExactDistance(v, c.id) : c.column[v];
        best = std::min(best, d);
      }
      total += best;
    }
    s.true_distortion = total;
  }
  s.objective = s.cost + s.capped_distortion;
  return s;
}

// For every candidate v, the vertices w with d(w, v) < c(w): the only ones
// whose capped term v can lower.
std::vector<std::vector<std::pair<int, Units>>> ServableLists(
    const DistanceOracle& oracle) {
  const int n = oracle.size();
  std::vector<std::vector<std::pair<int, Units>>> lists(n);
  for (int w = 0; w < n; ++w) {
    for (int v = 0; v < n; ++v) {
      const Units d = oracle.distance(w, v);
      if (d < oracle.cost(w)) lists[v].emplace_back(w, d);
    }
  }
  return lists;
}

struct Pick {
  int vertex = 0;
  Units gain = 0;
};

Pick BestRealCandidate(
    const DistanceOracle& oracle,
    const std::vector<std::vector<std::pair<int, Units>>>& servable,
    const std::vector<Units>& served) {
  Pick best{0, -1};
  for (int v = 0; v < oracle.size(); ++v) {
    Units gain = 0;
    for (auto [w, d] : servable[v]) {
      if (d < served[w]) gain += served[w] - d;
    }
    if (best.gain < 0 ||
        CompareRates(gain, oracle.cost(v), best.gain,
                     oracle.cost(best.vertex)) > 0) {
      best = {v, gain};
    }
  }
  return best;
}

}  // namespace

Solution EvaluateCenters(const DistanceOracle& oracle,
                         std::span<const int> vertices,
                         std::span<const Glyph> synthesized) {
  if (!synthesized.empty() && !oracle.has_glyphs()) {
    throw std::invalid_argument(
        "synthesized centers need an oracle built from glyphs");
  }
  std::vector<Center> centers;
  for (int v : vertices) centers.push_back(RealCenter(oracle, v));
  for (std::size_t k = 0; k < synthesized.size(); ++k) {
    centers.push_back(SyntheticCenter(oracle, synthesized[k],
                                      oracle.size() + static_cast<int>(k)));
  }
  return Evaluate(oracle, centers,
                  std::vector<Glyph>(synthesized.begin(), synthesized.end()));
}

Solution GreedyKMedian(const DistanceOracle& oracle) {
  const int n = oracle.size();
  if (n < 1) throw std::invalid_argument("GreedyKMedian: empty instance");
  const auto servable = ServableLists(oracle);

  std::vector<Units> served(oracle.costs());  // min(d(w, S), c(w))
  Units delta = std::accumulate(served.begin(), served.end(), Units{0});
  Units cost = 0;
  std::vector<Center> centers;
  std::vector<GreedyStep> trace;

  while (true) {
    const Pick pick = BestRealCandidate(oracle, servable, served);
    const Units c = oracle.cost(pick.vertex);
    // c(S') + delta(S') < c(S) + delta(S)  <=>  gain > c(v).
    if (!(cost + c + (delta - pick.gain) < cost + delta)) break;
    GreedyStep step;
    step.vertex = pick.vertex;
    step.cost = c;
    step.delta_before = delta;
    step.delta_after = delta - pick.gain;
    step.rate = Rate(pick.gain, c);
    for (auto [w, d] : servable[pick.vertex]) {
      served[w] = std::min(served[w], d);
    }
    delta = step.delta_after;
    cost += c;
    centers.push_back(RealCenter(oracle, pick.vertex));
    trace.push_back(step);
  }

  Solution s = Evaluate(oracle, centers, {});
  s.trace = std::move(trace);
  return s;
}

Solution GkmWithKMeans(const DistanceOracle& oracle, double epsilon,
                       int max_centroid_iterations) {
  const int n = oracle.size();
  if (n < 1) throw std::invalid_argument("GkmWithKMeans: empty instance");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  const bool refine = !std::isinf(epsilon);
  if (refine && !oracle.has_glyphs()) {
    throw std::invalid_argument("GkmWithKMeans needs an oracle with glyphs");
  }
  const auto servable = ServableLists(oracle);
  const auto& glyphs = oracle.glyphs();

  std::vector<Units> served(oracle.costs());
  Units delta = std::accumulate(served.begin(), served.end(), Units{0});
  Units cost = 0;
  std::vector<Center> centers;
  std::vector<Glyph> synthesized;
  std::vector<GreedyStep> trace;

  while (true) {
    const Pick pick = BestRealCandidate(oracle, servable, served);
    Center candidate = RealCenter(oracle, pick.vertex);
    Units candidate_gain = pick.gain;
    std::optional<Glyph> candidate_pattern;
    GreedyStep step;

    for (int it = 0; refine; ++it) {
      if (it == max_centroid_iterations) {
        step.refinement_cap_hit = true;
        break;
      }
      // Vertices the candidate would serve (or tie with their current term).
      std::vector<const Glyph*> members;
      for (int w = 0; w < n; ++w) {
        if (candidate.column[w] <= served[w]) members.push_back(&glyphs[w]);
      }
      Glyph centroid;
      try {
        centroid = MakeGlyph(
            AverageAndThreshold(std::span<const Glyph* const>(members)));
      } catch (const DegenerateCentroidError&) {
        break;
      }
      Center next = SyntheticCenter(
          oracle, centroid, n + static_cast<int>(synthesized.size()));
      const Units next_gain = Gain(next, served);
      if (!RateExceeds(next_gain, next.cost, candidate_gain, candidate.cost,
                       epsilon)) {
        break;
      }
      step.refinements.push_back({Rate(candidate_gain, candidate.cost),
                                  Rate(next_gain, next.cost),
                                  static_cast<int>(members.size())});
      candidate = std::move(next);
      candidate_gain = next_gain;
      candidate_pattern = std::move(centroid);
    }

    if (!(cost + candidate.cost + (delta - candidate_gain) < cost + delta)) {
      break;
    }
    step.vertex = candidate.id;
    step.cost = candidate.cost;
    step.delta_before = delta;
    step.delta_after = delta - candidate_gain;
    step.rate = Rate(candidate_gain, candidate.cost);
    for (int w = 0; w < n; ++w) {
      served[w] = std::min(served[w], candidate.column[w]);
    }
    delta = step.delta_after;
    cost += candidate.cost;
    if (candidate_pattern) synthesized.push_back(std::move(*candidate_pattern));
    centers.push_back(std::move(candidate));
    trace.push_back(std::move(step));
  }

  Solution s = Evaluate(oracle, centers, std::move(synthesized));
  s.trace = std::move(trace);
  return s;
}

Partition PartitionFromSolution(const Solution& solution) {
  const int n = solution.n;
  std::map<int, int> group_of_center;
  std::vector<std::vector<int>> groups;
  std::vector<int> center_of_group;
  for (int v = 0; v < n; ++v) {
    const int id = solution.assignment[v];
    if (id == kSelfCoded) {
      groups.push_back({v});
      center_of_group.push_back(v);
      continue;
    }
    auto [it, inserted] =
        group_of_center.try_emplace(id, static_cast<int>(groups.size()));
    if (inserted) {
      groups.emplace_back();
      center_of_group.push_back(id);
    }
    groups[it->second].push_back(v);
  }
  // Groups were opened in order of their smallest member.
  Partition p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Partition::Class c;
    c.members = std::move(groups[i]);
    const int id = center_of_group[i];
    if (id < n) {
      c.representative = id;
    } else {
      c.pattern = solution.synthesized[id - n];
    }
    p.classes.push_back(std::move(c));
  }
  return p;
}

GkmThenKMeansResult GkmThenKMeans(const DistanceOracle& oracle,
                                  Units threshold, int min_decrease,
                                  MatchMode mode) {
  if (!oracle.has_glyphs()) {
    throw std::invalid_argument("GkmThenKMeans needs an oracle with glyphs");
  }
  GkmThenKMeansResult r;
  r.greedy = GreedyKMedian(oracle);
  r.refinement =
      ModifiedKMeans(PartitionFromSolution(r.greedy), oracle.glyphs(),
                     oracle.model(), mode, threshold, min_decrease);
  return r;
}

}  // namespace glyphbook
