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

#include <numeric>

#include "glyphbook/kmedian.h"

namespace glyphbook {

void Partition::Validate(int n) const {
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (const Class& c : classes) {
    if (c.members.empty()) throw std::logic_error("partition has empty class");
    for (int v : c.members) {
      if (v < 0 || v >= n) throw std::logic_error("member out of range");
      if (seen[v]) throw std::logic_error("classes overlap");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != n) throw std::logic_error("classes do not cover all glyphs");
}

Partition FirstFit(std::span<const int> order,
                   const std::function<Units(int glyph, int first)>& distance,
                   Units threshold) {
  Partition p;
  p.order.assign(order.begin(), order.end());
  for (int glyph : order) {
    bool placed = false;
    for (auto& c : p.classes) {
      if (distance(glyph, c.members.front()) < threshold) {
        c.members.push_back(glyph);
        placed = true;
        break;
      }
    }
    if (!placed) {
      Partition::Class c;
      c.members.push_back(glyph);
      c.representative = glyph;
      p.classes.push_back(std::move(c));
    }
  }
  return p;
}

Partition FirstFit(std::span<const Glyph> glyphs, const CostModel& model,
                   Units threshold) {
  std::vector<int> order(glyphs.size());
  std::iota(order.begin(), order.end(), 0);
  return FirstFit(
      order,
      [&](int g, int first) {
        return GlyphDistance(glyphs[g], glyphs[first], model);
      },
      threshold);
}

const char* ToString(MatchMode mode) {
  return mode == MatchMode::kFirstMatch ? "first_match" : "best_match";
}

namespace {

struct Pattern {
  Glyph glyph;
  int vertex = -1;  // -1 for a synthesized centroid
};

Pattern StartPattern(const Partition::Class& c,
                     std::span<const Glyph> glyphs) {
  if (c.pattern) return {*c.pattern, c.representative};
  const int v = c.representative >= 0 ? c.representative : c.members.front();
  return {glyphs[v], v};
}

// One average-threshold-reassign round.
Partition RefineOnce(const std::vector<Partition::Class>& classes,
                     std::vector<Pattern>& previous,
                     std::span<const Glyph> glyphs, const CostModel& model,
                     MatchMode mode, Units threshold) {
  std::vector<Pattern> patterns;
  patterns.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::vector<const Glyph*> members;
    members.reserve(classes[i].members.size());
    for (int v : classes[i].members) members.push_back(&glyphs[v]);
    try {
      patterns.push_back({MakeGlyph(AverageAndThreshold(
                              std::span<const Glyph* const>(members))),
                          -1});
    } catch (const DegenerateCentroidError&) {
      patterns.push_back(previous[i]);
    }
  }

  std::vector<std::vector<int>> assigned(patterns.size());
  for (int g = 0; g < static_cast<int>(glyphs.size()); ++g) {
    int match = -1;
    Units best = 0;
    for (int p = 0; p < static_cast<int>(patterns.size()); ++p) {
      const Units d = GlyphDistance(glyphs[g], patterns[p].glyph, model);
      if (d >= threshold) continue;
      if (match < 0 || d < best) {
        match = p;
        best = d;
      }
      if (mode == MatchMode::kFirstMatch) break;
    }
    if (match < 0) {
      patterns.push_back({glyphs[g], g});
      assigned.emplace_back();
      match = static_cast<int>(patterns.size()) - 1;
    }
    assigned[match].push_back(g);
  }

  Partition out;
  out.order.resize(glyphs.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  previous.clear();
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    if (assigned[p].empty()) continue;
    Partition::Class c;
    c.members = std::move(assigned[p]);
    c.representative = patterns[p].vertex;
    if (patterns[p].vertex < 0) c.pattern = patterns[p].glyph;
    out.classes.push_back(std::move(c));
    previous.push_back(patterns[p]);
  }
  return out;
}

}  // namespace

RefinementResult ModifiedKMeans(const Partition& start,
                                std::span<const Glyph> glyphs,
                                const CostModel& model, MatchMode mode,
                                Units threshold, int min_decrease) {
  if (min_decrease < 1) {
    throw std::invalid_argument("k-means min_decrease must be >= 1");
  }
  start.Validate(static_cast<int>(glyphs.size()));

  RefinementResult result;
  result.partition = start;
  result.class_counts.push_back(start.size());

  std::vector<Pattern> patterns;
  for (const auto& c : start.classes) patterns.push_back(StartPattern(c, glyphs));

  Partition current = start;
  while (true) {
    Partition next = RefineOnce(current.classes, patterns, glyphs, model, mode,
                                threshold);
    const int before = current.size();
    const int after = next.size();
    result.class_counts.push_back(after);
    if (after <= result.partition.size()) result.partition = next;
    current = std::move(next);
    if (static_cast<std::int64_t>(before) - after < min_decrease) break;
  }
  return result;
}

}  // namespace glyphbook
