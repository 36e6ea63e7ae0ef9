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
#include <bit>
#include <cmath>

#include "glyphbook/kmedian.h"
#include "json.hpp"

namespace glyphbook {

using json = nlohmann::ordered_json;

namespace {

std::vector<int> MaskToSet(std::uint32_t mask) {
  std::vector<int> out;
  for (int v = 0; mask; ++v, mask >>= 1) {
    if (mask & 1u) out.push_back(v);
  }
  return out;
}

}  // namespace

OptResult BruteForceOpt(const DistanceOracle& oracle) {
  const int n = oracle.size();
  if (n > kBruteForceMaxVertices) {
    throw InstanceTooLargeError(
        "exhaustive optimum is capped at n <= " +
        std::to_string(kBruteForceMaxVertices) + " vertices (got n = " +
        std::to_string(n) + ")");
  }
  std::vector<Units> d(static_cast<std::size_t>(n) * n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) d[v * n + w] = oracle.ExactDistance(v, w);
  }

  OptResult best;
  std::uint32_t best_mask = 0;
  std::vector<int> members;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    members.clear();
    Units cost = 0;
    for (int w = 0; w < n; ++w) {
      if (mask >> w & 1u) {
        members.push_back(w);
        cost += oracle.cost(w);
      }
    }
    Units distortion = 0;
    for (int v = 0; v < n; ++v) {
      Units m = d[v * n + members[0]];
      for (std::size_t i = 1; i < members.size(); ++i) {
        m = std::min(m, d[v * n + members[i]]);
      }
      distortion += m;
    }
    const Units objective = cost + distortion;
    bool better = best_mask == 0 || objective < best.objective;
    if (!better && objective == best.objective) {
      const int size = std::popcount(mask);
      const int best_size = std::popcount(best_mask);
      better = size < best_size ||
               (size == best_size && members < MaskToSet(best_mask));
    }
    if (better) {
      best_mask = mask;
      best.cost = cost;
      best.distortion = distortion;
      best.objective = objective;
    }
  }
  best.set = MaskToSet(best_mask);
  return best;
}

int GuaranteeReport::ClaimViolations() const {
  return static_cast<int>(
      std::count_if(claim_checks.begin(), claim_checks.end(),
                    [](const ClaimCheck& c) { return !c.holds; }));
}

bool GuaranteeReport::Corollary1Holds() const {
  return corollary1_slack >= -kBoundTolerance * std::max(1.0, corollary1_bound);
}

bool GuaranteeReport::Corollary2Holds() const {
  return corollary2_slack >= -kBoundTolerance * std::max(1.0, corollary2_bound);
}

bool GuaranteeReport::passed() const {
  return ClaimViolations() == 0 && Corollary1Holds() && Corollary2Holds();
}

std::string GuaranteeReport::ToJson() const {
  json checks = json::array();
  for (const ClaimCheck& c : claim_checks) {
    checks.push_back({{"step", c.step},
                      {"cost", c.cost},
                      {"delta", c.delta},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"slack", c.slack},
                      {"holds", c.holds}});
  }
  json j;
  j["claim_vacuous"] = claim_vacuous;
  j["claim_skipped"] = claim_skipped;
  j["claim_checks"] = std::move(checks);
  j["objective"] = objective;
  if (objective_true) {
    j["objective_true"] = *objective_true;
  } else {
    j["objective_true"] = nullptr;
  }
  j["corollary1_bound"] = corollary1_bound;
  j["corollary1_slack"] = corollary1_slack;
  j["corollary_bound"] = corollary2_bound;
  j["corollary_slack"] = corollary2_slack;
  j["passed"] = passed();
  return j.dump();
}

GuaranteeReport CheckGuarantees(const Solution& greedy, const OptResult& opt,
                                int n) {
  GuaranteeReport r;
  const double d_opt = static_cast<double>(opt.distortion);
  const double c_opt = static_cast<double>(opt.cost);
  const Units denom = greedy.initial_delta - opt.distortion;
  r.claim_vacuous = denom <= 0;

  Units prefix_cost = 0;
  for (std::size_t t = 0; t <= greedy.trace.size(); ++t) {
    if (t > 0) prefix_cost += greedy.trace[t - 1].cost;
    const Units delta =
        t == 0 ? greedy.initial_delta : greedy.trace[t - 1].delta_after;
    if (r.claim_vacuous || delta <= opt.distortion) {
      ++r.claim_skipped;
      continue;
    }
    ClaimCheck c;
    c.step = static_cast<int>(t);
    c.cost = prefix_cost;
    c.delta = delta;
    c.lhs = static_cast<double>(delta - opt.distortion) /
            static_cast<double>(denom);
    c.rhs = prefix_cost == 0 ? 1.0 : std::exp(-prefix_cost / c_opt);
    c.slack = c.rhs - c.lhs;
    c.holds = c.slack >= -kBoundTolerance;
    r.claim_checks.push_back(c);
  }

  r.objective = static_cast<double>(greedy.objective);
  if (greedy.true_distortion) {
    r.objective_true =
        static_cast<double>(greedy.cost + *greedy.true_distortion);
  }
  const double delta_empty = static_cast<double>(greedy.initial_delta);
  r.corollary1_bound = d_opt + (1.0 + std::log(delta_empty / c_opt)) * c_opt;
  r.corollary1_slack = r.corollary1_bound - r.objective;
  r.corollary2_bound = 2.0 * d_opt + (1.0 + std::log(double(n))) * c_opt;
  r.corollary2_slack = r.corollary2_bound - r.objective;
  return r;
}

SupermodularityReport CheckSupermodularity(const DistanceOracle& oracle) {
  const int n = oracle.size();
  if (n > kSupermodularityMaxVertices) {
    throw InstanceTooLargeError(
        "exhaustive supermodularity check is capped at n <= " +
        std::to_string(kSupermodularityMaxVertices) + " vertices (got n = " +
        std::to_string(n) + ")");
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Units> delta(std::size_t{full} + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    Units total = 0;
    for (int v = 0; v < n; ++v) {
      Units best = oracle.cost(v);
      for (int w = 0; w < n; ++w) {
        if (mask >> w & 1u) best = std::min(best, oracle.distance(v, w));
      }
      total += best;
    }
    delta[mask] = total;
  }

  SupermodularityReport r;
  auto set_string = [](std::uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int v : MaskToSet(mask)) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  };
  for (std::uint32_t t = 0; t <= full; ++t) {
    for (int v = 0; v < n; ++v) {
      if (t >> v & 1u) continue;
      const std::uint32_t bit = std::uint32_t{1} << v;
      const Units drop_t = delta[t] - delta[t | bit];
      ++r.checked;
      if (drop_t < 0 && r.passed) {
        r.passed = false;
        r.counterexample = "delta increases adding " + std::to_string(v) +
                           " to " + set_string(t);
      }
      // Every S within T, including T itself and the empty set.
      for (std::uint32_t s = t;; s = (s - 1) & t) {
        ++r.checked;
        const Units drop_s = delta[s] - delta[s | bit];
        if (drop_s < drop_t && r.passed) {
          r.passed = false;
          r.counterexample = "S=" + set_string(s) + " T=" + set_string(t) +
                             " v=" + std::to_string(v) + ": drop " +
                             std::to_string(drop_s) + " < " +
                             std::to_string(drop_t);
        }
        if (s == 0) break;
      }
    }
  }
  return r;
}

}  // namespace glyphbook
