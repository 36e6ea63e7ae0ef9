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

#include "glyphbook/metric.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace glyphbook {

using json = nlohmann::ordered_json;

Kappa Kappa::Parse(const std::string& text) {
  Kappa k;
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
        s.size() > 15) {
      throw std::invalid_argument("bad kappa: '" + text + "'");
    }
    return std::stoll(s);
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    k.num = parse_int(text.substr(0, slash));
    k.den = parse_int(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 9) throw std::invalid_argument("bad kappa: '" + text + "'");
    k.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) k.den *= 10;
    k.num = (whole.empty() ? 0 : parse_int(whole)) * k.den +
            (frac.empty() ? 0 : parse_int(frac));
  } else {
    k.num = parse_int(text);
  }
  if (k.num <= 0 || k.den <= 0) {
    throw std::invalid_argument("kappa must be positive: '" + text + "'");
  }
  const std::int64_t g = std::gcd(k.num, k.den);
  k.num /= g;
  k.den /= g;
  return k;
}

std::string Kappa::ToString() const {
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

void CostModel::Validate() const {
  if (kappa.num <= 0 || kappa.den <= 0) {
    throw std::invalid_argument("kappa must be positive");
  }
  if (alpha < 0 || beta < 0) {
    throw std::invalid_argument("alpha and beta must be non-negative");
  }
  if (mode == DistanceMode::kInkHamming && (alpha != 1 || beta != 1)) {
    throw std::invalid_argument("ink_hamming mode uses alpha = beta = 1");
  }
}

const char* ToString(DistanceMode mode) {
  return mode == DistanceMode::kInkHamming ? "ink_hamming"
                                           : "asymmetric_surrogate";
}

DistanceMode ParseDistanceMode(const std::string& text) {
  if (text == "ink_hamming") return DistanceMode::kInkHamming;
  if (text == "asymmetric_surrogate" || text == "asymmetric") {
    return DistanceMode::kAsymmetric;
  }
  throw std::invalid_argument("unknown distance mode '" + text + "'");
}

std::int64_t AlignedOverlap(const Glyph& u, const Glyph& v) {
  // Pixel (x, y) of u sits on pixel (x + ox, y + oy) of v.
  const int ox = v.anchor_dx - u.anchor_dx;
  const int oy = v.anchor_dy - u.anchor_dy;
  const int y_begin = std::max(0, -oy);
  const int y_end = std::min(u.bitmap.height(), v.bitmap.height() - oy);
  std::int64_t overlap = 0;
  for (int y = y_begin; y < y_end; ++y) {
    const auto row = u.bitmap.Row(y);
    for (int i = 0; i < u.bitmap.words_per_row(); ++i) {
      if (row[i] == 0) continue;
      overlap += std::popcount(
          row[i] & v.bitmap.Extract64(y + oy, std::int64_t{64} * i + ox));
    }
  }
  return overlap;
}

Units GlyphCost(const Glyph& g, const CostModel&) { return g.ink_count; }

double GlyphCostBits(const Glyph& g, const CostModel& model) {
  return model.kappa.Bits(GlyphCost(g, model));
}

Units GlyphDistance(const Glyph& u, const Glyph& v, const CostModel& model) {
  const std::int64_t overlap = AlignedOverlap(u, v);
  const std::int64_t only_u = u.ink_count - overlap;
  const std::int64_t only_v = v.ink_count - overlap;
  if (model.mode == DistanceMode::kInkHamming) return only_u + only_v;
  return model.alpha * only_u + model.beta * only_v;
}

double GlyphDistanceBits(const Glyph& u, const Glyph& v,
                         const CostModel& model) {
  return model.kappa.Bits(GlyphDistance(u, v, model));
}

namespace {

// Lower bound on d(u, v) from ink counts alone: |ink(u) \ ink(v)| is at least
// ink(u) - ink(v), and symmetrically.
Units InkCountLowerBound(const Glyph& u, const Glyph& v,
                         const CostModel& model) {
  const std::int64_t a = std::max<std::int64_t>(0, u.ink_count - v.ink_count);
  const std::int64_t b = std::max<std::int64_t>(0, v.ink_count - u.ink_count);
  if (model.mode == DistanceMode::kInkHamming) return a + b;
  return model.alpha * a + model.beta * b;
}

}  // namespace

DistanceOracle DistanceOracle::Build(std::vector<Glyph> glyphs,
                                     const CostModel& model,
                                     std::optional<Units> prefilter_slack) {
  model.Validate();
  if (glyphs.empty()) {
    throw std::invalid_argument("DistanceOracle needs at least one glyph");
  }
  DistanceOracle o;
  o.n_ = static_cast<int>(glyphs.size());
  o.model_ = model;
  o.glyphs_ = std::move(glyphs);
  const std::size_t n = o.n_;
  o.costs_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    o.costs_[v] = GlyphCost(o.glyphs_[v], model);
  }
  o.dist_.assign(n * n, 0);
  if (prefilter_slack) o.pruned_.assign(n * n, 0);

  const bool symmetric = model.mode == DistanceMode::kInkHamming;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = symmetric ? u + 1 : 0; v < n; ++v) {
      if (u == v) continue;
      const Glyph& gu = o.glyphs_[u];
      const Glyph& gv = o.glyphs_[v];
      if (prefilter_slack) {
        const Units lb_uv = InkCountLowerBound(gu, gv, model);
        const Units lb_vu = InkCountLowerBound(gv, gu, model);
        const bool prune_uv = lb_uv > o.costs_[u] + *prefilter_slack;
        const bool prune_vu = lb_vu > o.costs_[v] + *prefilter_slack;
        if (symmetric && prune_uv && prune_vu) {
          o.dist_[u * n + v] = lb_uv;
          o.dist_[v * n + u] = lb_vu;
          o.pruned_[u * n + v] = o.pruned_[v * n + u] = 1;
          o.pruned_count_ += 2;
          continue;
        }
        if (!symmetric && prune_uv) {
          o.dist_[u * n + v] = lb_uv;
          o.pruned_[u * n + v] = 1;
          ++o.pruned_count_;
          continue;
        }
        if (symmetric && (prune_uv || prune_vu)) {
          // One direction still needs the exact value; store it for both
          // sides but flag the prunable one so lookups stay consistent.
          const Units d = GlyphDistance(gu, gv, model);
          o.dist_[u * n + v] = prune_uv ? lb_uv : d;
          o.dist_[v * n + u] = prune_vu ? lb_vu : d;
          if (prune_uv) o.pruned_[u * n + v] = 1;
          if (prune_vu) o.pruned_[v * n + u] = 1;
          o.pruned_count_ += int{prune_uv} + int{prune_vu};
          continue;
        }
      }
      const Units d = GlyphDistance(gu, gv, model);
      o.dist_[u * n + v] = d;
      if (symmetric) o.dist_[v * n + u] = d;
    }
  }
  return o;
}

DistanceOracle DistanceOracle::FromMatrix(std::vector<Units> costs,
                                          std::vector<Units> distances,
                                          const CostModel& model) {
  const std::size_t n = costs.size();
  if (n == 0) throw std::invalid_argument("FromMatrix: empty instance");
  if (distances.size() != n * n) {
    throw std::invalid_argument("FromMatrix: distance matrix must be n x n");
  }
  for (Units c : costs) {
    if (c <= 0) throw std::invalid_argument("FromMatrix: costs must be > 0");
  }
  for (Units d : distances) {
    if (d < 0) {
      throw std::invalid_argument("FromMatrix: distances must be >= 0");
    }
  }
  DistanceOracle o;
  o.n_ = static_cast<int>(n);
  o.model_ = model;
  o.costs_ = std::move(costs);
  o.dist_ = std::move(distances);
  return o;
}

Units DistanceOracle::ExactDistance(int u, int v) const {
  if (!pruned(u, v)) return distance(u, v);
  return GlyphDistance(glyphs_[u], glyphs_[v], model_);
}

std::string DistanceOracle::ToJson() const {
  json j;
  j["n"] = n_;
  j["kappa"] = {{"num", model_.kappa.num}, {"den", model_.kappa.den}};
  j["mode"] = ToString(model_.mode);
  j["alpha"] = model_.alpha;
  j["beta"] = model_.beta;
  j["costs"] = costs_;
  json rows = json::array();
  for (int u = 0; u < n_; ++u) {
    json row = json::array();
    for (int v = 0; v < n_; ++v) row.push_back(ExactDistance(u, v));
    rows.push_back(std::move(row));
  }
  j["distances"] = std::move(rows);
  return j.dump();
}

DistanceOracle DistanceOracle::FromJson(const std::string& text) {
  const json j = json::parse(text);
  CostModel model;
  model.kappa.num = j.at("kappa").at("num").get<std::int64_t>();
  model.kappa.den = j.at("kappa").at("den").get<std::int64_t>();
  model.mode = ParseDistanceMode(j.at("mode").get<std::string>());
  model.alpha = j.value("alpha", std::int64_t{1});
  model.beta = j.value("beta", std::int64_t{1});
  const int n = j.at("n").get<int>();
  auto costs = j.at("costs").get<std::vector<Units>>();
  const auto& rows = j.at("distances");
  if (static_cast<int>(costs.size()) != n ||
      static_cast<int>(rows.size()) != n) {
    throw std::invalid_argument("oracle JSON: size mismatch with n");
  }
  std::vector<Units> dist;
  dist.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("oracle JSON: ragged distance matrix");
    }
    for (const auto& d : row) dist.push_back(d.get<Units>());
  }
  return FromMatrix(std::move(costs), std::move(dist), model);
}

// ---------------------------------------------------------------------------
// Property verification

bool MetricReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.passed; });
}

std::string MetricReport::ToJson() const {
  json arr = json::array();
  for (const auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["checked"] = c.checked;
    if (!c.passed) {
      e["counterexample"] = c.counterexample;
      e["detail"] = c.detail;
    }
    arr.push_back(std::move(e));
  }
  json j;
  j["passed"] = passed();
  j["checks"] = std::move(arr);
  return j.dump();
}

MetricReport VerifyMetricProperties(const DistanceOracle& oracle,
                                    std::int64_t sample_triples,
                                    std::uint64_t seed) {
  if (oracle.pruned_count() > 0) {
    throw std::invalid_argument(
        "VerifyMetricProperties needs an oracle built without pruning");
  }
  PropertyCheck identity;
  identity.name = "identity";
  PropertyCheck non_negative;
  non_negative.name = "non_negative";
  PropertyCheck symmetry;
  symmetry.name = "symmetry";
  PropertyCheck triangle;
  triangle.name = "triangle_inequality";
  PropertyCheck lipschitz;
  lipschitz.name = "cost_lipschitz";

  auto fail = [](PropertyCheck& c, std::vector<int> vs, std::string detail) {
    if (!c.passed) return;
    c.passed = false;
    c.counterexample = std::move(vs);
    c.detail = std::move(detail);
  };
  auto s = [](Units x) { return std::to_string(x); };
  auto is = [](int x) { return std::to_string(x); };

  auto check_vertex = [&](int u) {
    ++identity.checked;
    if (oracle.distance(u, u) != 0) {
      fail(identity, {u}, "d(" + is(u) + "," + is(u) + ") = " +
                              s(oracle.distance(u, u)));
    }
  };
  auto check_pair = [&](int u, int v) {
    const Units duv = oracle.distance(u, v);
    const Units dvu = oracle.distance(v, u);
    ++non_negative.checked;
    if (duv < 0) fail(non_negative, {u, v}, "d = " + s(duv));
    ++symmetry.checked;
    if (duv != dvu) {
      fail(symmetry, {u, v},
           "d(" + is(u) + "," + is(v) + ") = " + s(duv) + " but d(" + is(v) +
               "," + is(u) + ") = " + s(dvu));
    }
    ++lipschitz.checked;
    if (oracle.cost(v) > oracle.cost(u) + duv) {
      fail(lipschitz, {u, v},
           "c(" + is(v) + ") = " + s(oracle.cost(v)) + " > c(" + is(u) +
               ") + d(" + is(u) + "," + is(v) + ") = " +
               s(oracle.cost(u) + duv));
    }
  };
  auto check_triple = [&](int u, int v, int w) {
    ++triangle.checked;
    const Units direct = oracle.distance(u, w);
    const Units via = oracle.distance(u, v) + oracle.distance(v, w);
    if (direct > via) {
      fail(triangle, {u, v, w},
           "d(" + is(u) + "," + is(w) + ") = " + s(direct) + " > d(" + is(u) +
               "," + is(v) + ") + d(" + is(v) + "," + is(w) + ") = " + s(via));
    }
  };

  const int n = oracle.size();
  if (sample_triples == 0) {
    for (int u = 0; u < n; ++u) {
      check_vertex(u);
      for (int v = 0; v < n; ++v) {
        check_pair(u, v);
        for (int w = 0; w < n; ++w) check_triple(u, v, w);
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::int64_t t = 0; t < sample_triples; ++t) {
      const int u = static_cast<int>(rng() % n);
      const int v = static_cast<int>(rng() % n);
      const int w = static_cast<int>(rng() % n);
      check_vertex(u);
      check_pair(u, v);
      check_triple(u, v, w);
    }
  }

  MetricReport report;
  report.checks = {identity, non_negative, symmetry, triangle, lipschitz};
  return report;
}

}  // namespace glyphbook
