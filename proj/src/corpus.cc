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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "glyphbook/glyph.h"

namespace glyphbook {

namespace {

// mt19937_64 is fully specified by the standard; the std distributions are
// not, so bounded draws are done by hand to keep pages identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t Below(std::uint64_t n) { return engine_() % n; }
  bool Bernoulli(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

Bitmap RandomBlob(int area, Rng& rng) {
  std::vector<std::pair<int, int>> pixels{{0, 0}};
  std::set<std::pair<int, int>> seen{{0, 0}};
  static constexpr int kDx[] = {1, -1, 0, 0};
  static constexpr int kDy[] = {0, 0, 1, -1};
  while (static_cast<int>(pixels.size()) < area) {
    const auto [x, y] = pixels[rng.Below(pixels.size())];
    const int dir = static_cast<int>(rng.Below(4));
    const std::pair<int, int> next{x + kDx[dir], y + kDy[dir]};
    if (seen.insert(next).second) pixels.push_back(next);
  }
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  for (auto [x, y] : pixels) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  Bitmap bm(x1 - x0 + 1, y1 - y0 + 1);
  for (auto [x, y] : pixels) bm.Set(x - x0, y - y0, true);
  return bm;
}

bool FourConnected(const Bitmap& bm) {
  const std::int64_t total = bm.InkCount();
  if (total == 0) return false;
  const int w = bm.width();
  std::vector<char> seen(static_cast<std::size_t>(w) * bm.height(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < bm.height() && stack.empty(); ++y) {
    for (int x = 0; x < w; ++x) {
      if (bm.Get(x, y)) {
        stack.emplace_back(x, y);
        seen[static_cast<std::size_t>(y) * w + x] = 1;
        break;
      }
    }
  }
  std::int64_t reached = 0;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    ++reached;
    const std::pair<int, int> nbrs[] = {
        {x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    for (auto [nx, ny] : nbrs) {
      if (!bm.GetOr0(nx, ny)) continue;
      char& s = seen[static_cast<std::size_t>(ny) * w + nx];
      if (s) continue;
      s = 1;
      stack.emplace_back(nx, ny);
    }
  }
  return reached == total;
}

bool HasFourNeighbour(const Bitmap& bm, int x, int y, bool ink) {
  return bm.GetOr0(x - 1, y) == ink || bm.GetOr0(x + 1, y) == ink ||
         bm.GetOr0(x, y - 1) == ink || bm.GetOr0(x, y + 1) == ink;
}

// Flips boundary pixels of `shape` with probability p. Background pixels
// touching ink may become ink; ink pixels touching background may become
// background, unless that would disconnect (or erase) the blob.
Bitmap NoisyInstance(const Bitmap& shape, double p, Rng& rng) {
  Bitmap canvas(shape.width() + 2, shape.height() + 2);
  canvas.Stamp(shape, 1, 1);
  if (p <= 0.0) return canvas.Crop(1, 1, shape.width(), shape.height());

  const Bitmap clean = canvas;
  for (int y = 0; y < clean.height(); ++y) {
    for (int x = 0; x < clean.width(); ++x) {
      if (clean.Get(x, y) || !HasFourNeighbour(clean, x, y, true)) continue;
      if (rng.Bernoulli(p)) canvas.Set(x, y, true);
    }
  }
  for (int y = 0; y < clean.height(); ++y) {
    for (int x = 0; x < clean.width(); ++x) {
      if (!clean.Get(x, y) || !HasFourNeighbour(clean, x, y, false)) continue;
      if (!rng.Bernoulli(p)) continue;
      canvas.Set(x, y, false);
      if (!FourConnected(canvas)) canvas.Set(x, y, true);
    }
  }
  int x0, y0, x1, y1;
  canvas.InkBounds(&x0, &y0, &x1, &y1);
  return canvas.Crop(x0, y0, x1 - x0 + 1, y1 - y0 + 1);
}

}  // namespace

void CorpusSpec::Validate() const {
  if (base_shape_count < 1) {
    throw std::invalid_argument("base_shape_count must be >= 1");
  }
  if (glyph_instance_count < base_shape_count) {
    throw std::invalid_argument(
        "glyph_instance_count must be >= base_shape_count");
  }
  if (!(noise_flip_probability >= 0.0 && noise_flip_probability <= 0.5)) {
    throw std::invalid_argument("noise_flip_probability must be in [0, 0.5]");
  }
  if (jitter_max < 0) throw std::invalid_argument("jitter_max must be >= 0");
  if (page_width < 0 || page_height < 0) {
    throw std::invalid_argument("page dimensions must be >= 0");
  }
  if (shape_area_min < 1 || shape_area_max < shape_area_min) {
    throw std::invalid_argument("need 1 <= shape_area_min <= shape_area_max");
  }
}

Corpus GenerateCorpus(const CorpusSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);

  std::vector<Bitmap> shapes;
  const int span = spec.shape_area_max - spec.shape_area_min + 1;
  for (int s = 0; s < spec.base_shape_count; ++s) {
    const int area = spec.shape_area_min + static_cast<int>(rng.Below(span));
    Bitmap blob;
    for (int attempt = 0;; ++attempt) {
      blob = RandomBlob(area, rng);
      if (std::find(shapes.begin(), shapes.end(), blob) == shapes.end()) break;
      if (attempt == 1000) {
        throw std::invalid_argument(
            "cannot draw " + std::to_string(spec.base_shape_count) +
            " distinct shapes of area " + std::to_string(area));
      }
    }
    shapes.push_back(std::move(blob));
  }

  const int n = spec.glyph_instance_count;
  std::vector<Bitmap> instances;
  instances.reserve(n);
  int max_w = 0, max_h = 0;
  for (int i = 0; i < n; ++i) {
    instances.push_back(NoisyInstance(shapes[i % spec.base_shape_count],
                                      spec.noise_flip_probability, rng));
    max_w = std::max(max_w, instances.back().width());
    max_h = std::max(max_h, instances.back().height());
  }

  // Cells leave at least one blank pixel between neighbours, so instances
  // never touch, even diagonally.
  const int cell_w = max_w + spec.jitter_max + 1;
  const int cell_h = max_h + spec.jitter_max + 1;
  int page_w = spec.page_width;
  int page_h = spec.page_height;
  if (page_w == 0 || page_h == 0) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(double(n))));
    const int rows = (n + cols - 1) / cols;
    if (page_w == 0) page_w = cols * cell_w;
    if (page_h == 0) page_h = rows * cell_h;
  }
  const int cols = page_w / cell_w;
  const int rows = page_h / cell_h;
  if (static_cast<std::int64_t>(cols) * rows < n) {
    throw CapacityError(
        "page " + std::to_string(page_w) + "x" + std::to_string(page_h) +
        " holds " + std::to_string(std::int64_t{cols} * rows) + " cells of " +
        std::to_string(cell_w) + "x" + std::to_string(cell_h) + " but " +
        std::to_string(n) + " glyphs were requested");
  }

  Corpus corpus;
  corpus.page = Bitmap(page_w, page_h);
  std::vector<std::pair<int, int>> corner(n);
  for (int i = 0; i < n; ++i) {
    const int jx = static_cast<int>(rng.Below(spec.jitter_max + 1));
    const int jy = static_cast<int>(rng.Below(spec.jitter_max + 1));
    const int x = (i % cols) * cell_w + jx;
    const int y = (i / cols) * cell_h + jy;
    corpus.page.Stamp(instances[i], x, y);
    corner[i] = {y, x};
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return corner[a] < corner[b]; });
  corpus.truth.reserve(n);
  for (int i : order) corpus.truth.push_back(i % spec.base_shape_count);
  return corpus;
}

std::string TruthToJson(const std::vector<int>& truth) {
  std::string s = "[";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(truth[i]);
  }
  s += "]";
  return s;
}

}  // namespace glyphbook
