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

#ifndef GLYPHBOOK_BITMAP_H_
#define GLYPHBOOK_BITMAP_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace glyphbook {

// Bitonal raster. Pixel (x, y) is bit (x % 64) of word (x / 64) in row y;
// 1 is ink. Padding bits past the width are always zero so that rows can be
// compared and AND-ed a word at a time.
class Bitmap {
 public:
  Bitmap() = default;
  Bitmap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int words_per_row() const { return words_per_row_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  bool Get(int x, int y) const {
    return (Row(y)[x >> 6] >> (x & 63)) & 1u;
  }
  void Set(int x, int y, bool ink);

  // Out-of-range coordinates read as background.
  bool GetOr0(int x, int y) const {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
    return Get(x, y);
  }

  std::span<const std::uint64_t> Row(int y) const {
    return {words_.data() + static_cast<std::size_t>(y) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }

  // Reads 64 consecutive pixels of row y starting at column `x0` (which may
  // be negative or past the width; those pixels read as 0).
  std::uint64_t Extract64(int y, std::int64_t x0) const;

  std::int64_t InkCount() const;

  // Tight bounding box of the ink; returns false when there is no ink.
  bool InkBounds(int* min_x, int* min_y, int* max_x, int* max_y) const;

  Bitmap Crop(int x, int y, int width, int height) const;

  // ORs `src` into this bitmap with its top-left at (x, y), clipping.
  void Stamp(const Bitmap& src, int x, int y);

  friend bool operator==(const Bitmap& a, const Bitmap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.words_ == b.words_;
  }

  // Rows of '#' and '.' separated by '\n'; handy in tests and debugging.
  static Bitmap FromAscii(const std::vector<std::string>& rows);
  std::string ToAscii() const;

 private:
  int width_ = 0;
  int height_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// PBM (Netpbm) I/O.

enum class PbmFormat { kPlain /* P1 */, kRaw /* P4 */ };

class PbmParseError : public std::runtime_error {
 public:
  PbmParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Bitmap ParsePbm(std::span<const std::uint8_t> raw);
Bitmap ParsePbm(const std::string& raw);
std::string WritePbm(const Bitmap& bitmap, PbmFormat format);

Bitmap ReadPbmFile(const std::string& path);
void WritePbmFile(const std::string& path, const Bitmap& bitmap,
                  PbmFormat format = PbmFormat::kRaw);

}  // namespace glyphbook

#endif  // GLYPHBOOK_BITMAP_H_
