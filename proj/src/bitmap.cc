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

#include "glyphbook/bitmap.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>
#include <limits>

namespace glyphbook {

Bitmap::Bitmap(int width, int height)
    : width_(width), height_(height), words_per_row_((width + 63) / 64) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("Bitmap dimensions must be non-negative");
  }
  words_.assign(static_cast<std::size_t>(words_per_row_) * height, 0);
}

void Bitmap::Set(int x, int y, bool ink) {
  std::uint64_t& word =
      words_[static_cast<std::size_t>(y) * words_per_row_ + (x >> 6)];
  const std::uint64_t mask = std::uint64_t{1} << (x & 63);
  if (ink) {
    word |= mask;
  } else {
    word &= ~mask;
  }
}

std::uint64_t Bitmap::Extract64(int y, std::int64_t x0) const {
  if (y < 0 || y >= height_) return 0;
  if (x0 >= width_ || x0 <= -64) return 0;
  const auto row = Row(y);
  // Floor division so negative offsets land in the word to the left.
  const std::int64_t wi = x0 >= 0 ? x0 / 64 : -((-x0 + 63) / 64);
  const int shift = static_cast<int>(x0 - wi * 64);
  auto word_at = [&](std::int64_t i) -> std::uint64_t {
    return (i >= 0 && i < words_per_row_) ? row[i] : 0;
  };
  const std::uint64_t lo = word_at(wi);
  if (shift == 0) return lo;
  const std::uint64_t hi = word_at(wi + 1);
  return (lo >> shift) | (hi << (64 - shift));
}

std::int64_t Bitmap::InkCount() const {
  std::int64_t count = 0;
  for (std::uint64_t w : words_) count += std::popcount(w);
  return count;
}

bool Bitmap::InkBounds(int* min_x, int* min_y, int* max_x, int* max_y) const {
  int x0 = width_, y0 = height_, x1 = -1, y1 = -1;
  for (int y = 0; y < height_; ++y) {
    const auto row = Row(y);
    for (int i = 0; i < words_per_row_; ++i) {
      if (row[i] == 0) continue;
      const int lo = i * 64 + std::countr_zero(row[i]);
      const int hi = i * 64 + 63 - std::countl_zero(row[i]);
      x0 = std::min(x0, lo);
      x1 = std::max(x1, hi);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return false;
  *min_x = x0;
  *min_y = y0;
  *max_x = x1;
  *max_y = y1;
  return true;
}

Bitmap Bitmap::Crop(int x, int y, int width, int height) const {
  Bitmap out(width, height);
  for (int yy = 0; yy < height; ++yy) {
    for (int i = 0; i < out.words_per_row_; ++i) {
      std::uint64_t bits = Extract64(y + yy, x + std::int64_t{64} * i);
      const int remaining = width - 64 * i;
      if (remaining < 64) bits &= (std::uint64_t{1} << remaining) - 1;
      out.words_[static_cast<std::size_t>(yy) * out.words_per_row_ + i] = bits;
    }
  }
  return out;
}

void Bitmap::Stamp(const Bitmap& src, int x, int y) {
  const int y_begin = std::max(0, -y);
  const int y_end = std::min(src.height_, height_ - y);
  for (int sy = y_begin; sy < y_end; ++sy) {
    const int dy = y + sy;
    for (int i = 0; i < words_per_row_; ++i) {
      std::uint64_t bits = src.Extract64(sy, std::int64_t{64} * i - x);
      const int remaining = width_ - 64 * i;
      if (remaining < 64) bits &= (std::uint64_t{1} << remaining) - 1;
      words_[static_cast<std::size_t>(dy) * words_per_row_ + i] |= bits;
    }
  }
}

Bitmap Bitmap::FromAscii(const std::vector<std::string>& rows) {
  const int height = static_cast<int>(rows.size());
  const int width = height == 0 ? 0 : static_cast<int>(rows[0].size());
  Bitmap out(width, height);
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(rows[y].size()) != width) {
      throw std::invalid_argument("FromAscii: ragged rows");
    }
    for (int x = 0; x < width; ++x) {
      if (rows[y][x] == '#' || rows[y][x] == '1') out.Set(x, y, true);
    }
  }
  return out;
}

std::string Bitmap::ToAscii() const {
  std::string s;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) s += Get(x, y) ? '#' : '.';
    s += '\n';
  }
  return s;
}

// ---------------------------------------------------------------------------
// PBM

PbmParseError::PbmParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("PBM parse error at byte " + std::to_string(offset) +
                         ": " + what),
      offset_(offset) {}

namespace {

constexpr std::int64_t kMaxPbmPixels = std::int64_t{1} << 34;

bool IsPbmSpace(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

class PbmReader {
 public:
  explicit PbmReader(std::span<const std::uint8_t> raw) : raw_(raw) {}

  std::size_t pos() const { return pos_; }
  bool AtEnd() const { return pos_ >= raw_.size(); }
  std::uint8_t Peek() const { return raw_[pos_]; }
  std::uint8_t Next() { return raw_[pos_++]; }
  std::size_t Remaining() const { return raw_.size() - pos_; }

  void SkipSpaceAndComments() {
    while (!AtEnd()) {
      if (IsPbmSpace(Peek())) {
        ++pos_;
      } else if (Peek() == '#') {
        while (!AtEnd() && Peek() != '\n' && Peek() != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  int ReadDimension(const char* what) {
    SkipSpaceAndComments();
    const std::size_t start = pos_;
    if (AtEnd() || Peek() < '0' || Peek() > '9') {
      throw PbmParseError(std::string("expected ") + what, start);
    }
    std::int64_t value = 0;
    while (!AtEnd() && Peek() >= '0' && Peek() <= '9') {
      value = value * 10 + (Next() - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw PbmParseError(std::string(what) + " overflows", start);
      }
    }
    return static_cast<int>(value);
  }

 private:
  std::span<const std::uint8_t> raw_;
  std::size_t pos_ = 0;
};

}  // namespace

Bitmap ParsePbm(std::span<const std::uint8_t> raw) {
  PbmReader in(raw);
  if (raw.size() < 2 || raw[0] != 'P' || (raw[1] != '1' && raw[1] != '4')) {
    throw PbmParseError("bad magic number (want P1 or P4)", 0);
  }
  const bool plain = raw[1] == '1';
  in.Next();
  in.Next();
  const std::size_t after_magic = in.pos();
  if (!in.AtEnd() && !IsPbmSpace(in.Peek()) && in.Peek() != '#') {
    throw PbmParseError("bad magic number (want P1 or P4)", after_magic);
  }
  const int width = in.ReadDimension("width");
  const int height = in.ReadDimension("height");
  if (static_cast<std::int64_t>(width) * height > kMaxPbmPixels) {
    throw PbmParseError("dimensions overflow", in.pos());
  }
  Bitmap out(width, height);

  if (plain) {
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        in.SkipSpaceAndComments();
        if (in.AtEnd()) throw PbmParseError("truncated raster", in.pos());
        const std::uint8_t c = in.Peek();
        if (c != '0' && c != '1') {
          throw PbmParseError("expected '0' or '1'", in.pos());
        }
        in.Next();
        if (c == '1') out.Set(x, y, true);
      }
    }
    return out;
  }

  // Raw: exactly one whitespace byte separates the header from the raster.
  if (width > 0 && height > 0) {
    if (in.AtEnd() || !IsPbmSpace(in.Peek())) {
      throw PbmParseError("expected whitespace before raster", in.pos());
    }
    in.Next();
  } else if (!in.AtEnd() && IsPbmSpace(in.Peek())) {
    in.Next();
  }
  const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
  const std::size_t need = row_bytes * height;
  if (in.Remaining() < need) {
    throw PbmParseError("truncated raster (need " + std::to_string(need) +
                            " bytes, have " + std::to_string(in.Remaining()) +
                            ")",
                        in.pos());
  }
  for (int y = 0; y < height; ++y) {
    for (std::size_t b = 0; b < row_bytes; ++b) {
      const std::uint8_t byte = in.Next();
      for (int bit = 0; bit < 8; ++bit) {
        const int x = static_cast<int>(b * 8) + bit;
        if (x < width && (byte & (0x80 >> bit))) out.Set(x, y, true);
      }
    }
  }
  return out;
}

Bitmap ParsePbm(const std::string& raw) {
  return ParsePbm(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
}

std::string WritePbm(const Bitmap& bitmap, PbmFormat format) {
  std::string out = format == PbmFormat::kPlain ? "P1\n" : "P4\n";
  out += std::to_string(bitmap.width()) + " " +
         std::to_string(bitmap.height()) + "\n";
  if (format == PbmFormat::kPlain) {
    // Plain PBM lines should stay under 70 characters.
    for (int y = 0; y < bitmap.height(); ++y) {
      for (int x = 0; x < bitmap.width(); ++x) {
        out += bitmap.Get(x, y) ? '1' : '0';
        if ((x + 1) % 69 == 0 && x + 1 < bitmap.width()) out += '\n';
      }
      out += '\n';
    }
    return out;
  }
  for (int y = 0; y < bitmap.height(); ++y) {
    for (int x0 = 0; x0 < bitmap.width(); x0 += 8) {
      std::uint8_t byte = 0;
      for (int bit = 0; bit < 8 && x0 + bit < bitmap.width(); ++bit) {
        if (bitmap.Get(x0 + bit, y)) byte |= 0x80 >> bit;
      }
      out += static_cast<char>(byte);
    }
  }
  return out;
}

Bitmap ReadPbmFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return ParsePbm(raw);
}

void WritePbmFile(const std::string& path, const Bitmap& bitmap,
                  PbmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::string bytes = WritePbm(bitmap, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace glyphbook
