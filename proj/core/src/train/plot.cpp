// Copyright 2026 The Tempsum Authors.
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

#include "tempsum/train/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include <png.h>

#include "tempsum/error.hpp"

namespace tempsum::train {

Canvas::Canvas(int width, int height, Rgb background) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw DomainError("canvas dimensions must be positive");
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) std::copy(background.begin(), background.end(), pixels_.begin() + static_cast<long>(i));
}

void Canvas::set(int x, int y, Rgb color) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const auto at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  std::copy(color.begin(), color.end(), pixels_.begin() + static_cast<long>(at));
}

Rgb Canvas::get(int x, int y) const {
  const auto at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  return {pixels_[at], pixels_[at + 1], pixels_[at + 2]};
}

void Canvas::line(int x0, int y0, int x1, int y1, Rgb color) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    set(x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void Canvas::fill_rect(int x0, int y0, int x1, int y1, Rgb color) {
  for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) {
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) set(x, y, color);
  }
}

void Canvas::save_png(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.string().c_str(), "wb"), &std::fclose);
  if (!fp) throw Error("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("png encoding failed for " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width_), static_cast<png_uint_32>(height_), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height_; ++y) {
    png_write_row(png, pixels_.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) * 3);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Rgb palette(std::size_t i) {
  static constexpr std::array<Rgb, 8> colors = {{{31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40},
                                                  {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127}}};
  return colors[i % colors.size()];
}

namespace {

constexpr int kMargin = 40;
constexpr Rgb kAxis = {0, 0, 0};
constexpr Rgb kGrid = {220, 220, 220};

void frame(Canvas& c, int gridlines) {
  const int x0 = kMargin, x1 = c.width() - kMargin, y0 = c.height() - kMargin, y1 = kMargin;
  for (int g = 1; g <= gridlines; ++g) {
    const int y = y0 - (y0 - y1) * g / gridlines;
    c.line(x0, y, x1, y, kGrid);
  }
  c.line(x0, y0, x1, y0, kAxis);
  c.line(x0, y0, x0, y1, kAxis);
}

}  // namespace

void plot_lines(const std::vector<Series>& series, const std::filesystem::path& path, int width, int height) {
  Canvas c(width, height);
  frame(c, 4);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t longest = 0;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    longest = std::max(longest, s.values.size());
  }
  if (longest >= 1 && std::isfinite(lo)) {
    if (hi <= lo) hi = lo + 1.0;
    const double w = width - 2 * kMargin, h = height - 2 * kMargin;
    auto px = [&](std::size_t i) { return kMargin + static_cast<int>(longest > 1 ? w * static_cast<double>(i) / static_cast<double>(longest - 1) : 0.0); };
    auto py = [&](double v) { return height - kMargin - static_cast<int>(h * (v - lo) / (hi - lo)); };
    for (std::size_t k = 0; k < series.size(); ++k) {
      const auto& v = series[k].values;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) c.line(px(i), py(v[i]), px(i + 1), py(v[i + 1]), palette(k));
      if (v.size() == 1) c.fill_rect(px(0) - 1, py(v[0]) - 1, px(0) + 1, py(v[0]) + 1, palette(k));
    }
  }
  c.save_png(path);
}

void plot_bars(const std::vector<std::vector<double>>& groups, const std::filesystem::path& path, int width,
               int height) {
  Canvas c(width, height);
  frame(c, 10);
  if (!groups.empty()) {
    const double slot = static_cast<double>(width - 2 * kMargin) / static_cast<double>(groups.size());
    const double h = height - 2 * kMargin;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& bars = groups[g];
      if (bars.empty()) continue;
      const double bw = slot * 0.8 / static_cast<double>(bars.size());
      for (std::size_t k = 0; k < bars.size(); ++k) {
        const double v = std::clamp(bars[k], 0.0, 1.0);
        const int x0 = kMargin + static_cast<int>(slot * static_cast<double>(g) + slot * 0.1 + bw * static_cast<double>(k));
        const int x1 = x0 + std::max(1, static_cast<int>(bw) - 1);
        c.fill_rect(x0, height - kMargin - static_cast<int>(h * v), x1, height - kMargin - 1, palette(k));
      }
    }
  }
  c.save_png(path);
}

}  // namespace tempsum::train
