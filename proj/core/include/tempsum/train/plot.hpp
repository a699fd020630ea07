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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tempsum::train {

using Rgb = std::array<std::uint8_t, 3>;

/// RGB raster written as PNG.
class Canvas {
 public:
  Canvas(int width, int height, Rgb background = {255, 255, 255});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  void set(int x, int y, Rgb color);
  Rgb get(int x, int y) const;
  void line(int x0, int y0, int x1, int y1, Rgb color);
  void fill_rect(int x0, int y0, int x1, int y1, Rgb color);
  void save_png(const std::filesystem::path& path) const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Distinct colors for series index i.
Rgb palette(std::size_t i);

struct Series {
  std::string label;
  std::vector<double> values;
};

/// Line chart of each series against its index, sharing one y range.
void plot_lines(const std::vector<Series>& series, const std::filesystem::path& path, int width = 640,
                int height = 400);
/// Grouped bars in [0, 1]: groups[g][k] is the bar of series k in group g.
void plot_bars(const std::vector<std::vector<double>>& groups, const std::filesystem::path& path, int width = 800,
               int height = 400);

}  // namespace tempsum::train
