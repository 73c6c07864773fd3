//
// Copyright 2026 The geopriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geopriv/grid.hpp"

namespace geopriv {

Grid::Grid(GeoPoint origin, int rows, int cols, double cell_width_deg,
           double cell_height_deg)
    : origin_(origin),
      rows_(rows),
      cols_(cols),
      cell_width_(cell_width_deg),
      cell_height_(cell_height_deg) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1x1, got " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  if (!(cell_width_deg > 0.0) || !(cell_height_deg > 0.0)) {
    throw std::invalid_argument("grid cell sizes must be positive");
  }
}

void Grid::check_region(int region) const {
  if (!valid_region(region)) {
    throw std::out_of_range("region index " + std::to_string(region) +
                            " outside [0," + std::to_string(num_regions()) +
                            ")");
  }
}

GeoPoint Grid::center(int region) const {
  check_region(region);
  return GeoPoint{origin_.lat + (row_of(region) + 0.5) * cell_height_,
                  origin_.lon + (col_of(region) + 0.5) * cell_width_};
}

std::optional<int> Grid::locate(double lat, double lon) const {
  const double r = (lat - origin_.lat) / cell_height_;
  const double c = (lon - origin_.lon) / cell_width_;
  if (r < 0.0 || c < 0.0) return std::nullopt;
  const int row = static_cast<int>(r);
  const int col = static_cast<int>(c);
  if (row >= rows_ || col >= cols_) return std::nullopt;
  return region_at(row, col);
}

Grid build_grid(GeoPoint origin, int rows, int cols, double cell_width_deg,
                double cell_height_deg) {
  return Grid(origin, rows, cols, cell_width_deg, cell_height_deg);
}

double region_distance(const Grid& grid, int a, int b) {
  grid.check_region(a);
  grid.check_region(b);
  const double dr = grid.row_of(a) - grid.row_of(b);
  const double dc = grid.col_of(a) - grid.col_of(b);
  return std::sqrt(dr * dr + dc * dc);
}

}  // namespace geopriv
