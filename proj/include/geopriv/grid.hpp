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

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace geopriv {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

// Rectangular discretization of a map region. Regions are indexed row-major
// in [0, rows*cols). Distances are measured between cell centers on the
// integer lattice, normalized so that horizontally or vertically adjacent
// regions are exactly 1 apart; the geographic cell size plays no role in
// the metric.
class Grid {
 public:
  Grid(GeoPoint origin, int rows, int cols, double cell_width_deg,
       double cell_height_deg);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_regions() const { return rows_ * cols_; }
  const GeoPoint& origin() const { return origin_; }
  double cell_width() const { return cell_width_; }
  double cell_height() const { return cell_height_; }

  int row_of(int region) const { return region / cols_; }
  int col_of(int region) const { return region % cols_; }
  int region_at(int row, int col) const { return row * cols_ + col; }

  bool valid_region(int region) const {
    return region >= 0 && region < num_regions();
  }
  void check_region(int region) const;

  // Center of a region in geographic coordinates.
  GeoPoint center(int region) const;

  // Region containing a geographic point, or nullopt when the point lies
  // outside the grid's bounding box.
  std::optional<int> locate(double lat, double lon) const;

 private:
  GeoPoint origin_;
  int rows_;
  int cols_;
  double cell_width_;
  double cell_height_;
};

Grid build_grid(GeoPoint origin, int rows, int cols, double cell_width_deg,
                double cell_height_deg);

// Euclidean distance between the lattice centers of two regions, in units
// where adjacent regions are 1 apart.
double region_distance(const Grid& grid, int a, int b);

}  // namespace geopriv
