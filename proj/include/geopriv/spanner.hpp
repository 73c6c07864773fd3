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

#include <Eigen/Core>
#include <vector>

#include "geopriv/grid.hpp"

namespace geopriv {

struct SpannerEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;  // Euclidean distance between a and b
};

// Weighted edge set over regions whose shortest-path metric d_G
// overestimates the Euclidean metric by at most the dilation factor:
// d(x,x') <= d_G(x,x') <= dilation * d(x,x') for every pair.
class SpannerGraph {
 public:
  SpannerGraph(int num_regions, std::vector<SpannerEdge> edges,
               double dilation);

  int num_regions() const { return num_regions_; }
  const std::vector<SpannerEdge>& edges() const { return edges_; }
  double dilation() const { return dilation_; }

  bool is_connected() const;

  // Shortest-path distances from source to every region (Dijkstra).
  Eigen::VectorXd shortest_paths(int source) const;

 private:
  int num_regions_;
  std::vector<SpannerEdge> edges_;
  double dilation_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

// Greedy spanner: region pairs are scanned in nondecreasing distance order
// (ties broken by index pair) and an edge is added exactly when the current
// shortest-path distance exceeds delta times the Euclidean distance. The
// dilation invariant holds by construction.
SpannerGraph build_spanner(const Grid& grid, double delta);

}  // namespace geopriv
