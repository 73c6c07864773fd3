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

#include "geopriv/spanner.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace geopriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack protecting exact path coincidences (e.g. collinear
// points) from roundoff in the sqrt sums.
constexpr double kPathTolerance = 1e-12;

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

// Dijkstra from `source`, abandoning paths longer than `bound`. Returns
// the distance to `target` (possibly +inf).
double bounded_distance(const Adjacency& adj, int source, int target,
                        double bound, std::vector<double>& dist_scratch) {
  std::fill(dist_scratch.begin(), dist_scratch.end(), kInf);
  dist_scratch[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist_scratch[v]) continue;
    if (v == target) return d;
    for (const auto& [w, len] : adj[v]) {
      const double nd = d + len;
      if (nd < dist_scratch[w] && nd <= bound) {
        dist_scratch[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist_scratch[target];
}

}  // namespace

SpannerGraph::SpannerGraph(int num_regions, std::vector<SpannerEdge> edges,
                           double dilation)
    : num_regions_(num_regions),
      edges_(std::move(edges)),
      dilation_(dilation),
      adjacency_(static_cast<std::size_t>(num_regions)) {
  if (num_regions < 1) {
    throw std::invalid_argument("spanner needs at least one region");
  }
  if (!(dilation >= 1.0)) {
    throw std::invalid_argument("spanner dilation must be >= 1");
  }
  for (const auto& e : edges_) {
    if (e.a < 0 || e.a >= num_regions || e.b < 0 || e.b >= num_regions ||
        e.a == e.b || !(e.weight > 0.0)) {
      throw std::invalid_argument("invalid spanner edge");
    }
    adjacency_[e.a].emplace_back(e.b, e.weight);
    adjacency_[e.b].emplace_back(e.a, e.weight);
  }
}

bool SpannerGraph::is_connected() const {
  std::vector<char> seen(num_regions_, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [w, len] : adjacency_[v]) {
      (void)len;
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == num_regions_;
}

Eigen::VectorXd SpannerGraph::shortest_paths(int source) const {
  if (source < 0 || source >= num_regions_) {
    throw std::out_of_range("spanner source out of range");
  }
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(num_regions_, kInf);
  dist(source) = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist(v)) continue;
    for (const auto& [w, len] : adjacency_[v]) {
      const double nd = d + len;
      if (nd < dist(w)) {
        dist(w) = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist;
}

SpannerGraph build_spanner(const Grid& grid, double delta) {
  if (!(delta >= 1.0)) {
    throw std::invalid_argument("spanner dilation must be >= 1, got " +
                                std::to_string(delta));
  }
  const int n = grid.num_regions();

  struct Pair {
    double d;
    int a;
    int b;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      pairs.push_back(Pair{region_distance(grid, a, b), a, b});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
    if (l.d != r.d) return l.d < r.d;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });

  Adjacency adj(static_cast<std::size_t>(n));
  std::vector<SpannerEdge> edges;
  std::vector<double> dist_scratch(static_cast<std::size_t>(n));
  for (const auto& p : pairs) {
    const double bound = delta * p.d * (1.0 + kPathTolerance);
    const double through = bounded_distance(adj, p.a, p.b, bound, dist_scratch);
    if (through > bound) {
      adj[p.a].emplace_back(p.b, p.d);
      adj[p.b].emplace_back(p.a, p.d);
      edges.push_back(SpannerEdge{p.a, p.b, p.d});
    }
  }
  return SpannerGraph(n, std::move(edges), delta);
}

}  // namespace geopriv
