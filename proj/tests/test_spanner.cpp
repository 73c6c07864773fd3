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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "geopriv/spanner.hpp"

using namespace geopriv;

namespace {

bool has_edge(const SpannerGraph& s, int a, int b) {
  return std::any_of(s.edges().begin(), s.edges().end(),
                     [&](const SpannerEdge& e) {
                       return (e.a == a && e.b == b) || (e.a == b && e.b == a);
                     });
}

}  // namespace

TEST_CASE("greedy spanner on three collinear cells") {
  const Grid g = build_grid(GeoPoint{0, 0}, 1, 3, 1.0, 1.0);
  const SpannerGraph s = build_spanner(g, 1.5);
  CHECK(s.edges().size() == 2);
  CHECK(has_edge(s, 0, 1));
  CHECK(has_edge(s, 1, 2));
  CHECK_FALSE(has_edge(s, 0, 2));  // path 0-1-2 has length 2 <= 1.5 * 2

  // Even at dilation 1 the collinear pair coincides with its path.
  const SpannerGraph tight = build_spanner(g, 1.0);
  CHECK(tight.edges().size() == 2);
  CHECK_FALSE(has_edge(tight, 0, 2));
}

TEST_CASE("dilation 1 keeps every non-collinear pair") {
  const Grid g = build_grid(GeoPoint{0, 0}, 2, 2, 1.0, 1.0);
  const SpannerGraph s = build_spanner(g, 1.0);
  // Four unit edges plus both diagonals.
  CHECK(s.edges().size() == 6);
  CHECK(has_edge(s, 0, 3));
  CHECK(has_edge(s, 1, 2));
}

TEST_CASE("single region spanner is empty and connected") {
  const Grid g = build_grid(GeoPoint{0, 0}, 1, 1, 1.0, 1.0);
  const SpannerGraph s = build_spanner(g, 1.09);
  CHECK(s.edges().empty());
  CHECK(s.is_connected());
  CHECK_THROWS_AS(build_spanner(g, 0.9), std::invalid_argument);
}

TEST_CASE("dilation invariant holds on random grids") {
  std::mt19937 rng(31);
  for (const double delta : {1.05, 1.09, 1.5}) {
    for (int trial = 0; trial < 4; ++trial) {
      const int rows = 2 + static_cast<int>(rng() % 7);
      const int cols = 2 + static_cast<int>(rng() % 7);
      const Grid g = build_grid(GeoPoint{0, 0}, rows, cols, 1.0, 1.0);
      const SpannerGraph s = build_spanner(g, delta);
      REQUIRE(s.is_connected());
      const int n = g.num_regions();
      for (int a = 0; a < n; ++a) {
        const Eigen::VectorXd dist = s.shortest_paths(a);
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          const double d = region_distance(g, a, b);
          CHECK(dist(b) >= d - 1e-9);
          CHECK(dist(b) <= delta * d * (1.0 + 1e-9));
        }
      }
    }
  }
}

TEST_CASE("spanner is sparser than the complete graph at useful dilations") {
  const Grid g = build_grid(GeoPoint{0, 0}, 8, 8, 1.0, 1.0);
  const SpannerGraph s = build_spanner(g, 1.09);
  const std::size_t complete = 64u * 63u / 2u;
  CHECK(s.edges().size() < complete / 4);
}
