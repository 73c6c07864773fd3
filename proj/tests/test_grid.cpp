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

#include <cmath>
#include <random>

#include "geopriv/grid.hpp"
#include "geopriv/prior.hpp"

using namespace geopriv;

TEST_CASE("build_grid basic shapes") {
  const Grid g = build_grid(GeoPoint{40.70, -74.02}, 20, 20, 0.005, 0.004);
  CHECK(g.num_regions() == 400);
  CHECK(g.rows() == 20);
  CHECK(g.cols() == 20);

  const Grid single = build_grid(GeoPoint{0, 0}, 1, 1, 1.0, 1.0);
  CHECK(single.num_regions() == 1);
  CHECK(region_distance(single, 0, 0) == 0.0);

  CHECK_THROWS_AS(build_grid(GeoPoint{0, 0}, 0, 5, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(GeoPoint{0, 0}, 5, -1, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(GeoPoint{0, 0}, 2, 2, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("region_distance normalized lattice values") {
  const Grid g = build_grid(GeoPoint{10, 10}, 4, 5, 0.25, 0.125);
  CHECK(region_distance(g, 7, 7) == 0.0);
  // Horizontal and vertical neighbors sit exactly 1 apart regardless of
  // the geographic aspect ratio.
  CHECK(region_distance(g, 0, 1) == 1.0);
  CHECK(region_distance(g, 0, 5) == 1.0);
  CHECK(region_distance(g, 0, 6) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(region_distance(g, 6, 0) == doctest::Approx(1.41421356).epsilon(1e-7));
  CHECK_THROWS_AS(region_distance(g, 0, 20), std::out_of_range);
  CHECK_THROWS_AS(region_distance(g, -1, 0), std::out_of_range);
}

TEST_CASE("region centers and point lookup") {
  const Grid g = build_grid(GeoPoint{40.0, -74.0}, 2, 3, 0.01, 0.02);
  const GeoPoint c0 = g.center(0);
  CHECK(c0.lat == doctest::Approx(40.01));
  CHECK(c0.lon == doctest::Approx(-73.995));
  CHECK(g.locate(40.01, -73.995).value() == 0);
  CHECK(g.locate(40.03, -73.975).value() == 5);
  CHECK_FALSE(g.locate(39.99, -73.995).has_value());
  CHECK_FALSE(g.locate(40.05, -73.995).has_value());
}

TEST_CASE("distance satisfies the metric axioms on random grids") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 7);
    const int cols = 1 + static_cast<int>(rng() % 7);
    const Grid g = build_grid(GeoPoint{0, 0}, rows, cols, 0.5, 0.5);
    const int n = g.num_regions();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double dab = region_distance(g, a, b);
        CHECK(dab == region_distance(g, b, a));
        if (a == b) {
          CHECK(dab == 0.0);
        } else {
          CHECK(dab > 0.0);
        }
      }
    }
    for (int t = 0; t < 200; ++t) {
      const int a = static_cast<int>(rng() % n);
      const int b = static_cast<int>(rng() % n);
      const int c = static_cast<int>(rng() % n);
      CHECK(region_distance(g, a, c) <=
            region_distance(g, a, b) + region_distance(g, b, c) + 1e-12);
    }
  }
}

TEST_CASE("prior validation") {
  Eigen::VectorXd ok(3);
  ok << 0.2, 0.3, 0.5;
  CHECK_NOTHROW((void)Prior(ok));

  Eigen::VectorXd negative(2);
  negative << 1.1, -0.1;
  CHECK_THROWS_AS((void)Prior(negative), std::invalid_argument);

  Eigen::VectorXd off(2);
  off << 0.5, 0.4;
  CHECK_THROWS_AS((void)Prior(off), std::invalid_argument);

  // Within tolerance of 1 is accepted.
  Eigen::VectorXd close(2);
  close << 0.5, 0.5 + 5e-10;
  CHECK_NOTHROW((void)Prior(close));
}
