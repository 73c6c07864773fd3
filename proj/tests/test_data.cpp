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
#include <cmath>
#include <random>
#include <sstream>

#include "geopriv/ingest.hpp"
#include "geopriv/synth.hpp"

using namespace geopriv;

namespace {

const char* kHeader = "user_id,lat,lon,timestamp\n";

Grid test_grid() { return build_grid(GeoPoint{40.0, -74.0}, 2, 2, 0.1, 0.1); }

}  // namespace

TEST_CASE("timestamp parsing") {
  CHECK(parse_timestamp("0") == 0);
  CHECK(parse_timestamp("1279979106") == 1279979106);
  CHECK(parse_timestamp("-60") == -60);
  CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_timestamp("1970-01-02 00:00:00") == 86400);
  CHECK(parse_timestamp("2010-07-24T13:45:06Z") == 1279979106);
  CHECK(parse_timestamp("2010-07-24T13:45:06.250Z") == 1279979106);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), std::invalid_argument);
  CHECK_THROWS_AS(parse_timestamp("2010-13-01T00:00:00"), std::invalid_argument);
}

TEST_CASE("ingest reduces, counts skips, and builds the empirical prior") {
  std::istringstream in(std::string(kHeader) +
                        "alice,40.05,-73.95,100\n"     // region 0
                        "bob,40.05,-73.85,100\n"       // region 1
                        "carol,40.15,-73.95,100\n"     // region 2
                        "dave,10.0,10.0,100\n");       // out of bounds
  const IngestResult r =
      ingest_checkins(in, test_grid(), ReducePolicy::kFirstByTimestamp);
  CHECK(r.users.size() == 3);
  CHECK(r.skipped_out_of_bounds == 1);
  CHECK(r.prior(0) == doctest::Approx(1.0 / 3.0));
  CHECK(r.prior(1) == doctest::Approx(1.0 / 3.0));
  CHECK(r.prior(2) == doctest::Approx(1.0 / 3.0));
  CHECK(r.prior(3) == 0.0);
}

TEST_CASE("first-by-timestamp picks the earliest check-in") {
  std::istringstream in(std::string(kHeader) +
                        "u,40.05,-73.85,2\n"   // region 1 at t=2
                        "u,40.05,-73.95,1\n"); // region 0 at t=1
  const IngestResult r =
      ingest_checkins(in, test_grid(), ReducePolicy::kFirstByTimestamp);
  REQUIRE(r.users.size() == 1);
  CHECK(r.users.records()[0].region == 0);
}

TEST_CASE("most-frequent-region breaks ties toward the smaller index") {
  std::istringstream in(std::string(kHeader) +
                        "u,40.05,-73.85,1\n"   // region 1
                        "u,40.05,-73.85,2\n"   // region 1
                        "u,40.15,-73.95,3\n"   // region 2
                        "u,40.15,-73.95,4\n"   // region 2
                        "u,40.05,-73.95,5\n"); // region 0 once
  const IngestResult r =
      ingest_checkins(in, test_grid(), ReducePolicy::kMostFrequentRegion);
  REQUIRE(r.users.size() == 1);
  CHECK(r.users.records()[0].region == 1);
}

TEST_CASE("ingest is invariant to row order") {
  const std::vector<std::string> rows = {
      "a,40.05,-73.95,5\n", "a,40.05,-73.85,9\n",  "b,40.15,-73.85,3\n",
      "b,40.15,-73.85,4\n", "b,40.05,-73.95,11\n", "c,40.15,-73.95,2\n"};
  std::vector<std::string> shuffled = rows;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (const auto policy :
         {ReducePolicy::kFirstByTimestamp, ReducePolicy::kMostFrequentRegion}) {
      std::string base_text = kHeader;
      for (const auto& row : rows) base_text += row;
      std::string shuf_text = kHeader;
      for (const auto& row : shuffled) shuf_text += row;
      std::istringstream base_in(base_text), shuf_in(shuf_text);
      const IngestResult base = ingest_checkins(base_in, test_grid(), policy);
      const IngestResult shuf = ingest_checkins(shuf_in, test_grid(), policy);
      REQUIRE(base.users.size() == shuf.users.size());
      std::map<std::string, int> base_map, shuf_map;
      for (const auto& u : base.users.records()) base_map[u.user_id] = u.region;
      for (const auto& u : shuf.users.records()) shuf_map[u.user_id] = u.region;
      CHECK(base_map == shuf_map);
    }
  }
}

TEST_CASE("ingest error paths") {
  // Malformed row reports its line number.
  std::istringstream bad(std::string(kHeader) + "u,40.05,-73.95\n");
  try {
    ingest_checkins(bad, test_grid(), ReducePolicy::kFirstByTimestamp);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  // All rows out of bounds is an error, with everything counted skipped.
  std::istringstream oob(std::string(kHeader) + "u,0,0,1\nv,1,1,2\n");
  CHECK_THROWS_AS(
      ingest_checkins(oob, test_grid(), ReducePolicy::kFirstByTimestamp),
      std::runtime_error);

  std::istringstream empty("");
  CHECK_THROWS_AS(
      ingest_checkins(empty, test_grid(), ReducePolicy::kFirstByTimestamp),
      std::runtime_error);
}

TEST_CASE("synthetic population determinism and degenerate cases") {
  const Grid g = build_grid(GeoPoint{0, 0}, 5, 5, 1.0, 1.0);

  // Zero spread puts everyone at the center.
  const SynthResult point =
      synth_population(g, {MixtureComponent{12, 0.0, 1.0}}, 50, 1);
  for (const auto& u : point.users.records()) CHECK(u.region == 12);
  CHECK(point.prior(12) == 1.0);

  // Same seed, same users; different seed differs somewhere.
  const auto components = std::vector<MixtureComponent>{
      MixtureComponent{6, 1.0, 0.5}, MixtureComponent{18, 2.0, 0.5}};
  const SynthResult a = synth_population(g, components, 300, 42);
  const SynthResult b = synth_population(g, components, 300, 42);
  REQUIRE(a.users.size() == b.users.size());
  for (std::size_t i = 0; i < a.users.size(); ++i) {
    CHECK(a.users.records()[i].region == b.users.records()[i].region);
    CHECK(a.users.records()[i].user_id == b.users.records()[i].user_id);
  }
  const SynthResult c = synth_population(g, components, 300, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.users.size(); ++i) {
    differs = differs || a.users.records()[i].region != c.users.records()[i].region;
  }
  CHECK(differs);

  CHECK_THROWS_AS(synth_population(g, {}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(
      synth_population(g, {MixtureComponent{0, 1.0, 0.0}}, 10, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      synth_population(g, {MixtureComponent{0, 1.0, 1.0}}, 0, 1),
      std::invalid_argument);
}

TEST_CASE("synthetic sample matches the analytic mixture") {
  const Grid g = build_grid(GeoPoint{0, 0}, 10, 10, 1.0, 1.0);
  const int n = 10000;
  const SynthResult r =
      synth_population(g, {MixtureComponent{55, 2.0, 1.0}}, n, 7);

  Eigen::VectorXd freq = Eigen::VectorXd::Zero(g.num_regions());
  for (const auto& u : r.users.records()) freq(u.region) += 1.0;
  freq /= static_cast<double>(n);

  int within = 0;
  for (int region = 0; region < g.num_regions(); ++region) {
    const double p = r.prior(region);
    const double se = std::sqrt(p * (1.0 - p) / n);
    if (std::abs(freq(region) - p) <= 3.0 * se + 1e-12) ++within;
  }
  CHECK(within >= 95);  // expect ~99.7 of 100 inside three standard errors
}
