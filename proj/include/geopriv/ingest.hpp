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

#include <cstdint>
#include <istream>
#include <string>

#include "geopriv/grid.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/users.hpp"

namespace geopriv {

// How multiple check-ins by the same user collapse to a single region.
enum class ReducePolicy {
  kFirstByTimestamp,    // earliest timestamp wins; ties break to the
                        // smallest region index
  kMostFrequentRegion,  // most frequent region wins; ties break to the
                        // smallest region index
};

ReducePolicy parse_reduce_policy(const std::string& name);
std::string to_string(ReducePolicy policy);

struct IngestResult {
  UserLocations users;
  Prior prior;
  std::size_t skipped_out_of_bounds = 0;
};

// Reads check-in rows `user_id,lat,lon,timestamp` (header required) and
// reduces them to one region per user. Timestamps are ISO-8601
// (YYYY-MM-DD[T ]hh:mm:ss, optional fractional seconds and 'Z') or integer
// epoch seconds. Rows outside the grid are counted as skipped; malformed
// rows raise with their line number. The prior is the empirical
// distribution of the per-user regions.
IngestResult ingest_checkins(std::istream& in, const Grid& grid,
                             ReducePolicy policy);

// Exposed for tests: parses a timestamp to epoch seconds.
std::int64_t parse_timestamp(const std::string& text);

}  // namespace geopriv
