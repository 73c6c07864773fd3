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
#include <string>
#include <vector>

namespace geopriv {

// Reported value standing for "outside the area of interest".
inline constexpr int kBottom = -1;

inline bool is_bottom(int reported) { return reported == kBottom; }

struct UserRecord {
  std::string user_id;
  int region = 0;
};

// One true location per user. User ids are unique.
class UserLocations {
 public:
  UserLocations() = default;
  explicit UserLocations(std::vector<UserRecord> records);

  const std::vector<UserRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<UserRecord> records_;
};

struct ObfuscatedRecord {
  std::string user_id;
  int true_region = 0;
  int reported = kBottom;  // region index, or kBottom
};

// Per-user true and reported locations, plus provenance of the mechanism
// run that produced them. Deletion-style anonymizers return new datasets;
// records are never mutated in place.
struct ObfuscatedDataset {
  std::vector<ObfuscatedRecord> records;
  std::string mechanism_label;
  std::uint64_t seed = 0;

  std::size_t size() const { return records.size(); }
};

}  // namespace geopriv
