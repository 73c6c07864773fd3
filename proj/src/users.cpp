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

#include "geopriv/users.hpp"

#include <stdexcept>
#include <unordered_set>

namespace geopriv {

UserLocations::UserLocations(std::vector<UserRecord> records)
    : records_(std::move(records)) {
  std::unordered_set<std::string> seen;
  seen.reserve(records_.size());
  for (const auto& r : records_) {
    if (!seen.insert(r.user_id).second) {
      throw std::invalid_argument("duplicate user_id '" + r.user_id +
                                  "': one location per user");
    }
  }
}

}  // namespace geopriv
