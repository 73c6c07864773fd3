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

#include "geopriv/prior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace geopriv {

Prior::Prior(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) {
    throw std::invalid_argument("prior must have at least one entry");
  }
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_(i) >= 0.0)) {
      throw std::invalid_argument("prior entry " + std::to_string(i) +
                                  " is negative or NaN");
    }
  }
  const double sum = probs_.sum();
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument("prior entries sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-9");
  }
}

}  // namespace geopriv
