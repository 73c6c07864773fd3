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

namespace geopriv {

inline constexpr double kProbSumTolerance = 1e-9;

// Probability distribution over grid regions. Entries are validated to be
// nonnegative and to sum to 1 within kProbSumTolerance at construction.
class Prior {
 public:
  explicit Prior(Eigen::VectorXd probs);

  const Eigen::VectorXd& probs() const { return probs_; }
  double operator()(int region) const { return probs_(region); }
  Eigen::Index size() const { return probs_.size(); }

 private:
  Eigen::VectorXd probs_;
};

}  // namespace geopriv
