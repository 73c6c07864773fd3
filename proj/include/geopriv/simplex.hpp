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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopriv/lp.hpp"

namespace geopriv {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  Eigen::VectorXd values;  // structural variables; partial data unless optimal
  std::int64_t iterations = 0;
};

struct SimplexOptions {
  // 0 picks a cap from the problem size.
  std::int64_t max_iterations = 0;
  // Optional warm start: one structural variable per equality row which,
  // together with the inequality slacks, forms a feasible basis. Falls
  // back to phase 1 when the hint is unusable.
  std::vector<int> equality_basis_hint;
};

// Dense two-phase full-tableau simplex. Pricing is most-negative reduced
// cost; after a long degenerate stall the solver switches to Bland's rule,
// which guarantees termination.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace geopriv
