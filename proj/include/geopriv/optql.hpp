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
#include <stdexcept>
#include <string>

#include "geopriv/grid.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/simplex.hpp"

namespace geopriv {

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OptqlMode { kFullPairs, kSpanner };

struct OptqlOptions {
  OptqlMode mode = OptqlMode::kSpanner;
  double delta = 1.09;  // spanner dilation; ignored in full-pairs mode
  // Alternative exponent reading for spanner mode: budget epsilon applied
  // to the graph metric itself. The Euclidean guarantee then degrades to
  // epsilon * delta, and the result is verified at that level.
  bool budget_on_graph_metric = false;
  double verify_tolerance = kDefaultVerifyTolerance;
  std::int64_t max_lp_iterations = 0;  // per solve, 0 = automatic
  int max_rounds = 1000;               // row-generation rounds
};

struct OptqlResult {
  Mechanism mechanism;
  double quality_loss = 0.0;  // achieved expected distance
  std::int64_t lp_iterations = 0;
  int rounds = 0;
  int working_rows = 0;  // inequality rows in the final working set
};

// Minimizes expected distance subject to the distance-scaled privacy
// bounds, via the bundled simplex. Constraint rows are generated lazily:
// the loop solves a relaxation, scans every (pair, output) bound on the
// extracted solution, and re-solves with the violated rows added until
// none remain, which makes the relaxed optimum optimal for the full
// program. Negative entries above -1e-9 are clamped, rows renormalized
// (drift beyond 1e-8 is an error), a zero bottom column attached, and the
// result re-verified before it is returned.
OptqlResult build_optql(const Prior& prior, const Grid& grid, double epsilon,
                        const OptqlOptions& options = {});

// Wraps an externally computed solution of the same program (see
// export_lp / import_lp_solution) in the clamp + renormalize + verify
// pipeline used by build_optql.
OptqlResult optql_from_solution(const Prior& prior, const Grid& grid,
                                double epsilon, const Eigen::VectorXd& values,
                                const OptqlOptions& options = {});

std::string optql_label(const OptqlOptions& options);

}  // namespace geopriv
