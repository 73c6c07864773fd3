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

// Test-only oracle: exhaustive vertex enumeration for the tiny
// distance-minimizing programs. Independent of the simplex path — each
// basis candidate is solved directly with a dense LU factorization and
// checked against every constraint.

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "geopriv/grid.hpp"
#include "geopriv/lp.hpp"
#include "geopriv/prior.hpp"

namespace geopriv_test {

// Minimum of sum pi_x d(x,y) q_xy over row-stochastic q >= 0 subject to
// q_xy <= bound * q_x'y for every pair bound and output. Enumerates all
// choices of tight constraints that complete the row-sum equalities to a
// square system. Only feasible for a handful of regions.
inline double brute_force_optimum(const geopriv::Prior& prior,
                                  const geopriv::Grid& grid,
                                  const std::vector<geopriv::PairBound>& pairs,
                                  double feasibility_tol = 1e-9) {
  const int n = grid.num_regions();
  const int nv = n * n;

  // Candidate tight rows: every inequality and every nonnegativity bound.
  struct Row {
    Eigen::VectorXd a;
    double rhs;
  };
  std::vector<Row> candidates;
  for (const auto& pb : pairs) {
    for (int y = 0; y < n; ++y) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(nv);
      a(pb.x * n + y) = 1.0;
      a(pb.xp * n + y) -= pb.bound;
      candidates.push_back(Row{std::move(a), 0.0});
    }
  }
  for (int j = 0; j < nv; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(nv);
    a(j) = 1.0;
    candidates.push_back(Row{std::move(a), 0.0});
  }

  Eigen::VectorXd objective(nv);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      objective(x * n + y) = prior(x) * geopriv::region_distance(grid, x, y);
    }
  }

  const int need = nv - n;  // tight rows beyond the n equalities
  const int total = static_cast<int>(candidates.size());
  std::vector<int> pick(static_cast<std::size_t>(need));
  for (int i = 0; i < need; ++i) pick[static_cast<std::size_t>(i)] = i;

  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd system(nv, nv);
  Eigen::VectorXd rhs(nv);

  const auto evaluate = [&]() {
    system.setZero();
    rhs.setZero();
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) system(x, x * n + y) = 1.0;
      rhs(x) = 1.0;
    }
    for (int i = 0; i < need; ++i) {
      const Row& row = candidates[static_cast<std::size_t>(
          pick[static_cast<std::size_t>(i)])];
      system.row(n + i) = row.a;
      rhs(n + i) = row.rhs;
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::VectorXd q = lu.solve(rhs);
    if (!(q.allFinite())) return;
    if ((system * q - rhs).cwiseAbs().maxCoeff() > 1e-7) return;  // singular
    if (q.minCoeff() < -feasibility_tol) return;
    for (const auto& pb : pairs) {
      for (int y = 0; y < n; ++y) {
        if (q(pb.x * n + y) - pb.bound * q(pb.xp * n + y) > feasibility_tol) {
          return;
        }
      }
    }
    best = std::min(best, objective.dot(q));
  };

  // Lexicographic combinations of `need` out of `total`.
  while (true) {
    evaluate();
    int i = need - 1;
    while (i >= 0 &&
           pick[static_cast<std::size_t>(i)] == total - need + i) {
      --i;
    }
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < need; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

}  // namespace geopriv_test
