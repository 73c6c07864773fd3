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

#include "geopriv/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geopriv {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kFeasEps = 1e-8;

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::RowMajor>;

// Full-tableau state. Row layout: m constraint rows, then the phase-2
// cost row, then (during phase 1) the phase-1 cost row. The last column
// holds the rhs.
struct SimplexState {
  Tableau t;
  std::vector<int> basis;        // basic column per constraint row
  std::vector<char> artificial;  // per column
  int m = 0;                     // constraint rows
  int ncols = 0;                 // columns excluding rhs
  int rhs = 0;                   // rhs column index
  std::int64_t pivots = 0;

  void pivot(int row, int col) {
    double* prow = t.row(row).data();
    const double inv = 1.0 / prow[col];
    if (inv != 1.0) {
      t.row(row) *= inv;
    }
    prow[col] = 1.0;
    const int total_rows = static_cast<int>(t.rows());
    for (int i = 0; i < total_rows; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) {
        t.row(i) -= f * t.row(row);
        t(i, col) = 0.0;
      }
    }
    basis[row] = col;
    ++pivots;
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const int nv = lp.num_vars;
  const int m_le = static_cast<int>(lp.less_equal.size());
  const int m_eq = static_cast<int>(lp.equal.size());
  const int m = m_le + m_eq;
  if (nv <= 0) {
    throw std::invalid_argument("linear program has no variables");
  }
  if (static_cast<Eigen::Index>(nv) != lp.objective.size()) {
    throw std::invalid_argument("objective size does not match num_vars");
  }

  LpSolution sol;
  sol.values = Eigen::VectorXd::Zero(nv);
  if (m == 0) {
    // Only nonnegativity: the optimum is 0 unless some cost is negative.
    for (int j = 0; j < nv; ++j) {
      if (lp.objective(j) < -kCostEps) {
        sol.status = LpStatus::kUnbounded;
        return sol;
      }
    }
    sol.status = LpStatus::kOptimal;
    sol.objective = 0.0;
    return sol;
  }

  // Column layout: structural, slacks, artificials (allocated lazily).
  const int slack_base = nv;
  int ncols = nv + m_le;

  SimplexState st;
  std::vector<double> row_scale(static_cast<std::size_t>(m), 1.0);
  std::vector<char> flipped(static_cast<std::size_t>(m), 0);

  const auto fill_base = [&](int total_cols) {
    st.m = m;
    st.ncols = total_cols;
    st.rhs = total_cols;
    st.t = Tableau::Zero(m + 2, total_cols + 1);
    st.basis.assign(static_cast<std::size_t>(m), -1);
    st.artificial.assign(static_cast<std::size_t>(total_cols), 0);
    st.pivots = 0;
    for (int i = 0; i < m; ++i) {
      const bool is_le = i < m_le;
      const SparseRow& row =
          is_le ? lp.less_equal[static_cast<std::size_t>(i)]
                : lp.equal[static_cast<std::size_t>(i - m_le)];
      double scale = 0.0;
      for (const auto& [j, c] : row.coeffs) {
        if (j < 0 || j >= nv) {
          throw std::invalid_argument("constraint touches unknown variable " +
                                      std::to_string(j));
        }
        if (!std::isfinite(c)) {
          throw std::invalid_argument("non-finite constraint coefficient");
        }
        st.t(i, j) += c;
        scale = std::max(scale, std::abs(c));
      }
      if (scale == 0.0) scale = 1.0;
      row_scale[static_cast<std::size_t>(i)] = scale;
      st.t.row(i) /= scale;
      double rhs = row.rhs / scale;
      if (is_le) st.t(i, slack_base + i) = 1.0;
      if (rhs < 0.0) {
        st.t.row(i) *= -1.0;
        rhs = -rhs;
        flipped[static_cast<std::size_t>(i)] = 1;
      } else {
        flipped[static_cast<std::size_t>(i)] = 0;
      }
      st.t(i, st.rhs) = rhs;
    }
    // Phase-2 reduced costs.
    for (int j = 0; j < nv; ++j) st.t(m, j) = lp.objective(j);
  };

  bool warm_started = false;
  if (!options.equality_basis_hint.empty()) {
    if (static_cast<int>(options.equality_basis_hint.size()) != m_eq) {
      throw std::invalid_argument(
          "equality basis hint must name one variable per equality row");
    }
    fill_base(ncols);
    bool ok = true;
    for (int i = 0; i < m_le && ok; ++i) {
      // Slack must be usable as the initial basic variable.
      if (flipped[static_cast<std::size_t>(i)]) ok = false;
    }
    std::vector<char> used(static_cast<std::size_t>(nv), 0);
    for (int r = 0; ok && r < m_eq; ++r) {
      const int col = options.equality_basis_hint[static_cast<std::size_t>(r)];
      if (col < 0 || col >= nv || used[static_cast<std::size_t>(col)]) {
        ok = false;
        break;
      }
      used[static_cast<std::size_t>(col)] = 1;
      const int row = m_le + r;
      if (std::abs(st.t(row, col)) < kPivotEps) {
        ok = false;
        break;
      }
      st.pivot(row, col);
    }
    if (ok) {
      for (int i = 0; i < m_le; ++i) st.basis[static_cast<std::size_t>(i)] = slack_base + i;
      for (int i = 0; i < m; ++i) {
        if (st.t(i, st.rhs) < -kFeasEps) {
          ok = false;
          break;
        }
      }
    }
    warm_started = ok;
  }

  if (!warm_started) {
    // Phase 1 with artificials on equality rows and flipped slack rows.
    fill_base(ncols);  // fresh tableau in case a failed hint touched it
    std::vector<int> needs_artificial;
    for (int i = 0; i < m; ++i) {
      if (i < m_le && !flipped[static_cast<std::size_t>(i)]) {
        st.basis[static_cast<std::size_t>(i)] = slack_base + i;
      } else {
        needs_artificial.push_back(i);
      }
    }
    const int art_base = ncols;
    ncols += static_cast<int>(needs_artificial.size());
    fill_base(ncols);
    for (int i = 0; i < m; ++i) {
      if (i < m_le && !flipped[static_cast<std::size_t>(i)]) {
        st.basis[static_cast<std::size_t>(i)] = slack_base + i;
      }
    }
    int next_art = art_base;
    for (const int i : needs_artificial) {
      st.t(i, next_art) = 1.0;
      st.artificial[static_cast<std::size_t>(next_art)] = 1;
      st.basis[static_cast<std::size_t>(i)] = next_art;
      // Price the artificial out of the phase-1 cost row.
      st.t.row(m + 1) -= st.t.row(i);
      st.t(m + 1, next_art) = 0.0;
      ++next_art;
    }
  }

  const std::int64_t max_iter =
      options.max_iterations > 0
          ? options.max_iterations
          : 50000 + 20LL * (static_cast<std::int64_t>(m) + ncols);

  // Shared pivot loop for both phases. cost_row is the row being
  // minimized; in phase 2 artificial columns are never allowed to enter.
  bool bland = false;
  std::int64_t stalled = 0;
  const std::int64_t stall_limit = std::max<std::int64_t>(1000, 2 * m);

  const auto run_phase = [&](int cost_row, bool allow_artificial) -> LpStatus {
    while (true) {
      if (st.pivots >= max_iter) return LpStatus::kIterationLimit;
      // Entering column.
      int enter = -1;
      double best = -kCostEps;
      const double* costs = st.t.row(cost_row).data();
      for (int j = 0; j < st.ncols; ++j) {
        if (!allow_artificial && st.artificial[static_cast<std::size_t>(j)]) {
          continue;
        }
        const double c = costs[j];
        if (c < best) {
          if (bland) {
            enter = j;
            break;  // smallest index with negative cost
          }
          best = c;
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      // Ratio test.
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < st.m; ++i) {
        const double a = st.t(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = st.t(i, st.rhs) / a;
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
          if (bland) {
            if (st.basis[static_cast<std::size_t>(i)] <
                st.basis[static_cast<std::size_t>(leave)]) {
              leave = i;
            }
          } else if (a > st.t(leave, enter)) {
            leave = i;  // larger pivot element for stability
          }
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;

      const double before = st.t(cost_row, st.rhs);
      st.pivot(leave, enter);
      if (std::abs(st.t(cost_row, st.rhs) - before) <=
          1e-12 * (1.0 + std::abs(before))) {
        if (++stalled > stall_limit) bland = true;
      } else {
        stalled = 0;
      }
    }
  };

  if (!warm_started) {
    const LpStatus phase1 = run_phase(m + 1, true);
    sol.iterations = st.pivots;
    if (phase1 == LpStatus::kIterationLimit) {
      sol.status = LpStatus::kIterationLimit;
      return sol;
    }
    // Phase-1 objective value is -t(m+1, rhs).
    const double infeas = -st.t(m + 1, st.rhs);
    if (!(infeas <= kFeasEps)) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive leftover artificials out of the basis where possible; rows
    // where no structural pivot exists are redundant and stay parked on a
    // zero-valued artificial that is never allowed back in.
    for (int i = 0; i < st.m; ++i) {
      const int b = st.basis[static_cast<std::size_t>(i)];
      if (!st.artificial[static_cast<std::size_t>(b)]) continue;
      int col = -1;
      for (int j = 0; j < st.ncols; ++j) {
        if (st.artificial[static_cast<std::size_t>(j)]) continue;
        if (std::abs(st.t(i, j)) > kPivotEps) {
          col = j;
          break;
        }
      }
      if (col >= 0) st.pivot(i, col);
    }
  }

  bland = false;
  stalled = 0;
  const LpStatus phase2 = run_phase(m, false);
  sol.iterations = st.pivots;
  for (int i = 0; i < st.m; ++i) {
    const int b = st.basis[static_cast<std::size_t>(i)];
    if (b < nv) sol.values(b) = st.t(i, st.rhs);
  }
  sol.objective = lp.objective.dot(sol.values);
  sol.status = phase2;
  return sol;
}

}  // namespace geopriv
