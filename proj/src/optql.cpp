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

#include "geopriv/optql.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <unordered_map>
#include <vector>

#include "geopriv/lp.hpp"
#include "geopriv/spanner.hpp"

namespace geopriv {

namespace {

constexpr double kNegativeClamp = 1e-9;
constexpr double kRowDrift = 1e-8;
constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kFeasEps = 1e-9;

// Clamps negative roundoff and closes the exact-zero pattern under the
// pair bounds: a zero on the bounding side forces the bounded side down,
// and anything within the solver's residual of zero is snapped so that
// downstream ratio checks see the zeros the solver enforced rather than
// basic-variable dust. Load-bearing small values are never touched (the
// cascade cap scales with the pair bound).
void clean_solution(Eigen::VectorXd& values,
                    const std::vector<PairBound>& pairs, int n) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < 0.0 && values(i) >= -kNegativeClamp) values(i) = 0.0;
  }
  bool changed = true;
  int passes = 0;
  while (changed && passes++ <= n + 2) {
    changed = false;
    for (const auto& pb : pairs) {
      for (int y = 0; y < n; ++y) {
        const int bounded = pb.x * n + y;
        const int bounding = pb.xp * n + y;
        if (values(bounding) == 0.0 && values(bounded) > 0.0 &&
            values(bounded) <= std::max(kNegativeClamp, pb.bound * 1e-12)) {
          values(bounded) = 0.0;
          changed = true;
        }
      }
    }
  }
}

// Incremental dense simplex used by the row-generating loop. The tableau
// persists across rounds: freshly added cuts enter with (possibly
// negative) basic slacks, dual steps restore feasibility, and primal
// steps restore optimality. Cuts whose slack is basic and clearly
// positive can be removed again, which keeps the working set close to
// the active set. The public solve_lp remains the general two-phase
// routine; this engine exists so that thousands of relaxation re-solves
// do not repeat each other's pivots.
class RowGenSimplex {
 public:
  RowGenSimplex(const Prior& prior, const Grid& grid, int anchor,
                std::int64_t max_pivots)
      : n_(grid.num_regions()),
        nv_(n_ * n_),
        max_pivots_(max_pivots) {
    rows_ = n_;
    cols_ = nv_;
    row_cap_ = n_ + 256;
    col_cap_ = nv_ + 256;
    t_ = Tableau::Zero(row_cap_, col_cap_);
    rhs_ = Eigen::VectorXd::Zero(row_cap_);
    cost_ = Eigen::RowVectorXd::Zero(col_cap_);
    basis_.assign(static_cast<std::size_t>(row_cap_), -1);
    basic_row_.assign(static_cast<std::size_t>(col_cap_), -1);
    cut_keys_.assign(static_cast<std::size_t>(col_cap_), -1);

    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        t_(x, x * n_ + y) = 1.0;
        cost_(x * n_ + y) = prior(x) * region_distance(grid, x, y);
      }
      rhs_(x) = 1.0;
    }
    // Everyone reporting the anchor region satisfies any pair bound, and
    // the corresponding basis needs no phase-1 artifacts.
    for (int x = 0; x < n_; ++x) {
      pivot(x, x * n_ + anchor);
    }
  }

  std::int64_t pivots() const { return pivots_; }
  int live_cuts() const { return cols_ - nv_; }

  void add_cut(std::int64_t key, int bounded_var, int bounding_var,
               double bound) {
    ensure_capacity(rows_ + 1, cols_ + 1);
    const int row = rows_++;
    const int col = cols_++;
    // Slots may be reused after a purge; clear any stale data.
    t_.col(col).head(rows_).setZero();
    t_.row(row).head(cols_).setZero();
    cost_(col) = 0.0;
    t_(row, col) = 1.0;
    rhs_(row) = 0.0;
    cut_keys_[static_cast<std::size_t>(col)] = key;
    basis_[static_cast<std::size_t>(row)] = col;
    basic_row_[static_cast<std::size_t>(col)] = row;

    // Express the new row in the current basis: subtract the basic rows
    // of the two structural columns it touches.
    add_term(row, bounded_var, 1.0);
    add_term(row, bounding_var, -bound);
  }

  // Restores feasibility (dual steps) and optimality (primal steps).
  void reoptimize() {
    dual_phase();
    primal_phase();
  }

  Eigen::VectorXd values() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nv_);
    for (int i = 0; i < rows_; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < nv_) x(b) = rhs_(i);
    }
    return x;
  }

  // Keys of cuts whose slack is basic with value above the threshold;
  // removing them leaves the current vertex unchanged.
  std::vector<std::int64_t> purgeable_keys(double threshold) const {
    std::vector<std::int64_t> keys;
    for (int col = nv_; col < cols_; ++col) {
      const int row = basic_row_[static_cast<std::size_t>(col)];
      if (row >= 0 && rhs_(row) > threshold) {
        keys.push_back(cut_keys_[static_cast<std::size_t>(col)]);
      }
    }
    return keys;
  }

  void remove_cuts(const std::vector<std::int64_t>& keys) {
    for (const std::int64_t key : keys) {
      int col = -1;
      for (int j = nv_; j < cols_; ++j) {
        if (cut_keys_[static_cast<std::size_t>(j)] == key) {
          col = j;
          break;
        }
      }
      if (col < 0) continue;
      const int row = basic_row_[static_cast<std::size_t>(col)];
      if (row < 0) continue;  // slack nonbasic: cut is active, keep it
      drop_row(row);
      drop_col(col);
    }
  }

 private:
  using Tableau =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  void ensure_capacity(int rows, int cols) {
    if (rows > row_cap_ || cols > col_cap_) {
      const int new_rows = std::max(rows, row_cap_ + row_cap_ / 2);
      const int new_cols = std::max(cols, col_cap_ + col_cap_ / 2);
      t_.conservativeResize(new_rows, new_cols);
      t_.bottomRows(new_rows - row_cap_).setZero();
      t_.rightCols(new_cols - col_cap_).setZero();
      rhs_.conservativeResize(new_rows);
      cost_.conservativeResize(new_cols);
      rhs_.tail(new_rows - row_cap_).setZero();
      cost_.tail(new_cols - col_cap_).setZero();
      basis_.resize(static_cast<std::size_t>(new_rows), -1);
      basic_row_.resize(static_cast<std::size_t>(new_cols), -1);
      cut_keys_.resize(static_cast<std::size_t>(new_cols), -1);
      row_cap_ = new_rows;
      col_cap_ = new_cols;
    }
  }

  void add_term(int row, int var, double coeff) {
    const int var_row = basic_row_[static_cast<std::size_t>(var)];
    if (var_row >= 0) {
      // Column `var` is basic: its tableau column is the unit vector, so
      // eliminating it costs one row operation.
      t_.row(row).head(cols_) -= coeff * t_.row(var_row).head(cols_);
      rhs_(row) -= coeff * rhs_(var_row);
      t_(row, var) = 0.0;
    } else {
      t_(row, var) += coeff;
    }
  }

  void pivot(int row, int col) {
    if (++pivots_ > max_pivots_) {
      throw SolverError("pivot budget exceeded (" +
                        std::to_string(max_pivots_) + ")");
    }
    const double inv = 1.0 / t_(row, col);
    if (inv != 1.0) {
      t_.row(row).head(cols_) *= inv;
      rhs_(row) *= inv;
    }
    t_(row, col) = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) {
        t_.row(i).head(cols_) -= f * t_.row(row).head(cols_);
        t_(i, col) = 0.0;
        rhs_(i) -= f * rhs_(row);
      }
    }
    const double fc = cost_(col);
    if (fc != 0.0) {
      cost_.head(cols_) -= fc * t_.row(row).head(cols_);
      cost_(col) = 0.0;
      cost_rhs_ -= fc * rhs_(row);
    }
    const int old = basis_[static_cast<std::size_t>(row)];
    if (old >= 0) basic_row_[static_cast<std::size_t>(old)] = -1;
    basis_[static_cast<std::size_t>(row)] = col;
    basic_row_[static_cast<std::size_t>(col)] = row;
  }

  void dual_phase() {
    std::int64_t stalled = 0;
    bool bland = false;
    while (true) {
      // Leaving row: most negative rhs; after a stall, the smallest
      // index (Bland-style) to break cycles.
      int row = -1;
      double most_negative = -kFeasEps;
      for (int i = 0; i < rows_; ++i) {
        if (rhs_(i) < most_negative) {
          most_negative = rhs_(i);
          row = i;
          if (bland) break;
        }
      }
      if (row < 0) return;

      // Entering column: minimum ratio keeps the reduced costs
      // nonnegative. Ties break to the larger pivot magnitude, or to the
      // first (smallest) index in Bland mode.
      int enter = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_mag = 0.0;
      for (int j = 0; j < cols_; ++j) {
        const double a = t_(row, j);
        if (a >= -kPivotEps) continue;
        const double ratio = cost_(j) / (-a);
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          best_mag = -a;
          enter = j;
        } else if (ratio < best_ratio + 1e-12 && enter >= 0 && !bland &&
                   -a > best_mag) {
          best_mag = -a;
          enter = j;
        }
      }
      if (enter < 0) {
        throw SolverError("relaxation became infeasible (numerical)");
      }
      const double before = rhs_(row);
      pivot(row, enter);
      if (std::abs(before) <= 1e-12) {
        if (++stalled > 2000) bland = true;
      } else {
        stalled = 0;
      }
    }
  }

  void primal_phase() {
    std::int64_t stalled = 0;
    bool bland = false;
    double last_objective = -cost_rhs_;
    while (true) {
      int enter = -1;
      double best = -kCostEps;
      for (int j = 0; j < cols_; ++j) {
        const double c = cost_(j);
        if (c < best) {
          best = c;
          enter = j;
          if (bland) break;
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs_(i) / a;
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
          if (bland) {
            if (basis_[static_cast<std::size_t>(i)] <
                basis_[static_cast<std::size_t>(leave)]) {
              leave = i;
            }
          } else if (a > t_(leave, enter)) {
            leave = i;
          }
        }
      }
      if (leave < 0) {
        throw SolverError("relaxation unbounded (numerical)");
      }
      pivot(leave, enter);
      const double now = -cost_rhs_;
      if (std::abs(now - last_objective) <= 1e-14 * (1.0 + std::abs(now))) {
        if (++stalled > 2000) bland = true;
      } else {
        stalled = 0;
      }
      last_objective = now;
    }
  }

  void drop_row(int row) {
    const int last = rows_ - 1;
    if (row != last) {
      t_.row(row).head(cols_).swap(t_.row(last).head(cols_));
      std::swap(rhs_(row), rhs_(last));
      std::swap(basis_[static_cast<std::size_t>(row)],
                basis_[static_cast<std::size_t>(last)]);
      const int moved = basis_[static_cast<std::size_t>(row)];
      if (moved >= 0) basic_row_[static_cast<std::size_t>(moved)] = row;
    }
    const int dropped = basis_[static_cast<std::size_t>(last)];
    if (dropped >= 0) basic_row_[static_cast<std::size_t>(dropped)] = -1;
    basis_[static_cast<std::size_t>(last)] = -1;
    --rows_;
  }

  void drop_col(int col) {
    const int last = cols_ - 1;
    if (col != last) {
      t_.col(col).head(rows_).swap(t_.col(last).head(rows_));
      std::swap(cost_(col), cost_(last));
      std::swap(cut_keys_[static_cast<std::size_t>(col)],
                cut_keys_[static_cast<std::size_t>(last)]);
      const int moved_row = basic_row_[static_cast<std::size_t>(last)];
      basic_row_[static_cast<std::size_t>(col)] = moved_row;
      if (moved_row >= 0) basis_[static_cast<std::size_t>(moved_row)] = col;
    }
    basic_row_[static_cast<std::size_t>(last)] = -1;
    cut_keys_[static_cast<std::size_t>(last)] = -1;
    --cols_;
  }

  int n_;
  int nv_;
  int rows_;
  int cols_;
  int row_cap_;
  int col_cap_;
  std::int64_t pivots_ = 0;
  std::int64_t max_pivots_;
  Tableau t_;
  Eigen::VectorXd rhs_;
  Eigen::RowVectorXd cost_;
  double cost_rhs_ = 0.0;
  std::vector<int> basis_;
  std::vector<int> basic_row_;
  std::vector<std::int64_t> cut_keys_;
};

Mechanism finalize(const Grid& grid, double epsilon, double verify_epsilon,
                   const Eigen::VectorXd& values, const std::string& label,
                   double tolerance) {
  const int n = grid.num_regions();
  Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(n, n + 1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double v = values(x * n + y);
      if (v < 0.0) {
        if (v < -kNegativeClamp) {
          throw SolverError("solution entry q_" + std::to_string(x) + "_" +
                            std::to_string(y) + " = " + std::to_string(v) +
                            " below the clamp threshold");
        }
        v = 0.0;
      }
      probs(x, y) = v;
    }
    const double sum = probs.row(x).head(n).sum();
    if (std::abs(sum - 1.0) > kRowDrift) {
      throw SolverError("solution row " + std::to_string(x) + " sums to " +
                        std::to_string(sum) + "; drift exceeds 1e-8");
    }
    probs.row(x).head(n) /= sum;
  }

  Mechanism mech = new_mechanism(std::move(probs), grid, epsilon, label);
  const GeoIndReport report = verify_geo_ind(mech, grid, verify_epsilon,
                                             /*include_bottom=*/false,
                                             tolerance);
  if (!report.satisfied) {
    throw VerificationError(
        "constructed mechanism violates the privacy bound: ratio " +
        std::to_string(report.max_violation_ratio) + " at (" +
        std::to_string(report.witness_x) + "," +
        std::to_string(report.witness_xprime) + "," +
        std::to_string(report.witness_y) + ")");
  }
  return mech;
}

}  // namespace

std::string optql_label(const OptqlOptions& options) {
  if (options.mode == OptqlMode::kFullPairs) return "OptQL-full";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "OptQL-spanner(%g)", options.delta);
  return buf;
}

OptqlResult build_optql(const Prior& prior, const Grid& grid, double epsilon,
                        const OptqlOptions& options) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
  const int n = grid.num_regions();
  if (prior.size() != n) {
    throw std::invalid_argument("prior/grid dimension mismatch");
  }

  std::vector<PairBound> pairs;
  if (options.mode == OptqlMode::kFullPairs) {
    pairs = full_pair_bounds(grid, epsilon);
  } else {
    if (!(options.delta >= 1.0)) {
      throw std::invalid_argument("spanner dilation must be >= 1");
    }
    const SpannerGraph spanner = build_spanner(grid, options.delta);
    pairs = spanner_pair_bounds(grid, spanner, epsilon,
                                options.budget_on_graph_metric);
  }
  const double verify_epsilon =
      (options.mode == OptqlMode::kSpanner && options.budget_on_graph_metric)
          ? epsilon * options.delta
          : epsilon;

  int anchor = 0;
  prior.probs().maxCoeff(&anchor);

  const std::int64_t pivot_budget =
      options.max_lp_iterations > 0
          ? options.max_lp_iterations
          : 200000 + 100LL * n * n;
  RowGenSimplex engine(prior, grid, anchor, pivot_budget);

  const double ratio_tol = 0.5 * options.verify_tolerance;
  const auto row_key = [n](int p, int y) {
    return static_cast<std::int64_t>(p) * n + y;
  };

  // in_working mirrors the engine's live cut set; readd_counts caps the
  // purge/re-add cycle per row so the outer loop terminates.
  std::vector<char> in_working(pairs.size() * static_cast<std::size_t>(n), 0);
  std::unordered_map<std::int64_t, int> readd_counts;

  OptqlResult result{Mechanism(Eigen::MatrixXd::Zero(1, 2), 0.0, ""), 0.0, 0,
                     0, 0};
  Eigen::VectorXd values;
  struct Violation {
    int pair;
    int y;
    double severity;
  };
  std::vector<Violation> violations;
  const std::size_t add_cap =
      std::max<std::size_t>(1000, 8u * static_cast<unsigned>(n));

  while (true) {
    if (result.rounds >= options.max_rounds) {
      throw SolverError("row generation exceeded " +
                        std::to_string(options.max_rounds) + " rounds");
    }
    ++result.rounds;
    engine.reoptimize();
    values = engine.values();

    if (std::getenv("GEOPRIV_DEBUG") != nullptr) {
      double worst = 0.0;
      int worst_p = -1, worst_y = -1;
      for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
        const PairBound& pb = pairs[static_cast<std::size_t>(p)];
        for (int y = 0; y < n; ++y) {
          if (!in_working[static_cast<std::size_t>(row_key(p, y))]) continue;
          const double resid = values(pb.x * n + y) -
                               pb.bound * values(pb.xp * n + y);
          if (resid > worst) {
            worst = resid;
            worst_p = p;
            worst_y = y;
          }
        }
      }
      std::fprintf(stderr,
                   "round %d: cuts %d pivots %lld worst live residual %.3e "
                   "(pair %d y %d)\n",
                   result.rounds, engine.live_cuts(),
                   static_cast<long long>(engine.pivots()), worst, worst_p,
                   worst_y);
      if (worst > 1e-6) {
        std::fprintf(stderr, "  LIVE CUT VIOLATED after reoptimize\n");
      }
    }

    clean_solution(values, pairs, n);

    violations.clear();
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
      const PairBound& pb = pairs[static_cast<std::size_t>(p)];
      for (int y = 0; y < n; ++y) {
        if (in_working[static_cast<std::size_t>(row_key(p, y))]) continue;
        const double lhs = values(pb.x * n + y);
        const double rhs = pb.bound * values(pb.xp * n + y);
        const bool violated =
            rhs > 0.0 ? lhs > rhs * (1.0 + ratio_tol) : lhs > 1e-15;
        if (violated) {
          violations.push_back(Violation{p, y, lhs - rhs});
        }
      }
    }
    if (violations.empty()) break;

    if (violations.size() > add_cap) {
      std::nth_element(violations.begin(),
                       violations.begin() + static_cast<long>(add_cap),
                       violations.end(),
                       [](const Violation& a, const Violation& b) {
                         return a.severity > b.severity;
                       });
      violations.resize(add_cap);
    }

    // Cut management: drop clearly inactive rows (at most twice per row)
    // before growing the working set.
    std::vector<std::int64_t> purgeable = engine.purgeable_keys(1e-7);
    std::vector<std::int64_t> to_remove;
    for (const std::int64_t key : purgeable) {
      if (readd_counts[key] < 2) {
        to_remove.push_back(key);
      }
    }
    if (!to_remove.empty()) {
      engine.remove_cuts(to_remove);
      for (const std::int64_t key : to_remove) {
        in_working[static_cast<std::size_t>(key)] = 0;
        readd_counts[key] += 1;
      }
    }

    for (const auto& v : violations) {
      const std::int64_t key = row_key(v.pair, v.y);
      const PairBound& pb = pairs[static_cast<std::size_t>(v.pair)];
      engine.add_cut(key, pb.x * n + v.y, pb.xp * n + v.y, pb.bound);
      in_working[static_cast<std::size_t>(key)] = 1;
    }
  }

  result.lp_iterations = engine.pivots();
  result.working_rows = engine.live_cuts();
  result.mechanism = finalize(grid, epsilon, verify_epsilon, values,
                              optql_label(options), options.verify_tolerance);
  result.quality_loss =
      quality_loss(prior, result.mechanism, grid).expected_distance;
  return result;
}

OptqlResult optql_from_solution(const Prior& prior, const Grid& grid,
                                double epsilon, const Eigen::VectorXd& values,
                                const OptqlOptions& options) {
  const int n = grid.num_regions();
  if (values.size() != static_cast<Eigen::Index>(n) * n) {
    throw std::invalid_argument("solution vector has wrong dimension");
  }
  const double verify_epsilon =
      (options.mode == OptqlMode::kSpanner && options.budget_on_graph_metric)
          ? epsilon * options.delta
          : epsilon;
  Eigen::VectorXd cleaned = values;
  std::vector<PairBound> pairs;
  if (n > 1) {
    if (options.mode == OptqlMode::kFullPairs) {
      pairs = full_pair_bounds(grid, epsilon);
    } else if (options.delta >= 1.0) {
      pairs = spanner_pair_bounds(grid, build_spanner(grid, options.delta),
                                  epsilon, options.budget_on_graph_metric);
    }
  }
  clean_solution(cleaned, pairs, n);
  OptqlResult result{finalize(grid, epsilon, verify_epsilon, cleaned,
                              optql_label(options) + "-imported",
                              options.verify_tolerance),
                     0.0, 0, 0, 0};
  result.quality_loss =
      quality_loss(prior, result.mechanism, grid).expected_distance;
  return result;
}

}  // namespace geopriv
