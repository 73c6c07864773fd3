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
#include <string>
#include <utility>
#include <vector>

#include "geopriv/grid.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/spanner.hpp"

namespace geopriv {

// One sparse constraint row: sum_j coeff_j * x_j (<= | ==) rhs.
struct SparseRow {
  std::vector<std::pair<int, double>> coeffs;
  double rhs = 0.0;
};

// Minimize objective . x subject to the rows below and x >= 0 on every
// variable. When assembled from a grid instance, variable (x, y) sits at
// column x * num_regions + y; free-form programs leave num_regions at 0.
struct LinearProgram {
  int num_vars = 0;
  Eigen::VectorXd objective;
  std::vector<SparseRow> less_equal;
  std::vector<SparseRow> equal;
  int num_regions = 0;

  int var_index(int x, int y) const { return x * num_regions + y; }
};

// Privacy bound for one ordered input pair: q[x, y] <= bound * q[xp, y]
// for every output y. The bound is exp(scale * distance) for the mode's
// scale and distance.
struct PairBound {
  int x = 0;
  int xp = 0;
  double bound = 1.0;
};

// All ordered pairs, with bound exp(epsilon * d(x, xp)). Pairs whose bound
// overflows double are dropped as vacuous.
std::vector<PairBound> full_pair_bounds(const Grid& grid, double epsilon);

// Ordered spanner edges. With budget_on_graph_metric false (the default)
// the exponent is (epsilon / dilation) * weight, so chaining edge
// constraints along shortest paths certifies the Euclidean bound at
// epsilon. The alternative reading keeps exponent epsilon * weight and
// certifies only the (weaker) graph metric; the Euclidean bound then
// degrades to epsilon * dilation.
std::vector<PairBound> spanner_pair_bounds(const Grid& grid,
                                           const SpannerGraph& spanner,
                                           double epsilon,
                                           bool budget_on_graph_metric = false);

// QL-minimizing program over the given pair bounds: objective
// sum pi_x d(x,y) q_xy, one inequality q_xy - bound * q_xpy <= 0 per
// (pair, output), and one row-sum equality per input. Output space is the
// region set (no extra column).
LinearProgram assemble_lp(const Prior& prior, const Grid& grid,
                          const std::vector<PairBound>& pairs, double epsilon);

// Same, restricted to a subset of (pair index, output) combinations; used
// by the row-generating solver loop.
LinearProgram assemble_lp_subset(
    const Prior& prior, const Grid& grid, const std::vector<PairBound>& pairs,
    const std::vector<std::pair<int, int>>& pair_output_rows);

// CPLEX LP text interchange format. Grid-assembled programs name
// variables q_<x>_<y>; free-form programs use x<j>.
std::string export_lp(const LinearProgram& lp);

// Variable assignment parsed from `variable,value` CSV lines (header
// optional), for programs solved externally. Names must match export_lp.
Eigen::VectorXd import_lp_solution(std::istream& in, const LinearProgram& lp);

}  // namespace geopriv
