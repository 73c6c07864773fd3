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
#include <string>
#include <vector>

#include "geopriv/grid.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/users.hpp"

namespace geopriv {

inline constexpr double kDefaultVerifyTolerance = 1e-9;

// Row-stochastic map from true regions to reported regions plus a
// distinguished final column for the "outside the area of interest" report.
// Rows index inputs; columns 0..n-1 index region outputs and column n is
// the extra report (possibly identically zero).
class Mechanism {
 public:
  Mechanism(Eigen::MatrixXd probs, double epsilon, std::string label);

  int num_regions() const { return static_cast<int>(probs_.rows()); }
  int bottom_column() const { return num_regions(); }
  const Eigen::MatrixXd& probs() const { return probs_; }
  double operator()(int x, int y) const { return probs_(x, y); }
  double bottom_mass(int x) const { return probs_(x, bottom_column()); }
  double epsilon() const { return epsilon_; }
  const std::string& label() const { return label_; }

 private:
  Eigen::MatrixXd probs_;
  double epsilon_;
  std::string label_;
};

// Validates and wraps a row-major matrix of size n x (n+1). Rows whose sum
// is within 1e-9 of 1 are renormalized exactly; anything further off, any
// negative entry, or a dimension mismatch is rejected.
Mechanism new_mechanism(Eigen::MatrixXd matrix, const Grid& grid,
                        double epsilon, std::string label = "custom");

// Discrete planar Laplacian over the grid with the shared normalizer
// c = max_x sum_y exp(-eps*d(x,y)). Region outputs get exp(-eps*d(x,y))/c
// and the final column absorbs the remaining mass; the row attaining the
// maximum has exactly zero mass there.
Mechanism build_planar_laplacian(const Grid& grid, double epsilon);

// Result of checking Q_xy <= exp(eps*d(x,x')) * Q_x'y over all ordered
// pairs of distinct inputs and all outputs.
struct GeoIndReport {
  bool satisfied = true;
  // sup over checked triples of Q_xy / (exp(eps*d(x,x')) * Q_x'y), with
  // +inf when the denominator is zero and the numerator positive.
  double max_violation_ratio = 0.0;
  int witness_x = -1;
  int witness_xprime = -1;
  int witness_y = -1;  // equals the mechanism's bottom column for that report
  bool include_bottom = false;
  double epsilon = 0.0;
  double tolerance = kDefaultVerifyTolerance;
};

GeoIndReport verify_geo_ind(const Mechanism& mech, const Grid& grid,
                            double epsilon, bool include_bottom = false,
                            double tolerance = kDefaultVerifyTolerance);

struct QualityLoss {
  double expected_distance = 0.0;  // over region outputs only
  double bottom_mass = 0.0;        // sum_x pi_x * Q_x,bottom
};

// Expected distance sum_x sum_{y in regions} pi_x * Q_xy * d(x,y). The
// final column has no defined distance and contributes zero; its mass is
// reported separately.
QualityLoss quality_loss(const Prior& prior, const Mechanism& mech,
                         const Grid& grid);

// Output distribution p(y) = sum_x pi_x Q_xy, over regions plus the final
// column (size n+1).
Eigen::VectorXd output_distribution(const Prior& prior, const Mechanism& mech);

// Column-merge by a deterministic map over outputs. `map` has n+1 entries;
// map[y] is a region index or kBottom. Entry y==n stands for the bottom
// column.
Mechanism apply_postprocess(const Mechanism& mech, const std::vector<int>& map);

// Draws one report per user, row-distributed. The draw for user i depends
// only on (seed, i, row), so the result is reproducible and independent of
// record order within a fixed dataset.
ObfuscatedDataset obfuscate_dataset(const UserLocations& users,
                                    const Mechanism& mech, std::uint64_t seed);

}  // namespace geopriv
