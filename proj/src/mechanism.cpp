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

#include "geopriv/mechanism.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "geopriv/rng.hpp"

namespace geopriv {

Mechanism::Mechanism(Eigen::MatrixXd probs, double epsilon, std::string label)
    : probs_(std::move(probs)), epsilon_(epsilon), label_(std::move(label)) {}

Mechanism new_mechanism(Eigen::MatrixXd matrix, const Grid& grid,
                        double epsilon, std::string label) {
  const int n = grid.num_regions();
  if (matrix.rows() != n || matrix.cols() != n + 1) {
    throw std::invalid_argument(
        "mechanism matrix must be " + std::to_string(n) + "x" +
        std::to_string(n + 1) + ", got " + std::to_string(matrix.rows()) +
        "x" + std::to_string(matrix.cols()));
  }
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("mechanism budget must be nonnegative");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y <= n; ++y) {
      if (!(matrix(x, y) >= 0.0)) {
        throw std::invalid_argument("negative entry at (" + std::to_string(x) +
                                    "," + std::to_string(y) + ")");
      }
    }
    const double sum = matrix.row(x).sum();
    if (std::abs(sum - 1.0) > kProbSumTolerance) {
      throw std::invalid_argument("row " + std::to_string(x) + " sums to " +
                                  std::to_string(sum) +
                                  ", expected 1 within 1e-9");
    }
    matrix.row(x) /= sum;
  }
  return Mechanism(std::move(matrix), epsilon, std::move(label));
}

Mechanism build_planar_laplacian(const Grid& grid, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("planar Laplacian requires epsilon > 0");
  }
  const int n = grid.num_regions();
  Eigen::MatrixXd probs(n, n + 1);
  Eigen::VectorXd row_weight_sum(n);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int y = 0; y < n; ++y) {
      const double w = std::exp(-epsilon * region_distance(grid, x, y));
      probs(x, y) = w;
      s += w;
    }
    row_weight_sum(x) = s;
  }
  const double c = row_weight_sum.maxCoeff();
  for (int x = 0; x < n; ++x) {
    probs.row(x).head(n) /= c;
    // The argmax row gets exactly zero here; other rows keep the leftover.
    const double leftover = 1.0 - row_weight_sum(x) / c;
    probs(x, n) = leftover > 0.0 ? leftover : 0.0;
  }
  return Mechanism(std::move(probs), epsilon, "PL");
}

GeoIndReport verify_geo_ind(const Mechanism& mech, const Grid& grid,
                            double epsilon, bool include_bottom,
                            double tolerance) {
  const int n = grid.num_regions();
  if (mech.num_regions() != n) {
    throw std::invalid_argument("mechanism/grid region count mismatch");
  }
  GeoIndReport report;
  report.include_bottom = include_bottom;
  report.epsilon = epsilon;
  report.tolerance = tolerance;

  const Eigen::MatrixXd& q = mech.probs();
  const int y_end = include_bottom ? n + 1 : n;
  const double inf = std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x) {
    for (int xp = 0; xp < n; ++xp) {
      if (xp == x) continue;
      const double bound = std::exp(epsilon * region_distance(grid, x, xp));
      for (int y = 0; y < y_end; ++y) {
        const double num = q(x, y);
        const double denom = bound * q(xp, y);
        double ratio;
        if (denom > 0.0) {
          ratio = num / denom;
        } else {
          ratio = num > 0.0 ? inf : 0.0;
        }
        if (ratio > report.max_violation_ratio) {
          report.max_violation_ratio = ratio;
          report.witness_x = x;
          report.witness_xprime = xp;
          report.witness_y = y;
        }
      }
    }
  }
  report.satisfied = report.max_violation_ratio <= 1.0 + tolerance;
  return report;
}

QualityLoss quality_loss(const Prior& prior, const Mechanism& mech,
                         const Grid& grid) {
  const int n = grid.num_regions();
  if (mech.num_regions() != n || prior.size() != n) {
    throw std::invalid_argument("prior/mechanism/grid dimension mismatch");
  }
  QualityLoss ql;
  for (int x = 0; x < n; ++x) {
    const double px = prior(x);
    if (px == 0.0) continue;
    double acc = 0.0;
    for (int y = 0; y < n; ++y) {
      acc += mech(x, y) * region_distance(grid, x, y);
    }
    ql.expected_distance += px * acc;
    ql.bottom_mass += px * mech.bottom_mass(x);
  }
  return ql;
}

Eigen::VectorXd output_distribution(const Prior& prior, const Mechanism& mech) {
  if (prior.size() != mech.num_regions()) {
    throw std::invalid_argument("prior/mechanism dimension mismatch");
  }
  return mech.probs().transpose() * prior.probs();
}

Mechanism apply_postprocess(const Mechanism& mech, const std::vector<int>& map) {
  const int n = mech.num_regions();
  if (static_cast<int>(map.size()) != n + 1) {
    throw std::invalid_argument("output map must cover all " +
                                std::to_string(n + 1) + " outputs");
  }
  Eigen::MatrixXd merged = Eigen::MatrixXd::Zero(n, n + 1);
  for (int y = 0; y <= n; ++y) {
    const int target = map[y];
    const int col = is_bottom(target) ? n : target;
    if (col < 0 || col > n) {
      throw std::invalid_argument("output map sends " + std::to_string(y) +
                                  " out of range");
    }
    merged.col(col) += mech.probs().col(y);
  }
  return Mechanism(std::move(merged), mech.epsilon(),
                   mech.label() + "+postprocess");
}

ObfuscatedDataset obfuscate_dataset(const UserLocations& users,
                                    const Mechanism& mech,
                                    std::uint64_t seed) {
  const int n = mech.num_regions();
  ObfuscatedDataset ds;
  ds.mechanism_label = mech.label();
  ds.seed = seed;
  ds.records.reserve(users.size());
  for (const auto& u : users.records()) {
    if (u.region < 0 || u.region >= n) {
      throw std::out_of_range("user '" + u.user_id + "' region " +
                              std::to_string(u.region) +
                              " outside mechanism input space");
    }
    // Keyed by user identity, not record position, so a permuted dataset
    // obfuscates to the same per-user reports.
    const std::uint64_t user_key = fnv1a64(u.user_id.data(), u.user_id.size());
    const double draw = uniform01(seed, rng_stream::kObfuscation, user_key);
    // Inverse-CDF over the row; the final column absorbs the tail so that
    // rounding in the partial sums can never leave the draw unassigned.
    double cum = 0.0;
    int reported = kBottom;
    for (int y = 0; y < n; ++y) {
      cum += mech(u.region, y);
      if (draw < cum) {
        reported = y;
        break;
      }
    }
    ds.records.push_back(ObfuscatedRecord{u.user_id, u.region, reported});
  }
  return ds;
}

}  // namespace geopriv
