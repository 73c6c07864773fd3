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

#include "geopriv/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "geopriv/rng.hpp"

namespace geopriv {

Prior mixture_prior(const Grid& grid,
                    const std::vector<MixtureComponent>& components) {
  if (components.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  const int n = grid.num_regions();
  double weight_sum = 0.0;
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(n);
  for (const auto& comp : components) {
    grid.check_region(comp.center_region);
    if (!(comp.weight > 0.0)) {
      throw std::invalid_argument("component weights must be positive");
    }
    if (!(comp.spread >= 0.0)) {
      throw std::invalid_argument("component spread must be nonnegative");
    }
    Eigen::VectorXd bump = Eigen::VectorXd::Zero(n);
    if (comp.spread == 0.0) {
      bump(comp.center_region) = 1.0;
    } else {
      const double inv2s2 = 1.0 / (2.0 * comp.spread * comp.spread);
      for (int r = 0; r < n; ++r) {
        const double d = region_distance(grid, r, comp.center_region);
        bump(r) = std::exp(-d * d * inv2s2);
      }
    }
    probs += comp.weight * (bump / bump.sum());
    weight_sum += comp.weight;
  }
  return Prior(probs / weight_sum);
}

SynthResult synth_population(const Grid& grid,
                             const std::vector<MixtureComponent>& components,
                             int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("population size must be >= 1");
  Prior prior = mixture_prior(grid, components);

  // CDF over regions; the last bucket absorbs rounding in the partial sums.
  const int regions = grid.num_regions();
  Eigen::VectorXd cdf(regions);
  double cum = 0.0;
  for (int r = 0; r < regions; ++r) {
    cum += prior(r);
    cdf(r) = cum;
  }
  cdf(regions - 1) = 1.0;

  std::vector<UserRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(seed, rng_stream::kSynthesis,
                               static_cast<std::uint64_t>(i));
    const double* begin = cdf.data();
    const double* pos = std::upper_bound(begin, begin + regions, u);
    int region = static_cast<int>(pos - begin);
    if (region >= regions) region = regions - 1;
    records.push_back(UserRecord{"u" + std::to_string(i), region});
  }
  return SynthResult{UserLocations(std::move(records)), std::move(prior)};
}

}  // namespace geopriv
