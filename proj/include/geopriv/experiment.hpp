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
#include <optional>
#include <string>
#include <vector>

#include "geopriv/grid.hpp"
#include "geopriv/ingest.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/optql.hpp"
#include "geopriv/synth.hpp"

namespace geopriv {

enum class MechanismKind { kPlanarLaplacian, kOptqlFull, kOptqlSpanner };

std::string to_string(MechanismKind kind);
MechanismKind parse_mechanism_kind(const std::string& name);

struct GridSpec {
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  int rows = 10;
  int cols = 10;
  double cell_width = 1.0;
  double cell_height = 1.0;

  Grid build() const;
};

struct SyntheticSpec {
  std::vector<MixtureComponent> components;
  int n = 1000;
};

struct DataSpec {
  // Exactly one of the two is set.
  std::optional<std::string> checkins_path;
  ReducePolicy policy = ReducePolicy::kFirstByTimestamp;
  std::optional<SyntheticSpec> synthetic;
};

struct ExperimentConfig {
  GridSpec grid;
  DataSpec data;
  std::vector<MechanismKind> mechanisms = {MechanismKind::kPlanarLaplacian,
                                           MechanismKind::kOptqlSpanner};
  std::vector<double> epsilons;
  std::vector<int> ks = {10, 100};
  std::vector<double> alphas = {0.05, 0.1};
  double delta = 1.09;
  std::uint64_t seed = 42;
  std::string output_dir = ".";

  void validate() const;

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  // The built-in synthetic benchmark: 10x10 grid, three-bump mixture with
  // a dominant downtown component, 2000 users, seed 42.
  static ExperimentConfig default_benchmark();
};

struct SweepRow {
  std::string mechanism;
  double epsilon = 0.0;
  double ql = 0.0;             // mean distance over non-bottom records
  double stay_fraction = 0.0;  // reports equal to the true region, non-bottom
  double bottom_fraction = 0.0;
  std::vector<std::pair<int, double>> deleted_fraction_by_k;
  double kappa_star = 0.0;  // min positive output mass, bottom excluded
  double posterior_vulnerability = 0.0;
};

// Metrics for one (mechanism, epsilon) sweep point.
SweepRow sweep_point(const UserLocations& users, const Prior& prior,
                     const Grid& grid, const Mechanism& mech,
                     std::uint64_t seed, const std::vector<int>& ks);

// Full sweep over the config's mechanisms and epsilons. The obfuscation
// seed for each point is derived from (config.seed, mechanism, epsilon
// index), so rows do not depend on evaluation order.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

struct ConvergenceRow {
  int size = 0;
  std::string mechanism;
  double alpha = 0.0;
  double mean_kappa = 0.0;
  double std_kappa = 0.0;
  double population_kappa = 0.0;  // reference from (prior, mechanism)
};

// Subsamples the population at each size, obfuscates at epsilon = 1 with
// trial-derived seeds, and reports the empirical threshold estimate
// against the population reference.
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config,
                                              const std::vector<int>& sizes,
                                              int trials);

// rows x cols reported-count matrix; bottom reports are tallied
// separately.
struct Heatmap {
  Eigen::MatrixXi counts;
  std::size_t bottom_count = 0;
};
Heatmap heatmap_counts(const ObfuscatedDataset& ds, const Grid& grid);
void emit_heatmap(const ObfuscatedDataset& ds, const Grid& grid,
                  const std::string& path);

// Resolves the configured data source into users and prior.
struct ResolvedData {
  UserLocations users;
  Prior prior;
  std::size_t skipped = 0;
};
ResolvedData resolve_data(const ExperimentConfig& config);

// Builds the configured mechanism at the given budget.
Mechanism build_mechanism(MechanismKind kind, const Prior& prior,
                          const Grid& grid, double epsilon, double delta);

// CSV renderings (6 significant digits).
std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<int>& ks);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace geopriv
