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
#include <iosfwd>
#include <string>

#include "geopriv/anonymity.hpp"
#include "geopriv/grid.hpp"
#include "geopriv/mechanism.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/users.hpp"

namespace geopriv {

// Priors: `region,prob` with probabilities to 12 significant digits.
void write_prior_csv(std::ostream& out, const Prior& prior);
Prior read_prior_csv(std::istream& in);

// User locations: `user_id,region`.
void write_users_csv(std::ostream& out, const UserLocations& users);
UserLocations read_users_csv(std::istream& in);

// Obfuscated datasets: `user_id,true_region,reported` where reported is a
// region index or the literal BOTTOM; provenance in leading # comments.
void write_dataset_csv(std::ostream& out, const ObfuscatedDataset& ds);
ObfuscatedDataset read_dataset_csv(std::istream& in);

// Mechanisms: metadata comment block, then header
// `input,0,...,<n-1>,BOTTOM` and one row per input region with
// probabilities to 12 significant digits.
void write_mechanism_csv(std::ostream& out, const Mechanism& mech, int rows,
                         int cols);

struct MechanismFile {
  Mechanism mechanism;
  int rows = 0;
  int cols = 0;
};
MechanismFile read_mechanism_csv(std::istream& in);

// Canonical grid for files that only carry lattice dimensions; the metric
// depends on nothing else.
Grid lattice_grid(int rows, int cols);

// Heatmap: rows x cols integer matrix of reported counts, bottom count on
// a trailing comment line.
void write_heatmap_csv(std::ostream& out, const Eigen::MatrixXi& counts,
                       std::size_t bottom_count);

// Counting summary as JSON: n, max_k, kappa_sup, counts, bottom_fraction.
std::string anonymity_report_json(const AnonymityReport& report);

// File helpers (throw on I/O failure).
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace geopriv
