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

#include <cstddef>
#include <map>

#include "geopriv/mechanism.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/users.hpp"

namespace geopriv {

// Counting summary of a dataset's reported values. With include_bottom
// false (the default everywhere) the bottom reports are excluded from the
// counts and from n; their share of the original dataset is still
// reported via bottom_fraction().
struct AnonymityReport {
  std::map<int, std::size_t> counts;  // reported value -> multiplicity
  std::size_t n = 0;                  // records counted
  std::size_t max_k = 0;              // min over occupied cells of n(y)
  double kappa_sup = 0.0;             // min positive n(y) / n
  bool include_bottom = false;
  std::size_t bottom_count = 0;
  std::size_t total_records = 0;

  double bottom_fraction() const {
    return total_records == 0
               ? 0.0
               : static_cast<double>(bottom_count) / total_records;
  }

  // Smallest error rate alpha at which the dataset's cells above the
  // kappa threshold cover a (1 - alpha) fraction of its users.
  // Nondecreasing in kappa.
  double alpha_at(double kappa) const;
};

AnonymityReport dataset_k_anonymity(const ObfuscatedDataset& ds,
                                    bool include_bottom = false);

// Largest threshold below which every occupied output stays strictly
// above: min over outputs with p(y) > 0 of p(y).
double asymptotic_kappa(const Prior& prior, const Mechanism& mech,
                        bool include_bottom = false);

struct KappaAlpha {
  double alpha_min = 0.0;
  bool holds(double alpha) const { return alpha >= alpha_min; }
};

// Minimal error rate for the threshold kappa:
// 1 - (sum over p(y) > kappa) / (sum over p(y) > 0).
KappaAlpha kappa_alpha(const Prior& prior, const Mechanism& mech, double kappa,
                       bool include_bottom = false);

// Fraction of output mass strictly below kappa (and positive), relative
// to all positive mass; multiplied by n it approximates the number of
// records the deletion step removes.
double min_deletion_fraction(const Prior& prior, const Mechanism& mech,
                             double kappa, bool include_bottom = false);

struct DeletionResult {
  ObfuscatedDataset dataset;
  std::size_t deleted_count = 0;  // records removed by the k threshold
  std::size_t bottom_count = 0;   // bottom reports in the input
};

// Removes every record whose reported value has multiplicity below k.
// Counting is a single pass against the original counts; deletion cannot
// drop a surviving cell below k, because removing other cells never
// shrinks it. Bottom records are always counted and are removed
// unconditionally when drop_bottom is set (the default); otherwise the
// bottom cell is thresholded like any other.
DeletionResult delete_for_k(const ObfuscatedDataset& ds, std::size_t k,
                            bool drop_bottom = true);

// Largest t/n such that cells with multiplicity >= t cover at least a
// (1 - alpha) fraction of the counted records; at alpha = 0 this is the
// smallest positive count over n. Reported as the exact rational t/n in
// double precision.
double empirical_kappa(const ObfuscatedDataset& ds, double alpha,
                       bool include_bottom = false);

struct BayesVulnerability {
  double prior_v = 0.0;      // max_x pi_x
  double posterior_v = 0.0;  // sum_y max_x pi_x Q_xy, bottom included
};

BayesVulnerability bayes_vulnerability(const Prior& prior,
                                       const Mechanism& mech);

// Population reference for the empirical estimator: the largest threshold
// kappa at which outputs above kappa cover a (1 - alpha) share of the
// included output mass, computed on the output distribution normalized
// over the included outputs (matching the estimator's normalization when
// bottom is excluded).
double population_kappa(const Prior& prior, const Mechanism& mech,
                        double alpha, bool include_bottom = false);

}  // namespace geopriv
