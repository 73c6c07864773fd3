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

#include "geopriv/anonymity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace geopriv {

namespace {

// Boundary comparisons against (1 - alpha) * n tolerate this much
// relative rounding in the target.
constexpr double kCoverageSlack = 1e-9;

std::map<int, std::size_t> count_reports(const ObfuscatedDataset& ds,
                                         bool include_bottom,
                                         std::size_t* bottom_count) {
  std::map<int, std::size_t> counts;
  std::size_t bottoms = 0;
  for (const auto& r : ds.records) {
    if (is_bottom(r.reported)) {
      ++bottoms;
      if (include_bottom) counts[kBottom] += 1;
    } else {
      counts[r.reported] += 1;
    }
  }
  if (bottom_count != nullptr) *bottom_count = bottoms;
  return counts;
}

// Output masses over the included outputs (regions, plus bottom when
// asked for).
std::vector<double> included_masses(const Prior& prior, const Mechanism& mech,
                                    bool include_bottom) {
  const Eigen::VectorXd p = output_distribution(prior, mech);
  const int end = include_bottom ? mech.num_regions() + 1 : mech.num_regions();
  return std::vector<double>(p.data(), p.data() + end);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw std::invalid_argument("kappa must lie in [0,1]");
  }
}

}  // namespace

double AnonymityReport::alpha_at(double kappa) const {
  check_kappa(kappa);
  if (n == 0) return 0.0;
  std::size_t covered = 0;
  for (const auto& [y, c] : counts) {
    if (static_cast<double>(c) / static_cast<double>(n) > kappa) covered += c;
  }
  return 1.0 - static_cast<double>(covered) / static_cast<double>(n);
}

AnonymityReport dataset_k_anonymity(const ObfuscatedDataset& ds,
                                    bool include_bottom) {
  if (ds.records.empty()) {
    throw std::invalid_argument("dataset is empty");
  }
  AnonymityReport report;
  report.include_bottom = include_bottom;
  report.total_records = ds.records.size();
  report.counts = count_reports(ds, include_bottom, &report.bottom_count);
  for (const auto& [y, c] : report.counts) report.n += c;
  if (report.n == 0) {
    throw std::invalid_argument(
        "dataset has no counted records (all reports excluded)");
  }
  std::size_t min_count = std::numeric_limits<std::size_t>::max();
  for (const auto& [y, c] : report.counts) min_count = std::min(min_count, c);
  report.max_k = min_count;
  report.kappa_sup =
      static_cast<double>(min_count) / static_cast<double>(report.n);
  return report;
}

double asymptotic_kappa(const Prior& prior, const Mechanism& mech,
                        bool include_bottom) {
  const auto masses = included_masses(prior, mech, include_bottom);
  double min_positive = std::numeric_limits<double>::infinity();
  for (const double p : masses) {
    if (p > 0.0) min_positive = std::min(min_positive, p);
  }
  return std::isfinite(min_positive) ? min_positive : 0.0;
}

KappaAlpha kappa_alpha(const Prior& prior, const Mechanism& mech, double kappa,
                       bool include_bottom) {
  check_kappa(kappa);
  const auto masses = included_masses(prior, mech, include_bottom);
  double above = 0.0;
  double positive = 0.0;
  for (const double p : masses) {
    if (p > 0.0) positive += p;
    if (p > kappa) above += p;
  }
  KappaAlpha result;
  result.alpha_min = positive > 0.0 ? 1.0 - above / positive : 1.0;
  return result;
}

double min_deletion_fraction(const Prior& prior, const Mechanism& mech,
                             double kappa, bool include_bottom) {
  check_kappa(kappa);
  const auto masses = included_masses(prior, mech, include_bottom);
  double below = 0.0;
  double positive = 0.0;
  for (const double p : masses) {
    if (p > 0.0) {
      positive += p;
      if (p < kappa) below += p;
    }
  }
  return positive > 0.0 ? below / positive : 0.0;
}

DeletionResult delete_for_k(const ObfuscatedDataset& ds, std::size_t k,
                            bool drop_bottom) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  DeletionResult result;
  const auto counts =
      count_reports(ds, /*include_bottom=*/!drop_bottom, &result.bottom_count);

  result.dataset.mechanism_label = ds.mechanism_label.empty()
                                       ? "del" + std::to_string(k)
                                       : ds.mechanism_label + "+del" +
                                             std::to_string(k);
  result.dataset.seed = ds.seed;
  result.dataset.records.reserve(ds.records.size());
  for (const auto& r : ds.records) {
    if (is_bottom(r.reported)) {
      if (drop_bottom) continue;  // tallied in bottom_count, not deleted_count
      if (counts.at(kBottom) < k) {
        ++result.deleted_count;
        continue;
      }
    } else if (counts.at(r.reported) < k) {
      ++result.deleted_count;
      continue;
    }
    result.dataset.records.push_back(r);
  }
  return result;
}

double empirical_kappa(const ObfuscatedDataset& ds, double alpha,
                       bool include_bottom) {
  check_alpha(alpha);
  if (ds.records.empty()) {
    throw std::invalid_argument("dataset is empty");
  }
  const auto counts = count_reports(ds, include_bottom, nullptr);
  std::size_t n = 0;
  for (const auto& [y, c] : counts) n += c;
  if (n == 0) {
    throw std::invalid_argument(
        "dataset has no counted records (all reports excluded)");
  }

  std::vector<std::size_t> distinct;
  distinct.reserve(counts.size());
  for (const auto& [y, c] : counts) distinct.push_back(c);
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  const double target =
      (1.0 - alpha) * static_cast<double>(n) -
      kCoverageSlack * static_cast<double>(n);
  // Scan thresholds from the largest count down; the first threshold
  // whose cells cover the target is the max, and the smallest distinct
  // count always covers everything.
  for (const std::size_t t : distinct) {
    std::size_t covered = 0;
    for (const auto& [y, c] : counts) {
      if (c >= t) covered += c;
    }
    if (static_cast<double>(covered) >= target) {
      return static_cast<double>(t) / static_cast<double>(n);
    }
  }
  return 1.0 / static_cast<double>(n);
}

BayesVulnerability bayes_vulnerability(const Prior& prior,
                                       const Mechanism& mech) {
  if (prior.size() != mech.num_regions()) {
    throw std::invalid_argument("prior/mechanism dimension mismatch");
  }
  BayesVulnerability v;
  v.prior_v = prior.probs().maxCoeff();
  const int n = mech.num_regions();
  for (int y = 0; y <= n; ++y) {
    double best = 0.0;
    for (int x = 0; x < n; ++x) {
      best = std::max(best, prior(x) * mech(x, y));
    }
    v.posterior_v += best;
  }
  return v;
}

double population_kappa(const Prior& prior, const Mechanism& mech,
                        double alpha, bool include_bottom) {
  check_alpha(alpha);
  auto masses = included_masses(prior, mech, include_bottom);
  double total = 0.0;
  for (const double p : masses) {
    if (p > 0.0) total += p;
  }
  if (total <= 0.0) return 0.0;

  std::vector<double> values;
  values.reserve(masses.size());
  for (const double p : masses) {
    if (p > 0.0) values.push_back(p / total);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // sup of thresholds v at which mass strictly above v still covers
  // (1 - alpha): the smallest value where coverage first falls short.
  const double target = (1.0 - alpha) * (1.0 - kCoverageSlack);
  for (const double v : values) {
    double above = 0.0;
    for (const double p : masses) {
      if (p > 0.0 && p / total > v) above += p / total;
    }
    if (above < target) return v;
  }
  return values.back();
}

}  // namespace geopriv
