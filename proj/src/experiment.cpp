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

#include "geopriv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "geopriv/anonymity.hpp"
#include "geopriv/io.hpp"
#include "geopriv/rng.hpp"

namespace geopriv {

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::uint64_t point_seed(std::uint64_t master, const std::string& label,
                         std::size_t eps_index) {
  return hash_combine(hash_combine(master, fnv1a64(label.data(), label.size())),
                      eps_index);
}

}  // namespace

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kPlanarLaplacian:
      return "PL";
    case MechanismKind::kOptqlFull:
      return "OptQL-full";
    case MechanismKind::kOptqlSpanner:
      return "OptQL-spanner";
  }
  return "unknown";
}

MechanismKind parse_mechanism_kind(const std::string& name) {
  if (name == "PL") return MechanismKind::kPlanarLaplacian;
  if (name == "OptQL-full") return MechanismKind::kOptqlFull;
  if (name == "OptQL-spanner") return MechanismKind::kOptqlSpanner;
  throw std::invalid_argument("unknown mechanism '" + name +
                              "' (expected PL, OptQL-full or OptQL-spanner)");
}

Grid GridSpec::build() const {
  return Grid(GeoPoint{origin_lat, origin_lon}, rows, cols, cell_width,
              cell_height);
}

void ExperimentConfig::validate() const {
  grid.build();  // validates dimensions
  if (epsilons.empty()) {
    throw std::invalid_argument("config needs at least one epsilon");
  }
  for (const double e : epsilons) {
    if (!(e > 0.0 && e <= 10.0)) {
      throw std::invalid_argument("epsilon values must lie in (0, 10]");
    }
  }
  for (const int k : ks) {
    if (k < 1) throw std::invalid_argument("k values must be >= 1");
  }
  for (const double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("alpha values must lie in [0, 1]");
    }
  }
  if (!(delta >= 1.0)) {
    throw std::invalid_argument("delta must be >= 1");
  }
  if (mechanisms.empty()) {
    throw std::invalid_argument("config needs at least one mechanism");
  }
  const bool has_checkins = data.checkins_path.has_value();
  const bool has_synth = data.synthetic.has_value();
  if (has_checkins == has_synth) {
    throw std::invalid_argument(
        "config needs exactly one data source (checkins or synthetic)");
  }
  if (has_synth && data.synthetic->n < 1) {
    throw std::invalid_argument("synthetic population must be >= 1");
  }
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig config;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    config.grid.origin_lat = g.value("origin_lat", 0.0);
    config.grid.origin_lon = g.value("origin_lon", 0.0);
    config.grid.rows = g.at("rows").get<int>();
    config.grid.cols = g.at("cols").get<int>();
    config.grid.cell_width = g.value("cell_width", 1.0);
    config.grid.cell_height = g.value("cell_height", 1.0);
  }
  if (j.contains("data")) {
    const auto& d = j.at("data");
    if (d.contains("checkins")) {
      config.data.checkins_path = d.at("checkins").get<std::string>();
      config.data.policy =
          parse_reduce_policy(d.value("policy", "first-by-timestamp"));
    }
    if (d.contains("synthetic")) {
      SyntheticSpec spec;
      const auto& s = d.at("synthetic");
      spec.n = s.at("n").get<int>();
      for (const auto& c : s.at("components")) {
        spec.components.push_back(MixtureComponent{
            c.at("center").get<int>(), c.at("spread").get<double>(),
            c.at("weight").get<double>()});
      }
      config.data.synthetic = std::move(spec);
    }
  }
  if (j.contains("mechanisms")) {
    config.mechanisms.clear();
    for (const auto& m : j.at("mechanisms")) {
      config.mechanisms.push_back(parse_mechanism_kind(m.get<std::string>()));
    }
  }
  if (j.contains("epsilons")) {
    config.epsilons = j.at("epsilons").get<std::vector<double>>();
  }
  if (j.contains("ks")) config.ks = j.at("ks").get<std::vector<int>>();
  if (j.contains("alphas")) {
    config.alphas = j.at("alphas").get<std::vector<double>>();
  }
  config.delta = j.value("delta", 1.09);
  config.seed = j.value("seed", static_cast<std::uint64_t>(42));
  config.output_dir = j.value("output_dir", std::string("."));
  config.validate();
  return config;
}

std::string ExperimentConfig::to_json_text() const {
  nlohmann::json j;
  j["grid"] = {{"origin_lat", grid.origin_lat}, {"origin_lon", grid.origin_lon},
               {"rows", grid.rows},             {"cols", grid.cols},
               {"cell_width", grid.cell_width}, {"cell_height", grid.cell_height}};
  if (data.checkins_path.has_value()) {
    j["data"] = {{"checkins", *data.checkins_path},
                 {"policy", to_string(data.policy)}};
  }
  if (data.synthetic.has_value()) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : data.synthetic->components) {
      comps.push_back({{"center", c.center_region},
                       {"spread", c.spread},
                       {"weight", c.weight}});
    }
    j["data"]["synthetic"] = {{"components", comps}, {"n", data.synthetic->n}};
  }
  nlohmann::json mechs = nlohmann::json::array();
  for (const auto m : mechanisms) mechs.push_back(to_string(m));
  j["mechanisms"] = mechs;
  j["epsilons"] = epsilons;
  j["ks"] = ks;
  j["alphas"] = alphas;
  j["delta"] = delta;
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::default_benchmark() {
  ExperimentConfig config;
  config.grid = GridSpec{0.0, 0.0, 10, 10, 0.01, 0.01};
  SyntheticSpec spec;
  // Dominant downtown bump plus two satellites.
  spec.components = {MixtureComponent{44, 1.2, 0.60},
                     MixtureComponent{27, 0.9, 0.25},
                     MixtureComponent{81, 1.5, 0.15}};
  spec.n = 2000;
  config.data.synthetic = std::move(spec);
  config.mechanisms = {MechanismKind::kPlanarLaplacian,
                       MechanismKind::kOptqlSpanner};
  config.epsilons = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  config.ks = {10, 100};
  config.alphas = {0.05, 0.1};
  config.delta = 1.09;
  config.seed = 42;
  return config;
}

ResolvedData resolve_data(const ExperimentConfig& config) {
  const Grid grid = config.grid.build();
  if (config.data.checkins_path.has_value()) {
    std::ifstream in(*config.data.checkins_path);
    if (!in) {
      throw std::runtime_error("cannot open check-in file " +
                               *config.data.checkins_path);
    }
    IngestResult result = ingest_checkins(in, grid, config.data.policy);
    return ResolvedData{std::move(result.users), std::move(result.prior),
                        result.skipped_out_of_bounds};
  }
  const SyntheticSpec& spec = *config.data.synthetic;
  SynthResult result =
      synth_population(grid, spec.components, spec.n, config.seed);
  return ResolvedData{std::move(result.users), std::move(result.prior), 0};
}

Mechanism build_mechanism(MechanismKind kind, const Prior& prior,
                          const Grid& grid, double epsilon, double delta) {
  switch (kind) {
    case MechanismKind::kPlanarLaplacian:
      return build_planar_laplacian(grid, epsilon);
    case MechanismKind::kOptqlFull: {
      OptqlOptions options;
      options.mode = OptqlMode::kFullPairs;
      return build_optql(prior, grid, epsilon, options).mechanism;
    }
    case MechanismKind::kOptqlSpanner: {
      OptqlOptions options;
      options.mode = OptqlMode::kSpanner;
      options.delta = delta;
      return build_optql(prior, grid, epsilon, options).mechanism;
    }
  }
  throw std::invalid_argument("unknown mechanism kind");
}

SweepRow sweep_point(const UserLocations& users, const Prior& prior,
                     const Grid& grid, const Mechanism& mech,
                     std::uint64_t seed, const std::vector<int>& ks) {
  const ObfuscatedDataset ds = obfuscate_dataset(users, mech, seed);

  SweepRow row;
  row.mechanism = mech.label();
  row.epsilon = mech.epsilon();

  std::size_t kept = 0;
  std::size_t stayed = 0;
  std::size_t bottoms = 0;
  double distance_sum = 0.0;
  for (const auto& r : ds.records) {
    if (is_bottom(r.reported)) {
      ++bottoms;
      continue;
    }
    ++kept;
    distance_sum += region_distance(grid, r.true_region, r.reported);
    if (r.reported == r.true_region) ++stayed;
  }
  row.ql = kept > 0 ? distance_sum / static_cast<double>(kept) : 0.0;
  row.stay_fraction =
      kept > 0 ? static_cast<double>(stayed) / static_cast<double>(kept) : 0.0;
  row.bottom_fraction =
      static_cast<double>(bottoms) / static_cast<double>(ds.records.size());

  for (const int k : ks) {
    const DeletionResult deleted =
        delete_for_k(ds, static_cast<std::size_t>(k), /*drop_bottom=*/true);
    row.deleted_fraction_by_k.emplace_back(
        k, static_cast<double>(deleted.deleted_count) /
               static_cast<double>(ds.records.size()));
  }
  row.kappa_star = asymptotic_kappa(prior, mech, /*include_bottom=*/false);
  row.posterior_vulnerability = bayes_vulnerability(prior, mech).posterior_v;
  return row;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const Grid grid = config.grid.build();
  const ResolvedData data = resolve_data(config);

  std::vector<SweepRow> rows;
  rows.reserve(config.mechanisms.size() * config.epsilons.size());
  for (const MechanismKind kind : config.mechanisms) {
    const std::string label = to_string(kind);
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
      const Mechanism mech = build_mechanism(kind, data.prior, grid,
                                             config.epsilons[i], config.delta);
      rows.push_back(sweep_point(data.users, data.prior, grid, mech,
                                 point_seed(config.seed, label, i),
                                 config.ks));
    }
  }
  return rows;
}

namespace {

UserLocations subsample(const UserLocations& users, int size,
                        std::uint64_t seed) {
  const int total = static_cast<int>(users.size());
  if (size > total) {
    throw std::invalid_argument("subsample size " + std::to_string(size) +
                                " exceeds population " +
                                std::to_string(total));
  }
  std::vector<int> index(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) index[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates keyed by the counter generator.
  for (int i = 0; i < size; ++i) {
    const double u = uniform01(seed, rng_stream::kSubsample,
                               static_cast<std::uint64_t>(i));
    const int j = i + static_cast<int>(u * static_cast<double>(total - i));
    std::swap(index[static_cast<std::size_t>(i)],
              index[static_cast<std::size_t>(std::min(j, total - 1))]);
  }
  std::vector<UserRecord> records;
  records.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    records.push_back(users.records()[static_cast<std::size_t>(index[i])]);
  }
  return UserLocations(std::move(records));
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config,
                                              const std::vector<int>& sizes,
                                              int trials) {
  config.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Grid grid = config.grid.build();
  const ResolvedData data = resolve_data(config);
  const double epsilon = 1.0;

  std::vector<ConvergenceRow> rows;
  for (const MechanismKind kind : config.mechanisms) {
    const Mechanism mech =
        build_mechanism(kind, data.prior, grid, epsilon, config.delta);
    for (const int size : sizes) {
      std::vector<std::vector<double>> kappas(
          config.alphas.size(), std::vector<double>());
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = hash_combine(
            hash_combine(config.seed, rng_stream::kTrial),
            hash_combine(static_cast<std::uint64_t>(size),
                         static_cast<std::uint64_t>(t)));
        const UserLocations sample = subsample(data.users, size, trial_seed);
        const ObfuscatedDataset ds =
            obfuscate_dataset(sample, mech, hash_combine(trial_seed, 1));
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
          kappas[a].push_back(
              empirical_kappa(ds, config.alphas[a], /*include_bottom=*/false));
        }
      }
      for (std::size_t a = 0; a < config.alphas.size(); ++a) {
        ConvergenceRow row;
        row.size = size;
        row.mechanism = mech.label();
        row.alpha = config.alphas[a];
        double mean = 0.0;
        for (const double k : kappas[a]) mean += k;
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (const double k : kappas[a]) var += (k - mean) * (k - mean);
        row.mean_kappa = mean;
        row.std_kappa =
            trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
        row.population_kappa = population_kappa(data.prior, mech,
                                                config.alphas[a],
                                                /*include_bottom=*/false);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

Heatmap heatmap_counts(const ObfuscatedDataset& ds, const Grid& grid) {
  Heatmap map;
  map.counts = Eigen::MatrixXi::Zero(grid.rows(), grid.cols());
  for (const auto& r : ds.records) {
    if (is_bottom(r.reported)) {
      ++map.bottom_count;
      continue;
    }
    grid.check_region(r.reported);
    map.counts(grid.row_of(r.reported), grid.col_of(r.reported)) += 1;
  }
  return map;
}

void emit_heatmap(const ObfuscatedDataset& ds, const Grid& grid,
                  const std::string& path) {
  const Heatmap map = heatmap_counts(ds, grid);
  std::ostringstream out;
  write_heatmap_csv(out, map.counts, map.bottom_count);
  write_file(path, out.str());
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<int>& ks) {
  std::string out = "mechanism,epsilon,ql,stay_fraction,bottom_fraction";
  for (const int k : ks) out += ",deleted_fraction_k" + std::to_string(k);
  out += ",kappa_star,posterior_vulnerability\n";
  for (const auto& row : rows) {
    out += row.mechanism + ',' + fmt6(row.epsilon) + ',' + fmt6(row.ql) + ',' +
           fmt6(row.stay_fraction) + ',' + fmt6(row.bottom_fraction);
    for (const auto& [k, fraction] : row.deleted_fraction_by_k) {
      out += ',' + fmt6(fraction);
    }
    out += ',' + fmt6(row.kappa_star) + ',' +
           fmt6(row.posterior_vulnerability) + '\n';
  }
  return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "size,mechanism,alpha,mean_kappa,std_kappa,population_kappa\n";
  for (const auto& row : rows) {
    out += std::to_string(row.size) + ',' + row.mechanism + ',' +
           fmt6(row.alpha) + ',' + fmt6(row.mean_kappa) + ',' +
           fmt6(row.std_kappa) + ',' + fmt6(row.population_kappa) + '\n';
  }
  return out;
}

}  // namespace geopriv
