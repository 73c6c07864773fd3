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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "geopriv/anonymity.hpp"
#include "geopriv/experiment.hpp"
#include "geopriv/io.hpp"
#include "geopriv/lp.hpp"
#include "geopriv/optql.hpp"
#include "geopriv/simplex.hpp"

namespace {

using namespace geopriv;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

std::uint64_t env_seed_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("GEOPRIV_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("GEOPRIV_SEED is not an integer");
    }
  }
  return fallback;
}

struct GridFlags {
  GridSpec spec;

  void attach(CLI::App* cmd, bool required = true) {
    auto* rows = cmd->add_option("--rows", spec.rows, "grid rows");
    auto* cols = cmd->add_option("--cols", spec.cols, "grid columns");
    if (required) {
      rows->required();
      cols->required();
    }
    cmd->add_option("--origin-lat", spec.origin_lat, "grid origin latitude");
    cmd->add_option("--origin-lon", spec.origin_lon, "grid origin longitude");
    cmd->add_option("--cell-width", spec.cell_width,
                    "cell width in degrees longitude");
    cmd->add_option("--cell-height", spec.cell_height,
                    "cell height in degrees latitude");
  }
};

Prior load_prior(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prior file " + path);
  return read_prior_csv(in);
}

UserLocations load_users(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open user file " + path);
  return read_users_csv(in);
}

ObfuscatedDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path);
  return read_dataset_csv(in);
}

MechanismFile load_mechanism(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mechanism file " + path);
  return read_mechanism_csv(in);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, text);
  std::cout << "wrote " << path << "\n";
}

// Loads --config / --benchmark and applies seed precedence:
// --seed flag > config file value > GEOPRIV_SEED > 42.
ExperimentConfig resolve_config(const std::string& config_path, bool benchmark,
                                const std::optional<std::uint64_t>& seed_flag,
                                const std::string& out_dir_flag) {
  ExperimentConfig config;
  bool config_has_seed = false;
  if (!config_path.empty()) {
    const std::string text = read_file(config_path);
    config_has_seed = nlohmann::json::parse(text).contains("seed");
    config = ExperimentConfig::from_json_text(text);
  } else if (benchmark) {
    config = ExperimentConfig::default_benchmark();
    config_has_seed = true;
  } else {
    throw std::invalid_argument("pass --config FILE or --benchmark");
  }
  if (seed_flag.has_value()) {
    config.seed = *seed_flag;
  } else if (!config_has_seed) {
    config.seed = env_seed_or(config.seed);
  }
  if (!out_dir_flag.empty()) config.output_dir = out_dir_flag;
  config.validate();
  return config;
}

std::string output_path(const ExperimentConfig& config,
                        const std::string& name) {
  std::filesystem::create_directories(config.output_dir);
  return (std::filesystem::path(config.output_dir) / name).string();
}

std::vector<MixtureComponent> parse_components(
    const std::vector<std::string>& specs) {
  std::vector<MixtureComponent> components;
  for (const auto& s : specs) {
    MixtureComponent c;
    if (std::sscanf(s.c_str(), "%d:%lf:%lf", &c.center_region, &c.spread,
                    &c.weight) != 3) {
      throw std::invalid_argument(
          "component must be center:spread:weight, got '" + s + "'");
    }
    components.push_back(c);
  }
  return components;
}

int run(int argc, char** argv) {
  CLI::App app{
      "geopriv: distance-scaled location obfuscation, privacy auditing and "
      "anonymization over a discretized map"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag,
                 "master seed (fallback: GEOPRIV_SEED, then 42)");

  // ---- grid ----------------------------------------------------------
  auto* grid_cmd = app.add_subcommand("grid", "describe a grid, optionally "
                                              "writing region centers");
  GridFlags grid_flags;
  grid_flags.attach(grid_cmd);
  std::string centers_out;
  grid_cmd->add_option("--centers", centers_out, "write region centers CSV");

  // ---- ingest --------------------------------------------------------
  auto* ingest_cmd =
      app.add_subcommand("ingest", "reduce check-ins to one region per user");
  GridFlags ingest_grid;
  ingest_grid.attach(ingest_cmd);
  std::string ingest_input, ingest_users_out = "users.csv",
                            ingest_prior_out = "prior.csv";
  std::string ingest_policy = "first-by-timestamp";
  ingest_cmd->add_option("--input", ingest_input, "check-in CSV")->required();
  ingest_cmd->add_option("--policy", ingest_policy,
                         "first-by-timestamp | most-frequent-region");
  ingest_cmd->add_option("--users", ingest_users_out, "output users CSV");
  ingest_cmd->add_option("--prior", ingest_prior_out, "output prior CSV");

  // ---- synth ---------------------------------------------------------
  auto* synth_cmd =
      app.add_subcommand("synth", "draw a synthetic population from a "
                                  "mixture of bumps");
  GridFlags synth_grid;
  synth_grid.attach(synth_cmd);
  std::vector<std::string> synth_components;
  int synth_n = 1000;
  std::string synth_users_out = "users.csv", synth_prior_out = "prior.csv";
  synth_cmd
      ->add_option("--component", synth_components,
                   "center:spread:weight (repeatable)")
      ->required();
  synth_cmd->add_option("--n", synth_n, "population size")->required();
  synth_cmd->add_option("--users", synth_users_out, "output users CSV");
  synth_cmd->add_option("--prior", synth_prior_out, "output prior CSV");

  // ---- mechanism -----------------------------------------------------
  auto* mech_cmd = app.add_subcommand("mechanism", "construct a mechanism");
  mech_cmd->require_subcommand(1);

  auto* pl_cmd = mech_cmd->add_subcommand("pl", "distance-decaying rows with "
                                                "a shared normalizer");
  GridFlags pl_grid;
  pl_grid.attach(pl_cmd);
  double pl_epsilon = 1.0;
  std::string pl_out = "mechanism.csv";
  pl_cmd->add_option("--epsilon", pl_epsilon, "privacy budget")->required();
  pl_cmd->add_option("--out", pl_out, "output mechanism CSV");

  auto* optql_cmd =
      mech_cmd->add_subcommand("optql", "loss-minimizing mechanism via the "
                                        "bundled LP solver");
  GridFlags optql_grid;
  optql_grid.attach(optql_cmd);
  double optql_epsilon = 1.0, optql_delta = 1.09;
  std::string optql_mode = "spanner", optql_prior_path,
              optql_out = "mechanism.csv", optql_solution;
  bool optql_relaxed = false;
  optql_cmd->add_option("--epsilon", optql_epsilon, "privacy budget")
      ->required();
  optql_cmd->add_option("--prior", optql_prior_path, "prior CSV")->required();
  optql_cmd->add_option("--mode", optql_mode, "full | spanner");
  optql_cmd->add_option("--delta", optql_delta, "spanner dilation");
  optql_cmd->add_flag("--relaxed-budget", optql_relaxed,
                      "apply the budget to the spanner metric instead of "
                      "scaling it down by delta");
  optql_cmd->add_option("--import-solution", optql_solution,
                        "variable,value CSV from an external solver");
  optql_cmd->add_option("--out", optql_out, "output mechanism CSV");

  // ---- verify --------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "check the distance-scaled privacy bound on a mechanism");
  std::string verify_mech;
  double verify_epsilon = 0.0, verify_tolerance = kDefaultVerifyTolerance;
  bool verify_bottom = false;
  verify_cmd->add_option("--mechanism", verify_mech, "mechanism CSV")
      ->required();
  verify_cmd->add_option("--epsilon", verify_epsilon, "budget to check")
      ->required();
  verify_cmd->add_flag("--include-bottom", verify_bottom,
                       "also check the BOTTOM column");
  verify_cmd->add_option("--tolerance", verify_tolerance,
                         "multiplicative ratio tolerance");

  // ---- obfuscate -----------------------------------------------------
  auto* obf_cmd =
      app.add_subcommand("obfuscate", "sample one report per user");
  std::string obf_mech, obf_users, obf_out = "dataset.csv";
  obf_cmd->add_option("--mechanism", obf_mech, "mechanism CSV")->required();
  obf_cmd->add_option("--users", obf_users, "users CSV")->required();
  obf_cmd->add_option("--out", obf_out, "output dataset CSV");

  // ---- anonymize -----------------------------------------------------
  auto* anon_cmd = app.add_subcommand(
      "anonymize", "delete records at reported values below the threshold");
  std::string anon_input, anon_out = "anonymized.csv";
  std::size_t anon_k = 10;
  bool anon_keep_bottom = false;
  anon_cmd->add_option("--input", anon_input, "dataset CSV")->required();
  anon_cmd->add_option("--k", anon_k, "multiplicity threshold")->required();
  anon_cmd->add_flag("--keep-bottom", anon_keep_bottom,
                     "threshold BOTTOM like a region instead of dropping it");
  anon_cmd->add_option("--out", anon_out, "output dataset CSV");

  // ---- audit ---------------------------------------------------------
  auto* audit_cmd = app.add_subcommand(
      "audit", "counting summary plus model metrics when a prior and "
               "mechanism are supplied");
  std::string audit_input, audit_out, audit_prior, audit_mech;
  bool audit_bottom = false;
  std::vector<double> audit_alphas, audit_kappas;
  audit_cmd->add_option("--input", audit_input, "dataset CSV")->required();
  audit_cmd->add_flag("--include-bottom", audit_bottom,
                      "count BOTTOM as a reported value");
  audit_cmd->add_option("--out", audit_out, "write the report JSON here");
  audit_cmd->add_option("--prior", audit_prior, "prior CSV (model metrics)");
  audit_cmd->add_option("--mechanism", audit_mech,
                        "mechanism CSV (model metrics)");
  audit_cmd->add_option("--alpha", audit_alphas,
                        "error rates for threshold estimates (repeatable)");
  audit_cmd->add_option("--kappa", audit_kappas,
                        "thresholds for error-rate estimates (repeatable)");

  // ---- sweep ---------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "mechanism-by-budget table of utility and anonymity metrics");
  std::string sweep_config, sweep_out_dir;
  bool sweep_benchmark = false;
  sweep_cmd->add_option("--config", sweep_config, "experiment config JSON");
  sweep_cmd->add_flag("--benchmark", sweep_benchmark,
                      "use the built-in synthetic benchmark");
  sweep_cmd->add_option("--out-dir", sweep_out_dir, "output directory");

  // ---- converge ------------------------------------------------------
  auto* conv_cmd = app.add_subcommand(
      "converge", "empirical threshold estimates across subsample sizes");
  std::string conv_config, conv_out_dir;
  bool conv_benchmark = false;
  std::vector<int> conv_sizes;
  int conv_trials = 10;
  conv_cmd->add_option("--config", conv_config, "experiment config JSON");
  conv_cmd->add_flag("--benchmark", conv_benchmark,
                     "use the built-in synthetic benchmark");
  conv_cmd->add_option("--sizes", conv_sizes, "subsample sizes")->required();
  conv_cmd->add_option("--trials", conv_trials, "trials per size");
  conv_cmd->add_option("--out-dir", conv_out_dir, "output directory");

  // ---- heatmap -------------------------------------------------------
  auto* heat_cmd =
      app.add_subcommand("heatmap", "reported-count matrix for a dataset");
  std::string heat_input, heat_out = "heatmap.csv";
  int heat_rows = 0, heat_cols = 0;
  heat_cmd->add_option("--input", heat_input, "dataset CSV")->required();
  heat_cmd->add_option("--rows", heat_rows, "grid rows")->required();
  heat_cmd->add_option("--cols", heat_cols, "grid columns")->required();
  heat_cmd->add_option("--out", heat_out, "output CSV");

  // ---- export-lp -----------------------------------------------------
  auto* export_cmd = app.add_subcommand(
      "export-lp", "emit the loss-minimizing program in LP text format");
  GridFlags export_grid;
  export_grid.attach(export_cmd);
  double export_epsilon = 1.0, export_delta = 1.09;
  std::string export_mode = "spanner", export_prior_path, export_out = "program.lp";
  bool export_relaxed = false;
  export_cmd->add_option("--epsilon", export_epsilon, "privacy budget")
      ->required();
  export_cmd->add_option("--prior", export_prior_path, "prior CSV")->required();
  export_cmd->add_option("--mode", export_mode, "full | spanner");
  export_cmd->add_option("--delta", export_delta, "spanner dilation");
  export_cmd->add_flag("--relaxed-budget", export_relaxed,
                       "apply the budget to the spanner metric");
  export_cmd->add_option("--out", export_out, "output .lp path");

  CLI11_PARSE(app, argc, argv);

  const std::uint64_t seed =
      seed_flag.has_value() ? *seed_flag : env_seed_or(42);

  if (grid_cmd->parsed()) {
    const Grid grid = grid_flags.spec.build();
    std::cout << "grid: " << grid.rows() << "x" << grid.cols() << " ("
              << grid.num_regions() << " regions)\n";
    if (grid.num_regions() > 1) {
      std::cout << "adjacent distance: " << region_distance(grid, 0, 1)
                << "\n";
    }
    if (!centers_out.empty()) {
      std::string text = "region,lat,lon\n";
      char buf[64];
      for (int r = 0; r < grid.num_regions(); ++r) {
        const GeoPoint c = grid.center(r);
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", r, c.lat, c.lon);
        text += buf;
      }
      write_text(centers_out, text);
    }
    return kExitOk;
  }

  if (ingest_cmd->parsed()) {
    const Grid grid = ingest_grid.spec.build();
    std::ifstream in(ingest_input);
    if (!in) throw std::runtime_error("cannot open " + ingest_input);
    const IngestResult result =
        ingest_checkins(in, grid, parse_reduce_policy(ingest_policy));
    std::ostringstream users_text, prior_text;
    write_users_csv(users_text, result.users);
    write_prior_csv(prior_text, result.prior);
    write_text(ingest_users_out, users_text.str());
    write_text(ingest_prior_out, prior_text.str());
    std::cout << "users: " << result.users.size()
              << ", skipped out-of-bounds rows: "
              << result.skipped_out_of_bounds << "\n";
    return kExitOk;
  }

  if (synth_cmd->parsed()) {
    const Grid grid = synth_grid.spec.build();
    const SynthResult result = synth_population(
        grid, parse_components(synth_components), synth_n, seed);
    std::ostringstream users_text, prior_text;
    write_users_csv(users_text, result.users);
    write_prior_csv(prior_text, result.prior);
    write_text(synth_users_out, users_text.str());
    write_text(synth_prior_out, prior_text.str());
    return kExitOk;
  }

  if (pl_cmd->parsed()) {
    const Grid grid = pl_grid.spec.build();
    const Mechanism mech = build_planar_laplacian(grid, pl_epsilon);
    std::ostringstream text;
    write_mechanism_csv(text, mech, grid.rows(), grid.cols());
    write_text(pl_out, text.str());
    return kExitOk;
  }

  if (optql_cmd->parsed()) {
    const Grid grid = optql_grid.spec.build();
    const Prior prior = load_prior(optql_prior_path);
    OptqlOptions options;
    if (optql_mode == "full") {
      options.mode = OptqlMode::kFullPairs;
    } else if (optql_mode == "spanner") {
      options.mode = OptqlMode::kSpanner;
    } else {
      throw std::invalid_argument("--mode must be full or spanner");
    }
    options.delta = optql_delta;
    options.budget_on_graph_metric = optql_relaxed;
    OptqlResult result = [&] {
      if (!optql_solution.empty()) {
        std::vector<PairBound> pairs;  // names only depend on the grid
        const LinearProgram lp =
            assemble_lp_subset(prior, grid, pairs, {});
        std::ifstream in(optql_solution);
        if (!in) throw std::runtime_error("cannot open " + optql_solution);
        return optql_from_solution(prior, grid, optql_epsilon,
                                   import_lp_solution(in, lp), options);
      }
      return build_optql(prior, grid, optql_epsilon, options);
    }();
    std::ostringstream text;
    write_mechanism_csv(text, result.mechanism, grid.rows(), grid.cols());
    write_text(optql_out, text.str());
    std::cout << "achieved loss: " << result.quality_loss << " ("
              << result.lp_iterations << " pivots, " << result.rounds
              << " rounds)\n";
    return kExitOk;
  }

  if (verify_cmd->parsed()) {
    const MechanismFile file = load_mechanism(verify_mech);
    const Grid grid = lattice_grid(file.rows, file.cols);
    const GeoIndReport report =
        verify_geo_ind(file.mechanism, grid, verify_epsilon, verify_bottom,
                       verify_tolerance);
    std::cout << "max ratio: " << report.max_violation_ratio;
    if (report.witness_x >= 0) {
      std::cout << " at (x=" << report.witness_x
                << ", x'=" << report.witness_xprime << ", y="
                << (report.witness_y == file.mechanism.bottom_column()
                        ? std::string("BOTTOM")
                        : std::to_string(report.witness_y))
                << ")";
    }
    std::cout << "\n"
              << (report.satisfied ? "satisfied" : "violated") << " at epsilon "
              << verify_epsilon << "\n";
    return report.satisfied ? kExitOk : kExitSolver;
  }

  if (obf_cmd->parsed()) {
    const MechanismFile file = load_mechanism(obf_mech);
    const UserLocations users = load_users(obf_users);
    const ObfuscatedDataset ds = obfuscate_dataset(users, file.mechanism, seed);
    std::ostringstream text;
    write_dataset_csv(text, ds);
    write_text(obf_out, text.str());
    return kExitOk;
  }

  if (anon_cmd->parsed()) {
    const ObfuscatedDataset ds = load_dataset(anon_input);
    const DeletionResult result =
        delete_for_k(ds, anon_k, /*drop_bottom=*/!anon_keep_bottom);
    std::ostringstream text;
    write_dataset_csv(text, result.dataset);
    write_text(anon_out, text.str());
    std::cout << "deleted: " << result.deleted_count
              << ", bottom reports: " << result.bottom_count << ", kept: "
              << result.dataset.size() << "\n";
    return kExitOk;
  }

  if (audit_cmd->parsed()) {
    const ObfuscatedDataset ds = load_dataset(audit_input);
    const AnonymityReport report = dataset_k_anonymity(ds, audit_bottom);
    const std::string json = anonymity_report_json(report);
    if (audit_out.empty()) {
      std::cout << json << "\n";
    } else {
      write_text(audit_out, json);
    }
    for (const double alpha : audit_alphas) {
      std::cout << "empirical kappa(alpha=" << alpha
                << "): " << empirical_kappa(ds, alpha, audit_bottom) << "\n";
    }
    if (!audit_prior.empty() && !audit_mech.empty()) {
      const Prior prior = load_prior(audit_prior);
      const MechanismFile file = load_mechanism(audit_mech);
      std::cout << "model kappa*: "
                << asymptotic_kappa(prior, file.mechanism, audit_bottom)
                << "\n";
      for (const double alpha : audit_alphas) {
        std::cout << "model kappa(alpha=" << alpha << "): "
                  << population_kappa(prior, file.mechanism, alpha,
                                      audit_bottom)
                  << "\n";
      }
      for (const double kappa : audit_kappas) {
        std::cout << "model alpha_min(kappa=" << kappa << "): "
                  << kappa_alpha(prior, file.mechanism, kappa, audit_bottom)
                         .alpha_min
                  << ", deletion fraction: "
                  << min_deletion_fraction(prior, file.mechanism, kappa,
                                           audit_bottom)
                  << "\n";
      }
      const BayesVulnerability v = bayes_vulnerability(prior, file.mechanism);
      std::cout << "one-guess success prior/posterior: " << v.prior_v << " / "
                << v.posterior_v << "\n";
    }
    return kExitOk;
  }

  if (sweep_cmd->parsed()) {
    const ExperimentConfig config =
        resolve_config(sweep_config, sweep_benchmark, seed_flag, sweep_out_dir);
    const std::vector<SweepRow> rows = run_sweep(config);
    write_text(output_path(config, "sweep.csv"), sweep_csv(rows, config.ks));
    return kExitOk;
  }

  if (conv_cmd->parsed()) {
    const ExperimentConfig config =
        resolve_config(conv_config, conv_benchmark, seed_flag, conv_out_dir);
    const std::vector<ConvergenceRow> rows =
        convergence_study(config, conv_sizes, conv_trials);
    write_text(output_path(config, "converge.csv"), convergence_csv(rows));
    return kExitOk;
  }

  if (heat_cmd->parsed()) {
    const ObfuscatedDataset ds = load_dataset(heat_input);
    emit_heatmap(ds, lattice_grid(heat_rows, heat_cols), heat_out);
    std::cout << "wrote " << heat_out << "\n";
    return kExitOk;
  }

  if (export_cmd->parsed()) {
    const Grid grid = export_grid.spec.build();
    const Prior prior = load_prior(export_prior_path);
    std::vector<PairBound> pairs;
    if (export_mode == "full") {
      pairs = full_pair_bounds(grid, export_epsilon);
    } else if (export_mode == "spanner") {
      const SpannerGraph spanner = build_spanner(grid, export_delta);
      pairs = spanner_pair_bounds(grid, spanner, export_epsilon,
                                  export_relaxed);
    } else {
      throw std::invalid_argument("--mode must be full or spanner");
    }
    const LinearProgram lp = assemble_lp(prior, grid, pairs, export_epsilon);
    write_text(export_out, export_lp(lp));
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const geopriv::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const geopriv::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
