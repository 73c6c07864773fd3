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

#include "geopriv/lp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <stdexcept>
#include <unordered_map>

namespace geopriv {

namespace {

// exp arguments past this produce bounds no double value can violate.
constexpr double kVacuousExponent = 700.0;

std::string format_coeff(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<PairBound> full_pair_bounds(const Grid& grid, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
  const int n = grid.num_regions();
  std::vector<PairBound> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int x = 0; x < n; ++x) {
    for (int xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      const double expo = epsilon * region_distance(grid, x, xp);
      if (expo > kVacuousExponent) continue;
      pairs.push_back(PairBound{x, xp, std::exp(expo)});
    }
  }
  return pairs;
}

std::vector<PairBound> spanner_pair_bounds(const Grid& grid,
                                           const SpannerGraph& spanner,
                                           double epsilon,
                                           bool budget_on_graph_metric) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
  if (spanner.num_regions() != grid.num_regions()) {
    throw std::invalid_argument("spanner/grid region count mismatch");
  }
  if (!spanner.is_connected()) {
    throw std::invalid_argument("spanner graph is disconnected");
  }
  const double scale =
      budget_on_graph_metric ? epsilon : epsilon / spanner.dilation();
  std::vector<PairBound> pairs;
  pairs.reserve(2 * spanner.edges().size());
  for (const auto& e : spanner.edges()) {
    const double expo = scale * e.weight;
    if (expo > kVacuousExponent) continue;
    const double bound = std::exp(expo);
    pairs.push_back(PairBound{e.a, e.b, bound});
    pairs.push_back(PairBound{e.b, e.a, bound});
  }
  return pairs;
}

LinearProgram assemble_lp(const Prior& prior, const Grid& grid,
                          const std::vector<PairBound>& pairs,
                          double epsilon) {
  (void)epsilon;
  const int n = grid.num_regions();
  std::vector<std::pair<int, int>> rows;
  rows.reserve(pairs.size() * static_cast<std::size_t>(n));
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
    for (int y = 0; y < n; ++y) {
      rows.emplace_back(p, y);
    }
  }
  return assemble_lp_subset(prior, grid, pairs, rows);
}

LinearProgram assemble_lp_subset(
    const Prior& prior, const Grid& grid, const std::vector<PairBound>& pairs,
    const std::vector<std::pair<int, int>>& pair_output_rows) {
  const int n = grid.num_regions();
  if (prior.size() != n) {
    throw std::invalid_argument("prior/grid dimension mismatch");
  }
  LinearProgram lp;
  lp.num_regions = n;
  lp.num_vars = n * n;
  lp.objective.resize(lp.num_vars);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      lp.objective(lp.var_index(x, y)) = prior(x) * region_distance(grid, x, y);
    }
  }

  lp.less_equal.reserve(pair_output_rows.size());
  for (const auto& [p, y] : pair_output_rows) {
    const PairBound& pb = pairs.at(static_cast<std::size_t>(p));
    SparseRow row;
    row.coeffs = {{lp.var_index(pb.x, y), 1.0},
                  {lp.var_index(pb.xp, y), -pb.bound}};
    row.rhs = 0.0;
    lp.less_equal.push_back(std::move(row));
  }

  lp.equal.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    SparseRow row;
    row.coeffs.reserve(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) {
      row.coeffs.emplace_back(lp.var_index(x, y), 1.0);
    }
    row.rhs = 1.0;
    lp.equal.push_back(std::move(row));
  }
  return lp;
}

namespace {

std::string var_name(const LinearProgram& lp, int j) {
  if (lp.num_regions > 0) {
    return "q_" + std::to_string(j / lp.num_regions) + "_" +
           std::to_string(j % lp.num_regions);
  }
  return "x" + std::to_string(j);
}

void append_terms(std::string& out, const LinearProgram& lp,
                  const std::vector<std::pair<int, double>>& coeffs) {
  bool first = true;
  for (const auto& [j, c] : coeffs) {
    if (c == 0.0) continue;
    if (first) {
      out += c < 0 ? "- " : "";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const double mag = std::abs(c);
    if (mag != 1.0) {
      out += format_coeff(mag);
      out += " ";
    }
    out += var_name(lp, j);
  }
  if (first) out += "0 " + var_name(lp, 0);
}

}  // namespace

std::string export_lp(const LinearProgram& lp) {
  std::string out;
  out.reserve(1024);
  out += "\\ generated by geopriv\n";
  out += "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  obj_terms.reserve(static_cast<std::size_t>(lp.num_vars));
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.objective(j) != 0.0) obj_terms.emplace_back(j, lp.objective(j));
  }
  append_terms(out, lp, obj_terms);
  out += "\nSubject To\n";
  int cid = 0;
  for (const auto& row : lp.less_equal) {
    out += " c" + std::to_string(cid++) + ": ";
    append_terms(out, lp, row.coeffs);
    out += " <= " + format_coeff(row.rhs) + "\n";
  }
  int eid = 0;
  for (const auto& row : lp.equal) {
    out += " e" + std::to_string(eid++) + ": ";
    append_terms(out, lp, row.coeffs);
    out += " = " + format_coeff(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (int j = 0; j < lp.num_vars; ++j) {
    out += " " + var_name(lp, j) + " >= 0\n";
  }
  out += "End\n";
  return out;
}

Eigen::VectorXd import_lp_solution(std::istream& in, const LinearProgram& lp) {
  std::unordered_map<std::string, int> names;
  names.reserve(static_cast<std::size_t>(lp.num_vars));
  for (int j = 0; j < lp.num_vars; ++j) names.emplace(var_name(lp, j), j);

  Eigen::VectorXd values = Eigen::VectorXd::Zero(lp.num_vars);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line == "variable,value") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("solution line " + std::to_string(line_no) +
                               ": expected 'variable,value'");
    }
    const std::string name = line.substr(0, comma);
    const auto it = names.find(name);
    if (it == names.end()) {
      throw std::runtime_error("solution line " + std::to_string(line_no) +
                               ": unknown variable '" + name + "'");
    }
    try {
      values(it->second) = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("solution line " + std::to_string(line_no) +
                               ": bad value");
    }
  }
  return values;
}

}  // namespace geopriv
