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

#include "geopriv/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace geopriv {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

double to_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad_line(line_no, "trailing junk in number '" + s + "'");
    return v;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    bad_line(line_no, "bad number '" + s + "'");
  }
}

long to_long(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) bad_line(line_no, "trailing junk in number '" + s + "'");
    return v;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    bad_line(line_no, "bad integer '" + s + "'");
  }
}

}  // namespace

void write_prior_csv(std::ostream& out, const Prior& prior) {
  out << "region,prob\n";
  for (Eigen::Index r = 0; r < prior.size(); ++r) {
    out << r << ',' << fmt12(prior(static_cast<int>(r))) << '\n';
  }
}

Prior read_prior_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || line != "region,prob") {
    throw std::runtime_error("prior file must start with 'region,prob'");
  }
  std::vector<double> probs;
  while (next_line(in, line, line_no)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) bad_line(line_no, "expected 'region,prob'");
    const long region = to_long(fields[0], line_no);
    if (region != static_cast<long>(probs.size())) {
      bad_line(line_no, "regions must appear in order 0,1,...");
    }
    probs.push_back(to_double(fields[1], line_no));
  }
  Eigen::VectorXd v =
      Eigen::Map<Eigen::VectorXd>(probs.data(), static_cast<long>(probs.size()));
  return Prior(std::move(v));
}

void write_users_csv(std::ostream& out, const UserLocations& users) {
  out << "user_id,region\n";
  for (const auto& r : users.records()) {
    out << r.user_id << ',' << r.region << '\n';
  }
}

UserLocations read_users_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || line != "user_id,region") {
    throw std::runtime_error("user file must start with 'user_id,region'");
  }
  std::vector<UserRecord> records;
  while (next_line(in, line, line_no)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) bad_line(line_no, "expected 'user_id,region'");
    records.push_back(
        UserRecord{fields[0], static_cast<int>(to_long(fields[1], line_no))});
  }
  return UserLocations(std::move(records));
}

void write_dataset_csv(std::ostream& out, const ObfuscatedDataset& ds) {
  out << "# mechanism: " << ds.mechanism_label << '\n';
  out << "# seed: " << ds.seed << '\n';
  out << "user_id,true_region,reported\n";
  for (const auto& r : ds.records) {
    out << r.user_id << ',' << r.true_region << ',';
    if (is_bottom(r.reported)) {
      out << "BOTTOM";
    } else {
      out << r.reported;
    }
    out << '\n';
  }
}

ObfuscatedDataset read_dataset_csv(std::istream& in) {
  ObfuscatedDataset ds;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (next_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        return s;
      };
      if (line.rfind("# mechanism:", 0) == 0) {
        ds.mechanism_label = strip(line.substr(12));
      } else if (line.rfind("# seed:", 0) == 0) {
        ds.seed = std::stoull(strip(line.substr(7)));
      }
      continue;
    }
    if (!saw_header) {
      if (line != "user_id,true_region,reported") {
        bad_line(line_no, "expected header 'user_id,true_region,reported'");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      bad_line(line_no, "expected 'user_id,true_region,reported'");
    }
    ObfuscatedRecord rec;
    rec.user_id = fields[0];
    rec.true_region = static_cast<int>(to_long(fields[1], line_no));
    rec.reported = fields[2] == "BOTTOM"
                       ? kBottom
                       : static_cast<int>(to_long(fields[2], line_no));
    ds.records.push_back(std::move(rec));
  }
  if (!saw_header) {
    throw std::runtime_error("dataset file has no header row");
  }
  return ds;
}

void write_mechanism_csv(std::ostream& out, const Mechanism& mech, int rows,
                         int cols) {
  if (rows * cols != mech.num_regions()) {
    throw std::invalid_argument("grid dimensions do not match the mechanism");
  }
  const int n = mech.num_regions();
  out << "# label: " << mech.label() << '\n';
  out << "# epsilon: " << fmt17(mech.epsilon()) << '\n';
  out << "# rows: " << rows << '\n';
  out << "# cols: " << cols << '\n';
  out << "input";
  for (int y = 0; y < n; ++y) out << ',' << y;
  out << ",BOTTOM\n";
  for (int x = 0; x < n; ++x) {
    out << x;
    for (int y = 0; y <= n; ++y) out << ',' << fmt12(mech(x, y));
    out << '\n';
  }
}

MechanismFile read_mechanism_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string label = "unknown";
  double epsilon = 0.0;
  int rows = 0, cols = 0;
  bool saw_header = false;
  std::vector<std::vector<double>> data;

  while (next_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto value_after = [&](std::size_t prefix_len) {
        std::string s = line.substr(prefix_len);
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        return s;
      };
      if (line.rfind("# label:", 0) == 0) {
        label = value_after(8);
      } else if (line.rfind("# epsilon:", 0) == 0) {
        epsilon = to_double(value_after(10), line_no);
      } else if (line.rfind("# rows:", 0) == 0) {
        rows = static_cast<int>(to_long(value_after(7), line_no));
      } else if (line.rfind("# cols:", 0) == 0) {
        cols = static_cast<int>(to_long(value_after(7), line_no));
      }
      continue;
    }
    if (!saw_header) {
      if (line.rfind("input,", 0) != 0) {
        bad_line(line_no, "expected mechanism header starting with 'input,'");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      row.push_back(to_double(fields[i], line_no));
    }
    data.push_back(std::move(row));
  }
  if (!saw_header || data.empty()) {
    throw std::runtime_error("mechanism file has no data rows");
  }
  const int n = static_cast<int>(data.size());
  if (rows == 0 && cols == 0) {
    rows = 1;
    cols = n;
  }
  if (rows * cols != n) {
    throw std::runtime_error("mechanism metadata rows*cols does not match " +
                             std::to_string(n) + " data rows");
  }
  Eigen::MatrixXd matrix(n, n + 1);
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(data[static_cast<std::size_t>(x)].size()) != n + 1) {
      throw std::runtime_error("mechanism row " + std::to_string(x) +
                               " has wrong width");
    }
    for (int y = 0; y <= n; ++y) {
      matrix(x, y) = data[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }
  }
  MechanismFile file{
      new_mechanism(std::move(matrix), lattice_grid(rows, cols), epsilon, label),
      rows, cols};
  return file;
}

Grid lattice_grid(int rows, int cols) {
  return Grid(GeoPoint{0.0, 0.0}, rows, cols, 1.0, 1.0);
}

void write_heatmap_csv(std::ostream& out, const Eigen::MatrixXi& counts,
                       std::size_t bottom_count) {
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    for (Eigen::Index c = 0; c < counts.cols(); ++c) {
      if (c > 0) out << ',';
      out << counts(r, c);
    }
    out << '\n';
  }
  out << "# BOTTOM," << bottom_count << '\n';
}

std::string anonymity_report_json(const AnonymityReport& report) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [y, c] : report.counts) {
    counts[is_bottom(y) ? "BOTTOM" : std::to_string(y)] = c;
  }
  const nlohmann::json j = {{"n", report.n},
                            {"max_k", report.max_k},
                            {"kappa_sup", report.kappa_sup},
                            {"counts", counts},
                            {"bottom_fraction", report.bottom_fraction()}};
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace geopriv
