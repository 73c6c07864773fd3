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

#include "geopriv/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace geopriv {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("check-in input line " + std::to_string(line_no) +
                           ": " + what);
}

double parse_double(const std::string& text, std::size_t line_no,
                    const char* what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    malformed(line_no, std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty timestamp");

  // Integer epoch seconds.
  {
    std::int64_t epoch = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, epoch);
    if (ec == std::errc() && ptr == end) return epoch;
  }

  // ISO-8601: YYYY-MM-DD[T ]hh:mm:ss[.frac][Z]
  const auto expect_digit_run = [&](std::size_t pos, std::size_t len) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = 0; i < len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos + i]))) return false;
    }
    return true;
  };
  const auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) v = v * 10 + (text[pos + i] - '0');
    return v;
  };
  if (!expect_digit_run(0, 4) || text.size() < 19 || text[4] != '-' ||
      !expect_digit_run(5, 2) || text[7] != '-' || !expect_digit_run(8, 2) ||
      (text[10] != 'T' && text[10] != ' ') || !expect_digit_run(11, 2) ||
      text[13] != ':' || !expect_digit_run(14, 2) || text[16] != ':' ||
      !expect_digit_run(17, 2)) {
    throw std::invalid_argument("unrecognized timestamp '" + text + "'");
  }
  const int year = num(0, 4), month = num(5, 2), day = num(8, 2);
  const int hh = num(11, 2), mm = num(14, 2), ss = num(17, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 ||
      ss > 60) {
    throw std::invalid_argument("timestamp field out of range in '" + text +
                                "'");
  }
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  if (pos < text.size() && text[pos] == 'Z') ++pos;
  if (pos != text.size()) {
    throw std::invalid_argument("trailing characters in timestamp '" + text +
                                "'");
  }
  return days_from_civil(year, static_cast<unsigned>(month),
                         static_cast<unsigned>(day)) *
             86400LL +
         hh * 3600LL + mm * 60LL + ss;
}

ReducePolicy parse_reduce_policy(const std::string& name) {
  if (name == "first-by-timestamp") return ReducePolicy::kFirstByTimestamp;
  if (name == "most-frequent-region") return ReducePolicy::kMostFrequentRegion;
  throw std::invalid_argument("unknown reduction policy '" + name + "'");
}

std::string to_string(ReducePolicy policy) {
  return policy == ReducePolicy::kFirstByTimestamp ? "first-by-timestamp"
                                                   : "most-frequent-region";
}

IngestResult ingest_checkins(std::istream& in, const Grid& grid,
                             ReducePolicy policy) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw std::runtime_error("check-in input is empty");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line) != "user_id,lat,lon,timestamp") {
    malformed(line_no, "expected header 'user_id,lat,lon,timestamp'");
  }

  struct PerUser {
    // first-by-timestamp state
    std::int64_t best_ts = 0;
    int best_region = 0;
    bool seen = false;
    // most-frequent state
    std::map<int, std::size_t> region_counts;
  };
  std::unordered_map<std::string, PerUser> by_user;
  std::vector<std::string> user_order;  // first appearance order
  std::size_t skipped = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      malformed(line_no, "expected 4 fields, got " +
                             std::to_string(fields.size()));
    }
    const std::string user_id = trim(fields[0]);
    if (user_id.empty()) malformed(line_no, "empty user_id");
    const double lat = parse_double(trim(fields[1]), line_no, "latitude");
    const double lon = parse_double(trim(fields[2]), line_no, "longitude");
    std::int64_t ts = 0;
    try {
      ts = parse_timestamp(fields[3]);
    } catch (const std::invalid_argument& e) {
      malformed(line_no, e.what());
    }

    const auto region = grid.locate(lat, lon);
    if (!region.has_value()) {
      ++skipped;
      continue;
    }

    auto [it, inserted] = by_user.try_emplace(user_id);
    if (inserted) user_order.push_back(user_id);
    PerUser& u = it->second;
    if (policy == ReducePolicy::kFirstByTimestamp) {
      if (!u.seen || ts < u.best_ts ||
          (ts == u.best_ts && *region < u.best_region)) {
        u.best_ts = ts;
        u.best_region = *region;
        u.seen = true;
      }
    } else {
      u.region_counts[*region] += 1;
    }
  }

  if (by_user.empty()) {
    throw std::runtime_error(
        "no in-bounds check-ins (every row skipped or input had no data rows)");
  }

  std::vector<UserRecord> records;
  records.reserve(by_user.size());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(grid.num_regions());
  for (const auto& id : user_order) {
    const PerUser& u = by_user.at(id);
    int region;
    if (policy == ReducePolicy::kFirstByTimestamp) {
      region = u.best_region;
    } else {
      // std::map iterates regions in ascending order, so the first maximum
      // is the smallest region index.
      std::size_t best = 0;
      region = 0;
      for (const auto& [r, c] : u.region_counts) {
        if (c > best) {
          best = c;
          region = r;
        }
      }
    }
    records.push_back(UserRecord{id, region});
    counts(region) += 1.0;
  }

  Prior prior(counts / static_cast<double>(records.size()));
  return IngestResult{UserLocations(std::move(records)), std::move(prior),
                      skipped};
}

}  // namespace geopriv
