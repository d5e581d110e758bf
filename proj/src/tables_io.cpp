#include "cmopla/tables_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "cmopla/csv.hpp"
#include "cmopla/sample_io.hpp"

namespace cmopla {
namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return in;
}

std::optional<int> parse_int(const std::string& cell) {
  auto v = csv::parse_double(cell);
  if (!v || *v != std::floor(*v) || std::abs(*v) > 1e9) return std::nullopt;
  return static_cast<int>(*v);
}

}  // namespace

std::filesystem::path flags_path_for(const std::filesystem::path& feature_csv) {
  auto p = feature_csv;
  p.replace_extension(".flags.csv");
  return p;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  std::ofstream flags(flags_path_for(path), std::ios::binary);
  if (!flags) throw ArgumentError("cannot write " + flags_path_for(path).string());

  std::vector<std::string> header{"instance", "set"};
  header.insert(header.end(), table.names.begin(), table.names.end());
  out << csv::join(header) << '\n';
  flags << "instance,set,feature\n";
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{row.instance, std::to_string(row.set)};
    for (const auto& name : table.names) {
      const auto* e = row.features.find(name);
      if (!e) throw ShapeError("row " + row.instance + " lacks feature " + name);
      cells.push_back(csv::format_double(e->value));
      if (e->degenerate) flags << row.instance << ',' << row.set << ',' << name << '\n';
    }
    out << csv::join(cells) << '\n';
  }
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty feature file", 1);
  const auto header = csv::split(line);
  if (header.size() < 3 || header[0] != "instance" || header[1] != "set") {
    throw ParseError("feature header must start with instance,set", 1);
  }
  FeatureTable table;
  table.names.assign(header.begin() + 2, header.end());

  std::set<std::tuple<std::string, int, std::string>> flagged;
  if (std::ifstream fin(flags_path_for(path)); fin) {
    std::string fl;
    std::getline(fin, fl);
    while (std::getline(fin, fl)) {
      const auto c = csv::split(fl);
      if (c.size() != 3) continue;
      if (auto s = parse_int(c[1])) flagged.emplace(c[0], *s, c[2]);
    }
  }

  std::size_t row = 1;
  std::set<std::pair<std::string, int>> seen;
  while (std::getline(in, line)) {
    ++row;
    if (csv::trim(line).empty()) continue;
    const auto cells = csv::split(line);
    if (cells.size() != header.size()) {
      throw ParseError(std::to_string(cells.size()) + " cells, expected " + std::to_string(header.size()), row);
    }
    FeatureRow fr;
    fr.instance = cells[0];
    const auto set = parse_int(cells[1]);
    if (!set) throw ParseError("set index is not an integer", row);
    fr.set = *set;
    if (!seen.emplace(fr.instance, fr.set).second) throw ParseError("duplicate (instance, set)", row);
    for (std::size_t c = 2; c < cells.size(); ++c) {
      const auto v = csv::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) throw ParseError("non-finite value for " + header[c], row);
      fr.features.set(header[c], *v, flagged.count({fr.instance, fr.set, header[c]}) > 0);
    }
    table.rows.push_back(std::move(fr));
  }
  return table;
}

std::vector<Finding> validate_performance_csv(const std::filesystem::path& path) {
  std::vector<Finding> findings;
  std::ifstream in(path);
  if (!in) return {{0, "cannot open " + path.string()}};
  std::string line;
  if (!std::getline(in, line)) return {{1, "empty file, header expected"}};
  const auto header = csv::split(line);
  if (header != std::vector<std::string>{"instance", "algorithm", "run", "hv"}) {
    return {{1, "header must be instance,algorithm,run,hv"}};
  }
  std::map<std::tuple<std::string, std::string, int>, std::size_t> first_row;
  std::size_t row = 1;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++row;
    if (csv::trim(line).empty()) continue;
    ++data_rows;
    const auto cells = csv::split(line);
    if (cells.size() != 4) {
      findings.push_back({row, std::to_string(cells.size()) + " cells, expected 4"});
      continue;
    }
    if (cells[0].empty() || cells[1].empty()) findings.push_back({row, "empty instance or algorithm id"});
    const auto run = parse_int(cells[2]);
    if (!run) findings.push_back({row, "run is not an integer"});
    const auto hv = csv::parse_double(cells[3]);
    if (!hv || !std::isfinite(*hv)) {
      findings.push_back({row, "hv is not a finite number"});
    } else if (*hv < 0.0) {
      findings.push_back({row, "hv is negative"});
    }
    if (run) {
      const auto key = std::make_tuple(cells[0], cells[1], *run);
      auto [it, inserted] = first_row.emplace(key, row);
      if (!inserted) {
        findings.push_back({row, "duplicate (instance, algorithm, run) also at row " + std::to_string(it->second)});
      }
    }
  }
  if (data_rows == 0) findings.push_back({row, "no data rows"});
  return findings;
}

std::vector<PerformanceRecord> read_performance_csv(const std::filesystem::path& path) {
  const auto findings = validate_performance_csv(path);
  if (!findings.empty()) throw ParseError(path.string() + ": " + findings.front().message, findings.front().row);
  auto in = open_or_throw(path);
  std::string line;
  std::getline(in, line);
  std::vector<PerformanceRecord> records;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    const auto c = csv::split(line);
    records.push_back({c[0], c[1], *parse_int(c[2]), *csv::parse_double(c[3])});
  }
  return records;
}

void write_performance_csv(const std::filesystem::path& path, const std::vector<PerformanceRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << "instance,algorithm,run,hv\n";
  for (const auto& r : records) {
    out << r.instance << ',' << r.algorithm << ',' << r.run << ',' << csv::format_double(r.hv) << '\n';
  }
}

std::vector<Finding> validate_projection_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {{0, "cannot open " + path.string()}};
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    return {{0, std::string("invalid JSON: ") + e.what()}};
  }
  std::vector<Finding> findings;
  const std::size_t expected = kBuiltinProjectionWidth;
  if (!j.contains("featureOrder") || !j["featureOrder"].is_array()) {
    findings.push_back({0, "featureOrder array missing"});
  } else {
    const auto& fo = j["featureOrder"];
    if (fo.size() != expected) {
      findings.push_back({0, "featureOrder has " + std::to_string(fo.size()) + " names, expected " +
                                 std::to_string(expected)});
    }
    std::set<std::string> names;
    for (const auto& n : fo) {
      if (!n.is_string()) {
        findings.push_back({0, "featureOrder entries must be strings"});
      } else if (!names.insert(n.get<std::string>()).second) {
        findings.push_back({0, "duplicate feature " + n.get<std::string>()});
      }
    }
  }
  if (!j.contains("W") || !j["W"].is_array()) {
    findings.push_back({0, "W array missing"});
  } else {
    const auto& W = j["W"];
    if (W.size() != 2) findings.push_back({0, "W has " + std::to_string(W.size()) + " rows, expected 2"});
    for (std::size_t r = 0; r < W.size(); ++r) {
      if (!W[r].is_array()) {
        findings.push_back({0, "W row " + std::to_string(r + 1) + " is not an array"});
        continue;
      }
      if (W[r].size() != expected) {
        findings.push_back({0, "W row " + std::to_string(r + 1) + " has " + std::to_string(W[r].size()) +
                                   " columns, expected " + std::to_string(expected)});
      }
      for (const auto& v : W[r]) {
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
          findings.push_back({0, "W row " + std::to_string(r + 1) + " has a non-finite entry"});
          break;
        }
      }
    }
  }
  return findings;
}

std::vector<Finding> validate_sample_csv(const std::filesystem::path& path, const std::optional<ProblemMeta>& meta) {
  std::ifstream in(path);
  if (!in) return {{0, "cannot open " + path.string()}};
  std::string line;
  if (!std::getline(in, line)) return {{1, "empty file, header expected"}};
  const auto header = csv::split(line);

  std::size_t counts[4] = {0, 0, 0, 0};
  const char prefixes[4] = {'x', 'f', 'g', 'h'};
  std::size_t pos = 0;
  for (int k = 0; k < 4; ++k) {
    while (pos < header.size() && header[pos] == prefixes[k] + std::to_string(counts[k] + 1)) {
      ++counts[k];
      ++pos;
    }
  }
  const bool has_cv = pos < header.size() && header[pos] == "cv";
  if (has_cv) ++pos;
  std::vector<Finding> findings;
  if (pos != header.size()) {
    findings.push_back({1, "unexpected column '" + header[pos] + "'"});
    return findings;
  }
  ProblemMeta m;
  if (meta) {
    m = *meta;
    if (counts[0] != m.n || counts[1] != m.M || counts[2] != m.J || counts[3] != m.K) {
      findings.push_back({1, "header arity does not match problem metadata"});
      return findings;
    }
  } else {
    if (counts[0] == 0) findings.push_back({1, "no x columns"});
    if (counts[1] < 2) findings.push_back({1, "fewer than 2 objective columns"});
    if (!findings.empty()) return findings;
  }

  std::size_t row = 1;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++row;
    if (csv::trim(line).empty()) continue;
    ++data_rows;
    const auto cells = csv::split(line);
    if (cells.size() != header.size()) {
      findings.push_back({row, std::to_string(cells.size()) + " cells, expected " + std::to_string(header.size())});
      continue;
    }
    std::vector<double> g, h;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = csv::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) {
        findings.push_back({row, "non-finite or malformed value in " + header[c]});
        continue;
      }
      if (meta && c < m.n && (*v < m.lower[c] || *v > m.upper[c])) {
        findings.push_back({row, header[c] + " outside problem bounds"});
      }
      if (header[c][0] == 'g') g.push_back(*v);
      if (header[c][0] == 'h') h.push_back(*v);
      if (has_cv && c + 1 == cells.size() && g.size() == counts[2] && h.size() == counts[3]) {
        if (std::abs(compute_violation(g, h) - *v) > 1e-9) {
          findings.push_back({row, "cv column inconsistent with g/h; the recomputed value is used", true});
        }
      }
    }
  }
  if (data_rows == 0) findings.push_back({row, "no data rows"});
  return findings;
}

}  // namespace cmopla
