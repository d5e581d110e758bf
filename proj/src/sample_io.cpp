#include "cmopla/sample_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmopla/csv.hpp"

namespace cmopla {

ProblemMeta parse_problem_meta(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("problem metadata: ") + e.what());
  }
  ProblemMeta m;
  try {
    m.name = j.at("name").get<std::string>();
    m.n = j.at("n").get<std::size_t>();
    m.M = j.at("M").get<std::size_t>();
    m.J = j.value("J", std::size_t{0});
    m.K = j.value("K", std::size_t{0});
    m.lower = j.at("lower").get<std::vector<double>>();
    m.upper = j.at("upper").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("problem metadata: ") + e.what());
  }
  m.validate();
  return m;
}

ProblemMeta load_problem_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open problem metadata " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_meta(ss.str());
}

std::vector<std::string> sample_header(const ProblemMeta& meta) {
  std::vector<std::string> cols;
  auto add = [&](char prefix, std::size_t count) {
    for (std::size_t i = 1; i <= count; ++i) cols.push_back(prefix + std::to_string(i));
  };
  add('x', meta.n);
  add('f', meta.M);
  add('g', meta.J);
  add('h', meta.K);
  return cols;
}

SampleSet load_sample_file(const std::filesystem::path& path, const ProblemMeta& meta,
                           Diagnostics* diag) {
  meta.validate();
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open sample file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file, header expected", 1);
  const auto header = csv::split(line);
  const auto expected = sample_header(meta);

  auto count_prefix = [&](char p) {
    std::size_t c = 0;
    for (const auto& h : header) {
      if (h.size() > 1 && h[0] == p && h.find_first_not_of("0123456789", 1) == std::string::npos) ++c;
    }
    return c;
  };
  if (count_prefix('x') != meta.n || count_prefix('f') != meta.M || count_prefix('g') != meta.J ||
      count_prefix('h') != meta.K) {
    std::ostringstream os;
    os << "header shape (x" << count_prefix('x') << ", f" << count_prefix('f') << ", g"
       << count_prefix('g') << ", h" << count_prefix('h') << ") does not match problem (x" << meta.n
       << ", f" << meta.M << ", g" << meta.J << ", h" << meta.K << ")";
    throw ShapeError("row 1: " + os.str());
  }
  bool has_cv = header.size() == expected.size() + 1 && header.back() == "cv";
  if (header.size() != expected.size() + (has_cv ? 1 : 0)) throw ParseError("unexpected extra columns", 1);
  for (std::size_t c = 0; c < expected.size(); ++c) {
    if (header[c] != expected[c]) throw ParseError("column " + std::to_string(c + 1) + " is '" +
                                                   header[c] + "', expected '" + expected[c] + "'", 1);
  }

  SampleSet set;
  set.problem = meta;
  set.method = SampleMethod::ExternalFile;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (csv::trim(line).empty()) continue;
    const auto cells = csv::split(line);
    if (cells.size() != header.size()) {
      throw ShapeError("row " + std::to_string(row) + ": " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(header.size()));
    }
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = csv::parse_double(cells[c]);
      if (!v || !std::isfinite(*v)) throw ParseError("non-finite or malformed value in column " + header[c], row);
      values[c] = *v;
    }
    EvaluatedSolution s;
    auto it = values.begin();
    s.x.assign(it, it + meta.n);
    it += meta.n;
    s.f.assign(it, it + meta.M);
    it += meta.M;
    s.g.assign(it, it + meta.J);
    it += meta.J;
    s.h.assign(it, it + meta.K);
    s.cv = compute_violation(s.g, s.h);
    if (has_cv && std::abs(values.back() - s.cv) > 1e-9 && diag) {
      diag->warn(path.string() + " row " + std::to_string(row) + ": cv column " +
                 csv::format_double(values.back()) + " replaced by recomputed " + csv::format_double(s.cv));
    }
    for (std::size_t i = 0; i < meta.n; ++i) {
      if (s.x[i] < meta.lower[i] || s.x[i] > meta.upper[i]) {
        throw ParseError("x" + std::to_string(i + 1) + " outside problem bounds", row);
      }
    }
    set.solutions.push_back(std::move(s));
  }
  if (set.solutions.empty()) throw ParseError("no data rows", row);
  return set;
}

void write_sample_file(const std::filesystem::path& path, const SampleSet& sample, bool with_cv) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  auto header = sample_header(sample.problem);
  if (with_cv) header.push_back("cv");
  out << csv::join(header) << '\n';
  for (const auto& s : sample.solutions) {
    std::vector<std::string> cells;
    for (auto* vec : {&s.x, &s.f, &s.g, &s.h}) {
      for (double v : *vec) cells.push_back(csv::format_double(v));
    }
    if (with_cv) cells.push_back(csv::format_double(s.cv));
    out << csv::join(cells) << '\n';
  }
}

}  // namespace cmopla
