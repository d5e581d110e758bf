#include "cmopla/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmopla/csv.hpp"
#include "cmopla/stats.hpp"

namespace cmopla {
namespace {

// The published projection names two violation-model features with a
// "pop_" prefix; the extractor emits them without it.
std::string_view alias_of(std::string_view name) {
  if (name == "pop_cv_mdl_r2") return "cv_mdl_r2";
  if (name == "pop_cv_range_coeff") return "cv_range_coeff";
  if (name == "cv_mdl_r2") return "pop_cv_mdl_r2";
  if (name == "cv_range_coeff") return "pop_cv_range_coeff";
  return {};
}

}  // namespace

std::optional<std::size_t> InstanceTable::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (features[j] == name) return j;
  }
  if (const auto alt = alias_of(name); !alt.empty()) {
    for (std::size_t j = 0; j < features.size(); ++j) {
      if (features[j] == alt) return j;
    }
  }
  return std::nullopt;
}

std::vector<double> InstanceTable::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& row : values) out.push_back(row.at(j));
  return out;
}

InstanceTable InstanceTable::subset(const std::vector<std::string>& keep) const {
  const std::set<std::string> wanted(keep.begin(), keep.end());
  InstanceTable out;
  out.features = features;
  out.lambdas = lambdas;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!wanted.count(instances[i])) continue;
    out.instances.push_back(instances[i]);
    out.values.push_back(values[i]);
    out.degenerate.push_back(degenerate[i]);
  }
  return out;
}

InstanceTable aggregate_features(const FeatureTable& table) {
  InstanceTable out;
  out.features = table.names;
  std::map<std::string, std::vector<const FeatureRow*>> groups;
  for (const auto& row : table.rows) {
    if (row.features.names() != table.names) {
      throw ShapeError("feature names of instance '" + row.instance + "' set " + std::to_string(row.set) +
                       " differ from the table header");
    }
    groups[row.instance].push_back(&row);
  }
  const std::size_t F = table.names.size();
  for (const auto& [instance, rows] : groups) {
    std::vector<double> sum(F, 0.0);
    std::vector<std::size_t> count(F, 0);
    for (const auto* row : rows) {
      const auto entries = row->features.entries();
      for (std::size_t j = 0; j < F; ++j) {
        if (entries[j].degenerate) continue;
        sum[j] += entries[j].value;
        ++count[j];
      }
    }
    std::vector<double> mean(F, 0.0);
    std::vector<bool> flag(F, false);
    for (std::size_t j = 0; j < F; ++j) {
      if (count[j] == 0) {
        flag[j] = true;
      } else {
        mean[j] = sum[j] / static_cast<double>(count[j]);
      }
    }
    out.instances.push_back(instance);
    out.values.push_back(std::move(mean));
    out.degenerate.push_back(std::move(flag));
  }
  return out;
}

InstanceTable transform_features(const InstanceTable& table, Diagnostics* diag) {
  InstanceTable out = table;
  if (table.instances.size() < 3) {
    if (diag) diag->warn("Yeo-Johnson transform skipped: fewer than 3 instances");
    out.lambdas.clear();
    return out;
  }
  out.lambdas.assign(table.features.size(), 1.0);
  for (std::size_t j = 0; j < table.features.size(); ++j) {
    const auto fit = stats::yeo_johnson_fit_transform(table.column(j));
    out.lambdas[j] = fit.lambda;
    for (std::size_t i = 0; i < table.instances.size(); ++i) out.values[i][j] = fit.transformed[i];
  }
  return out;
}

std::vector<std::string> PerformanceLabels::instances() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : outcomes) out.push_back(id);
  return out;
}

std::vector<double> PerformanceLabels::normalized_column(const std::string& algorithm,
                                                         const std::vector<std::string>& ids) const {
  std::vector<double> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    double v = 0.0;
    if (auto it = outcomes.find(id); it != outcomes.end()) {
      if (auto jt = it->second.find(algorithm); jt != it->second.end()) v = jt->second.normalized_hv;
    }
    out.push_back(v);
  }
  return out;
}

bool PerformanceLabels::good(const std::string& instance, const std::string& algorithm) const {
  auto it = outcomes.find(instance);
  if (it == outcomes.end()) return false;
  auto jt = it->second.find(algorithm);
  return jt != it->second.end() && jt->second.good;
}

PerformanceLabels normalize_and_binarize(std::span<const PerformanceRecord> records) {
  std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> sums;
  std::set<std::tuple<std::string, std::string, int>> seen;
  std::set<std::string> algorithms;
  for (const auto& r : records) {
    if (!seen.emplace(r.instance, r.algorithm, r.run).second) {
      throw ArgumentError("duplicate performance record (" + r.instance + ", " + r.algorithm + ", " +
                          std::to_string(r.run) + ")");
    }
    if (!std::isfinite(r.hv) || r.hv < 0.0) {
      throw ArgumentError("invalid hv for (" + r.instance + ", " + r.algorithm + ")");
    }
    auto& acc = sums[r.instance][r.algorithm];
    acc.first += r.hv;
    ++acc.second;
    algorithms.insert(r.algorithm);
  }

  PerformanceLabels out;
  out.algorithms.assign(algorithms.begin(), algorithms.end());
  for (const auto& [instance, per_alg] : sums) {
    auto& dest = out.outcomes[instance];
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [alg, acc] : per_alg) {
      const double m = acc.first / static_cast<double>(acc.second);
      dest[alg].mean_hv = m;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    const bool tied = !(hi > lo);
    for (auto& [alg, o] : dest) {
      o.normalized_hv = tied ? 0.0 : (o.mean_hv - lo) / (hi - lo);
      o.good = o.mean_hv > 0.0 && o.mean_hv >= kGoodShareOfBest * hi && (tied || o.normalized_hv > 0.0);
    }
  }
  return out;
}

FilterResult correlation_filter(const std::vector<std::string>& names,
                                const std::vector<std::vector<double>>& feature_columns,
                                const std::vector<std::vector<double>>& performance_columns) {
  if (names.size() != feature_columns.size()) throw ShapeError("feature names and columns differ in count");
  std::vector<std::size_t> order(names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });

  FilterResult out;
  std::vector<std::size_t> strong;
  for (auto j : order) {
    double best = 0.0;
    for (const auto& perf : performance_columns) {
      best = std::max(best, std::abs(stats::pearson(feature_columns[j], perf)));
    }
    out.performance_correlation[names[j]] = best;
    if (best < kWeakCorrelation) {
      out.dropped_weak.push_back(names[j]);
    } else {
      strong.push_back(j);
    }
  }

  std::vector<bool> alive(strong.size(), true);
  for (std::size_t a = 0; a < strong.size(); ++a) {
    for (std::size_t b = a + 1; b < strong.size() && alive[a]; ++b) {
      if (!alive[b]) continue;
      const double r = std::abs(stats::pearson(feature_columns[strong[a]], feature_columns[strong[b]]));
      if (r <= kRedundantCorrelation) continue;
      const double pa = out.performance_correlation[names[strong[a]]];
      const double pb = out.performance_correlation[names[strong[b]]];
      // b sorts after a, so ties drop b.
      const std::size_t loser = pa < pb ? a : b;
      alive[loser] = false;
      out.dropped_redundant.push_back(names[strong[loser]]);
    }
  }
  for (std::size_t a = 0; a < strong.size(); ++a) {
    if (alive[a]) out.retained.push_back(names[strong[a]]);
  }
  std::sort(out.dropped_redundant.begin(), out.dropped_redundant.end());
  return out;
}

FilterResult correlation_filter(const InstanceTable& table, const PerformanceLabels& labels) {
  if (table.instances.size() < 3) throw PreconditionError("correlation filter needs at least 3 instances");
  std::vector<std::vector<double>> features;
  for (std::size_t j = 0; j < table.features.size(); ++j) features.push_back(table.column(j));
  std::vector<std::vector<double>> perf;
  for (const auto& alg : labels.algorithms) perf.push_back(labels.normalized_column(alg, table.instances));
  return correlation_filter(table.features, features, perf);
}

ProjectionMatrix ProjectionMatrix::builtin() {
  ProjectionMatrix p;
  p.feature_order = {"min_cv",        "skew_cv",        "pop_cv_mdl_r2",
                     "pop_cv_range_coeff", "dist_c_dist_x_avg_rws", "nncv_r1_rws",
                     "bncv_r1_rws",   "upo_n",          "corr_obj",
                     "mean_f",        "skew_f",         "f_mdl_r2",
                     "f_range_coeff", "dist_f_dist_x_avg_rws", "cpo_upo_n",
                     "GD_cpo_upo",    "hv",             "corr_cf",
                     "piz_ob_min",    "ps_dist_mean",   "nhv_avg_rws",
                     "bhv_avg_rws",   "nhv_r1_rws"};
  p.W[0] = {-0.0682, -0.0465, 0.1413, -0.1132, -0.2930, 0.2010, 0.2178, 0.2008, -0.1996, -0.3420, 0.3196, 0.2640,
            0.1285,  -0.2986, -0.2306, 0.1911, 0.1912, -0.2418, -0.0513, -0.0465, 0.0397, 0.2087, 0.1462};
  p.W[1] = {-0.2608, 0.2616, -0.0689, 0.0217, -0.1596, 0.0430, -0.0309, -0.1819, 0.0440, 0.3035, -0.1020, 0.0873,
            0.0726,  0.1138, 0.2422,  -0.0884, 0.0413, 0.0489, 0.4075, 0.3733, 0.2717, -0.1661, 0.0967};
  return p;
}

void ProjectionMatrix::validate() const {
  for (std::size_t r = 0; r < 2; ++r) {
    if (W[r].size() != feature_order.size()) {
      throw ShapeError("projection row " + std::to_string(r + 1) + " has " + std::to_string(W[r].size()) +
                       " columns, expected " + std::to_string(feature_order.size()));
    }
    for (double v : W[r]) {
      if (!std::isfinite(v)) throw ShapeError("projection contains a non-finite coefficient");
    }
  }
  if (feature_order.empty()) throw ShapeError("projection has no features");
}

ProjectionMatrix parse_projection_json(const std::string& text) {
  ProjectionMatrix p;
  try {
    const auto j = nlohmann::json::parse(text);
    p.feature_order = j.at("featureOrder").get<std::vector<std::string>>();
    const auto rows = j.at("W").get<std::vector<std::vector<double>>>();
    if (rows.size() != 2) throw ShapeError("projection W must have 2 rows, got " + std::to_string(rows.size()));
    p.W[0] = rows[0];
    p.W[1] = rows[1];
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError(std::string("projection JSON: ") + e.what());
  }
  p.validate();
  return p;
}

ProjectionMatrix load_projection(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open projection " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_projection_json(ss.str());
}

std::string projection_to_json(const ProjectionMatrix& matrix) {
  nlohmann::json j;
  j["featureOrder"] = matrix.feature_order;
  j["W"] = {matrix.W[0], matrix.W[1]};
  return j.dump(2);
}

std::array<double, 2> project_standardized(std::span<const double> z, const ProjectionMatrix& matrix) {
  if (z.size() != matrix.feature_order.size()) {
    throw ShapeError("standardized vector has " + std::to_string(z.size()) + " entries, expected " +
                     std::to_string(matrix.feature_order.size()));
  }
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < z.size(); ++j) out[r] += matrix.W[r][j] * z[j];
  }
  return out;
}

std::vector<std::string> missing_projection_features(const InstanceTable& table, const ProjectionMatrix& matrix) {
  std::vector<std::string> missing;
  for (const auto& name : matrix.feature_order) {
    if (!table.column_index(name)) missing.push_back(name);
  }
  return missing;
}

std::string default_source(const std::string& instance) {
  const auto pos = instance.find('_');
  return pos == std::string::npos ? instance : instance.substr(0, pos);
}

InstanceSpace project(const InstanceTable& table, const ProjectionMatrix& matrix, const PerformanceLabels* labels,
                      const std::map<std::string, std::string>& sources, Diagnostics* diag) {
  matrix.validate();
  const auto missing = missing_projection_features(table, matrix);
  if (!missing.empty()) {
    std::string msg = "projection features missing from table:";
    for (const auto& m : missing) msg += " " + m;
    throw PreconditionError(msg, missing);
  }
  const std::size_t I = table.instances.size();
  const std::size_t F = matrix.feature_order.size();
  std::vector<std::vector<double>> z(I, std::vector<double>(F, 0.0));
  for (std::size_t k = 0; k < F; ++k) {
    const auto col = table.column(*table.column_index(matrix.feature_order[k]));
    const auto mo = stats::moments(col);
    if (I < 2 || mo.std == 0.0) {
      if (diag) diag->warn("feature " + matrix.feature_order[k] + " has zero variance; standardized to 0");
      continue;
    }
    for (std::size_t i = 0; i < I; ++i) z[i][k] = (col[i] - mo.mean) / mo.std;
  }

  InstanceSpace space;
  if (labels) space.algorithms = labels->algorithms;
  for (std::size_t i = 0; i < I; ++i) {
    SpacePoint p;
    p.instance = table.instances[i];
    const auto c = project_standardized(z[i], matrix);
    p.z1 = c[0];
    p.z2 = c[1];
    auto it = sources.find(p.instance);
    p.source = it != sources.end() ? it->second : default_source(p.instance);
    for (const auto& alg : space.algorithms) {
      const bool g = labels->good(p.instance, alg);
      p.good.push_back(g);
      p.good_count += g ? 1 : 0;
    }
    space.points.push_back(std::move(p));
  }
  return space;
}

void write_metadata_csv(const std::filesystem::path& path, const InstanceTable& table,
                        const PerformanceLabels& labels) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  std::vector<std::string> header{"instance"};
  header.insert(header.end(), table.features.begin(), table.features.end());
  for (const auto& alg : labels.algorithms) {
    header.push_back(alg + "_mean_hv");
    header.push_back(alg + "_norm_hv");
    header.push_back(alg + "_good");
  }
  out << csv::join(header) << '\n';
  for (std::size_t i = 0; i < table.instances.size(); ++i) {
    std::vector<std::string> cells{table.instances[i]};
    for (double v : table.values[i]) cells.push_back(csv::format_double(v));
    const auto it = labels.outcomes.find(table.instances[i]);
    for (const auto& alg : labels.algorithms) {
      AlgorithmOutcome o;
      if (it != labels.outcomes.end()) {
        if (auto jt = it->second.find(alg); jt != it->second.end()) o = jt->second;
      }
      cells.push_back(csv::format_double(o.mean_hv));
      cells.push_back(csv::format_double(o.normalized_hv));
      cells.push_back(o.good ? "1" : "0");
    }
    out << csv::join(cells) << '\n';
  }
}

}  // namespace cmopla
