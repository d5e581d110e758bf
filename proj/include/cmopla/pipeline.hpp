#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmopla/errors.hpp"
#include "cmopla/feature_vector.hpp"

namespace cmopla {

/// Features of one (instance, sample-set) pair.
struct FeatureRow {
  std::string instance;
  int set = 0;
  FeatureVector features;
};

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureRow> rows;
};

/// One row per instance, instances sorted by id.
struct InstanceTable {
  std::vector<std::string> instances;
  std::vector<std::string> features;
  std::vector<std::vector<double>> values;      // [instance][feature]
  std::vector<std::vector<bool>> degenerate;    // [instance][feature]
  std::vector<double> lambdas;                  // per feature once transformed

  /// Index of `name`, accepting the cv_* / pop_cv_* spellings interchangeably.
  std::optional<std::size_t> column_index(std::string_view name) const;
  std::vector<double> column(std::size_t j) const;
  /// Copy restricted to the given instance ids (kept in table order).
  InstanceTable subset(const std::vector<std::string>& keep) const;
};

/// Mean over sample sets per instance, skipping degenerate entries; a
/// feature degenerate in every set becomes 0 and stays flagged. Throws
/// ShapeError if rows disagree on feature names.
InstanceTable aggregate_features(const FeatureTable& table);

/// Per-feature Yeo-Johnson fit across instances. With fewer than 3
/// instances the table is returned unchanged and a warning is recorded.
InstanceTable transform_features(const InstanceTable& table, Diagnostics* diag = nullptr);

struct PerformanceRecord {
  std::string instance;
  std::string algorithm;
  int run = 0;
  double hv = 0.0;
};

struct AlgorithmOutcome {
  double mean_hv = 0.0;
  double normalized_hv = 0.0;
  bool good = false;
};

/// Share of the best mean HV an algorithm must reach to count as good.
inline constexpr double kGoodShareOfBest = 0.99;

struct PerformanceLabels {
  std::vector<std::string> algorithms;  // sorted
  std::map<std::string, std::map<std::string, AlgorithmOutcome>> outcomes;  // instance -> algorithm

  std::vector<std::string> instances() const;
  /// Normalized HV per instance of `instances`; missing pairs give 0.
  std::vector<double> normalized_column(const std::string& algorithm,
                                        const std::vector<std::string>& instances) const;
  bool good(const std::string& instance, const std::string& algorithm) const;
};

/// Mean HV over runs, max-min normalization across algorithms per instance,
/// and the good label: mean HV > 0, within 1% of the best, and normalized HV
/// > 0 unless every algorithm ties (max = min). Throws ArgumentError on a
/// duplicated (instance, algorithm, run).
PerformanceLabels normalize_and_binarize(std::span<const PerformanceRecord> records);

inline constexpr double kWeakCorrelation = 0.3;
inline constexpr double kRedundantCorrelation = 0.85;

struct FilterResult {
  std::vector<std::string> retained;          // name order
  std::vector<std::string> dropped_weak;
  std::vector<std::string> dropped_redundant;
  std::map<std::string, double> performance_correlation;  // max |r| over algorithms
};

/// Drops features whose |Pearson| with every performance column is below
/// 0.3, then resolves pairs with |Pearson| above 0.85 in name order, keeping
/// the member better correlated with performance (ties keep the earlier name).
FilterResult correlation_filter(const std::vector<std::string>& names,
                                const std::vector<std::vector<double>>& feature_columns,
                                const std::vector<std::vector<double>>& performance_columns);

FilterResult correlation_filter(const InstanceTable& table, const PerformanceLabels& labels);

struct ProjectionMatrix {
  std::vector<std::string> feature_order;
  std::array<std::vector<double>, 2> W;

  /// The published 23-feature projection.
  static ProjectionMatrix builtin();
  /// Throws ShapeError on inconsistent sizes.
  void validate() const;
};

inline constexpr std::size_t kBuiltinProjectionWidth = 23;

ProjectionMatrix parse_projection_json(const std::string& text);
ProjectionMatrix load_projection(const std::filesystem::path& path);
std::string projection_to_json(const ProjectionMatrix& matrix);

/// W times an already-standardized feature vector.
std::array<double, 2> project_standardized(std::span<const double> z, const ProjectionMatrix& matrix);

struct SpacePoint {
  std::string instance;
  double z1 = 0.0;
  double z2 = 0.0;
  std::string source;
  std::vector<bool> good;  // aligned with InstanceSpace::algorithms
  std::size_t good_count = 0;
};

struct InstanceSpace {
  std::vector<std::string> algorithms;
  std::vector<SpacePoint> points;
};

/// Names of `matrix.feature_order` not present in `table`.
std::vector<std::string> missing_projection_features(const InstanceTable& table, const ProjectionMatrix& matrix);

/// Z-scores each projection feature across instances (sample standard
/// deviation; zero variance gives 0 and a warning) and applies W. Labels and
/// source tags are attached when given. Throws PreconditionError listing
/// missing features.
InstanceSpace project(const InstanceTable& table, const ProjectionMatrix& matrix,
                      const PerformanceLabels* labels = nullptr,
                      const std::map<std::string, std::string>& sources = {}, Diagnostics* diag = nullptr);

/// Source tag used when none is configured: the id up to its first '_'.
std::string default_source(const std::string& instance);

/// Convex hull, counter-clockwise without repeating the first vertex.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> points);

/// Writes instance_space.csv and the SVG views into `out_dir`; returns the
/// written paths.
std::vector<std::filesystem::path> export_space(const InstanceSpace& space, const std::filesystem::path& out_dir);

/// Per-instance transformed features with per-algorithm mean/normalized HV
/// and labels.
void write_metadata_csv(const std::filesystem::path& path, const InstanceTable& table,
                        const PerformanceLabels& labels);

}  // namespace cmopla
