#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cmopla/core.hpp"
#include "cmopla/pipeline.hpp"

namespace cmopla {

/// A problem found while checking an input file. Row 1 is the header; row 0
/// refers to the file as a whole.
struct Finding {
  std::size_t row = 0;
  std::string message;
  bool warning = false;  // reported, but the file still validates
};

/// Sidecar holding the degenerate flags of a feature CSV:
/// features.csv -> features.flags.csv.
std::filesystem::path flags_path_for(const std::filesystem::path& feature_csv);

/// `instance,set,<features...>`; degenerate flags go to the sidecar.
void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

/// `instance,algorithm,run,hv`
std::vector<Finding> validate_performance_csv(const std::filesystem::path& path);
/// Throws ParseError on the first finding.
std::vector<PerformanceRecord> read_performance_csv(const std::filesystem::path& path);
void write_performance_csv(const std::filesystem::path& path, const std::vector<PerformanceRecord>& records);

std::vector<Finding> validate_projection_json(const std::filesystem::path& path);

/// Sample CSV check. Without metadata the arity is inferred from the header.
std::vector<Finding> validate_sample_csv(const std::filesystem::path& path,
                                         const std::optional<ProblemMeta>& meta = std::nullopt);

}  // namespace cmopla
