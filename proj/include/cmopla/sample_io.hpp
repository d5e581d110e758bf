#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cmopla/core.hpp"

namespace cmopla {

/// Parses `{name,n,M,J,K,lower,upper}`.
ProblemMeta load_problem_meta(const std::filesystem::path& path);
ProblemMeta parse_problem_meta(const std::string& json_text);

/// Expected sample-file header for a problem: x1..xn,f1..fM,g1..gJ,h1..hK.
std::vector<std::string> sample_header(const ProblemMeta& meta);

/// Reads a sample CSV. A trailing cv column is checked against the value
/// recomputed from g/h; mismatches beyond 1e-9 are reported through `diag`
/// and the recomputed value is kept.
SampleSet load_sample_file(const std::filesystem::path& path, const ProblemMeta& meta,
                           Diagnostics* diag = nullptr);

void write_sample_file(const std::filesystem::path& path, const SampleSet& sample,
                       bool with_cv = true);

}  // namespace cmopla
