#pragma once

#include <vector>

#include "cmopla/core.hpp"
#include "cmopla/feature_vector.hpp"

namespace cmopla {

/// Raw per-step measurements along a walk. Set statistics use the
/// neighborhood plus the current solution; distances use the neighbors only.
/// Objectives are normalized over the whole walk, as is cv in dist_f_c.
struct StepSeries {
  std::vector<double> dist_x;
  std::vector<double> dist_f;
  std::vector<double> dist_c;
  std::vector<double> dist_f_c;
  std::vector<double> ncv;
  std::vector<double> nncv;
  std::vector<double> bncv;
  std::vector<double> sup;
  std::vector<double> inf;
  std::vector<double> inc;
  std::vector<double> lnd;
  std::vector<double> nfronts;
  std::vector<double> nuhv;
  std::vector<double> nhv;
  std::vector<double> bhv;
  std::vector<bool> feasible;

  std::size_t length() const { return ncv.size(); }
};

StepSeries step_series(const WalkTrace& walk);

/// Share of consecutive steps whose feasibility differs.
double boundary_crossing_ratio(const std::vector<bool>& feasible);

FeatureVector walk_features(const StepSeries& series);
FeatureVector walk_features(const WalkTrace& walk);

}  // namespace cmopla
