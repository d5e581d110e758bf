#pragma once

#include "cmopla/core.hpp"
#include "cmopla/dominance.hpp"
#include "cmopla/feature_vector.hpp"
#include "cmopla/indicators.hpp"

namespace cmopla {

/// Sorting and normalization shared by every global feature of one sample.
struct SampleAnalysis {
  const SampleSet* sample = nullptr;
  FrontAssignment unconstrained;
  FrontAssignment constrained;
  ParetoSets sets;
  NormalizationFrame frame;  // over all sample objectives
  PointSet normalized_f;

  explicit SampleAnalysis(const SampleSet& s);
};

/// Quality and violation both at or below this normalized level place a
/// solution in the ideal zone.
inline constexpr double kIdealZoneLevel = 0.25;

FeatureVector mo_global(const SampleAnalysis& analysis);
FeatureVector cv_global(const SampleAnalysis& analysis);
FeatureVector mov_global(const SampleAnalysis& analysis);

FeatureVector mo_global(const SampleSet& sample);
FeatureVector cv_global(const SampleSet& sample);
FeatureVector mov_global(const SampleSet& sample);

/// All three global blocks from a single sort of the sample.
FeatureVector global_features(const SampleSet& sample);

/// Statistics of the pairwise distances within a point set.
struct PairwiseDistanceSummary {
  double max = 0.0;
  double mean = 0.0;      // over unordered pairs
  double iqr_mean = 0.0;  // mean over points of the IQR of their distances to the others
  bool degenerate = false;
};

PairwiseDistanceSummary pairwise_distance_summary(const PointSet& points);

}  // namespace cmopla
