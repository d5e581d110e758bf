#include "cmopla/features_global.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmopla/stats.hpp"

namespace cmopla {
namespace {

void require_size(const SampleSet& s) {
  if (s.solutions.empty()) throw ArgumentError("empty sample");
  if (s.size() < s.problem.n + 2) {
    throw ArgumentError("sample of " + std::to_string(s.size()) + " points is too small for n = " +
                        std::to_string(s.problem.n));
  }
}

PointSet objectives(const SampleSet& s, const std::vector<std::size_t>* subset = nullptr) {
  PointSet out;
  if (subset) {
    for (auto i : *subset) out.push_back(s.solutions[i].f);
  } else {
    for (const auto& sol : s.solutions) out.push_back(sol.f);
  }
  return out;
}

PointSet pick(const PointSet& points, const std::vector<std::size_t>& idx) {
  PointSet out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(points[i]);
  return out;
}

std::vector<double> column(const SampleSet& s, std::size_t m) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& sol : s.solutions) out.push_back(sol.f[m]);
  return out;
}

std::vector<double> violations(const SampleSet& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& sol : s.solutions) out.push_back(sol.cv);
  return out;
}

std::vector<std::vector<double>> design(const SampleSet& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.size());
  for (const auto& sol : s.solutions) rows.push_back(sol.x);
  return rows;
}

std::vector<double> minmax_scaled(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double span = *hi - *lo;
  std::vector<double> out(v.size(), 0.0);
  if (span > 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / span;
  }
  return out;
}

double ideal_zone_share(std::span<const double> quality, std::span<const double> violation) {
  std::size_t in = 0;
  for (std::size_t i = 0; i < quality.size(); ++i) {
    if (quality[i] <= kIdealZoneLevel && violation[i] <= kIdealZoneLevel) ++in;
  }
  return static_cast<double>(in) / static_cast<double>(quality.size());
}

}  // namespace

SampleAnalysis::SampleAnalysis(const SampleSet& s) : sample(&s) {
  require_size(s);
  unconstrained = nondominated_sort(s.solutions, SortMode::Unconstrained);
  constrained = nondominated_sort(s.solutions, SortMode::Constrained);
  sets.upo = unconstrained.members(1);
  sets.cpo = constrained.members(1);
  const auto f = objectives(s);
  frame = NormalizationFrame::of(f);
  normalized_f = normalize(f, frame);
}

FeatureVector mo_global(const SampleAnalysis& a) {
  const SampleSet& s = *a.sample;
  const std::size_t N = s.size();
  const std::size_t M = s.problem.M;
  FeatureVector fv;

  fv.set("upo_n", static_cast<double>(a.sets.upo.size()) / static_cast<double>(N));
  fv.set("uhv", hypervolume(pick(a.normalized_f, a.sets.upo), ReferencePoint::uniform(M)));

  double corr_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = i + 1; j < M; ++j) {
      corr_sum += stats::pearson(column(s, i), column(s, j));
      ++pairs;
    }
  }
  fv.set("corr_obj", corr_sum / static_cast<double>(pairs));

  std::vector<double> ranks(N);
  for (std::size_t i = 0; i < N; ++i) {
    ranks[i] = static_cast<double>(a.unconstrained.ranks[i]) / static_cast<double>(a.unconstrained.front_count);
  }
  const auto rm = stats::moments(ranks);
  fv.set("mean_f", rm.mean);
  fv.set("std_f", rm.std);
  fv.set("max_f", rm.max);
  fv.set("skew_f", rm.skewness, rm.degenerate);
  fv.set("kurt_f", rm.kurtosis, rm.degenerate);

  std::vector<double> kurt(M), skew(M);
  bool obj_degenerate = false;
  for (std::size_t m = 0; m < M; ++m) {
    const auto om = stats::moments(column(s, m));
    kurt[m] = om.kurtosis;
    skew[m] = om.skewness;
    obj_degenerate = obj_degenerate || om.degenerate;
  }
  const auto [kmin, kmax] = std::minmax_element(kurt.begin(), kurt.end());
  const auto [smin, smax] = std::minmax_element(skew.begin(), skew.end());
  fv.set("kurt_avg", stats::mean(kurt), obj_degenerate);
  fv.set("kurt_min", *kmin, obj_degenerate);
  fv.set("kurt_max", *kmax, obj_degenerate);
  fv.set("kurt_rnge", *kmax - *kmin, obj_degenerate);
  fv.set("skew_avg", stats::mean(skew), obj_degenerate);
  fv.set("skew_min", *smin, obj_degenerate);
  fv.set("skew_max", *smax, obj_degenerate);
  fv.set("skew_rnge", *smax - *smin, obj_degenerate);

  const auto lm = stats::linear_model(design(s), ranks);
  fv.set("f_mdl_r2", lm.r2adj, lm.degenerate);
  fv.set("f_range_coeff", lm.coeff_range);
  return fv;
}

FeatureVector cv_global(const SampleAnalysis& a) {
  const SampleSet& s = *a.sample;
  const auto cv = violations(s);
  FeatureVector fv;

  const auto cm = stats::moments(cv);
  fv.set("min_cv", cm.min);
  fv.set("skew_cv", cm.skewness, cm.degenerate);
  fv.set("kurt_cv", cm.kurtosis, cm.degenerate);

  const auto lm = stats::linear_model(design(s), cv);
  fv.set("cv_mdl_r2", lm.r2adj, lm.degenerate);
  fv.set("cv_range_coeff", lm.coeff_range, lm.degenerate);

  // Distance to the nearest feasible point, or to the least-violating point
  // when nothing is feasible.
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.solutions[i].feasible()) anchors.push_back(i);
  }
  if (anchors.size() == s.size()) {
    fv.set_missing("dist_c_corr");
    return fv;
  }
  if (anchors.empty()) {
    anchors.push_back(static_cast<std::size_t>(std::min_element(cv.begin(), cv.end()) - cv.begin()));
  }
  std::vector<double> dist(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.solutions[i].feasible()) continue;
    double best = std::numeric_limits<double>::infinity();
    for (auto j : anchors) best = std::min(best, euclidean(s.solutions[i].x, s.solutions[j].x));
    dist[i] = best;
  }
  fv.set("dist_c_corr", stats::pearson(cv, dist));
  return fv;
}

PairwiseDistanceSummary pairwise_distance_summary(const PointSet& points) {
  PairwiseDistanceSummary out;
  const std::size_t n = points.size();
  if (n < 2) {
    out.degenerate = true;
    return out;
  }
  // Full symmetric rows are recomputed per point to keep memory linear.
  std::vector<double> row(n - 1);
  double sum = 0.0;
  double iqr_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = euclidean(points[i], points[j]);
      row[k++] = d;
      if (j > i) {
        sum += d;
        out.max = std::max(out.max, d);
      }
    }
    iqr_sum += stats::quartile_iqr(row);
  }
  out.mean = sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  out.iqr_mean = iqr_sum / static_cast<double>(n);
  return out;
}

FeatureVector mov_global(const SampleAnalysis& a) {
  const SampleSet& s = *a.sample;
  const std::size_t N = s.size();
  const std::size_t M = s.problem.M;
  const auto cv = violations(s);
  FeatureVector fv;

  const auto feasible = static_cast<std::size_t>(std::count_if(
      s.solutions.begin(), s.solutions.end(), [](const auto& sol) { return sol.feasible(); }));
  fv.set("fsr", static_cast<double>(feasible) / static_cast<double>(N));
  fv.set("po_n", static_cast<double>(a.sets.cpo.size()) / static_cast<double>(N));

  const auto ref = ReferencePoint::uniform(M);
  const auto cpo_f = pick(a.normalized_f, a.sets.cpo);
  const auto upo_f = pick(a.normalized_f, a.sets.upo);
  const double hv = hypervolume(cpo_f, ref);
  const double uhv = hypervolume(upo_f, ref);
  fv.set("hv", hv);
  fv.set("cpo_upo_n", static_cast<double>(a.sets.cpo.size()) / static_cast<double>(a.sets.upo.size()));
  if (uhv > 0.0) {
    fv.set("hv_uhv_n", hv / uhv);
  } else {
    fv.set_missing("hv_uhv_n");
  }

  if (auto gd = generational_distance(cpo_f, upo_f)) {
    fv.set("GD_cpo_upo", *gd);
  } else {
    fv.set_missing("GD_cpo_upo");
  }
  if (auto cov = coverage(cpo_f, upo_f)) {
    fv.set("cover_cpo_upo", *cov);
  } else {
    fv.set_missing("cover_cpo_upo");
  }

  double cmin = std::numeric_limits<double>::infinity();
  double cmax = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < M; ++m) {
    const double r = stats::pearson(column(s, m), cv);
    cmin = std::min(cmin, r);
    cmax = std::max(cmax, r);
  }
  const bool cv_constant = stats::moments(cv).degenerate;
  fv.set("corr_cobj_min", cmin, cv_constant);
  fv.set("corr_cobj_max", cmax, cv_constant);

  std::vector<double> crank(N);
  for (std::size_t i = 0; i < N; ++i) crank[i] = static_cast<double>(a.constrained.ranks[i]);
  fv.set("corr_cf", stats::spearman(cv, crank), cv_constant);

  const auto ncv = minmax_scaled(cv);
  fv.set("piz_f", ideal_zone_share(minmax_scaled(crank), ncv));
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < M; ++m) {
    const double share = ideal_zone_share(minmax_scaled(column(s, m)), ncv);
    pmin = std::min(pmin, share);
    pmax = std::max(pmax, share);
  }
  fv.set("piz_ob_min", pmin);
  fv.set("piz_ob_max", pmax);

  PointSet ps;
  for (auto i : a.sets.cpo) ps.push_back(s.solutions[i].x);
  const auto psd = pairwise_distance_summary(ps);
  fv.set("ps_dist_max", psd.max, psd.degenerate);
  fv.set("ps_dist_mean", psd.mean, psd.degenerate);
  fv.set("ps_dist_iqr_mean", psd.iqr_mean, psd.degenerate);
  const auto pfd = pairwise_distance_summary(cpo_f);
  fv.set("pf_dist_max", pfd.max, pfd.degenerate);
  fv.set("pf_dist_mean", pfd.mean, pfd.degenerate);
  fv.set("pf_dist_iqr_mean", pfd.iqr_mean, pfd.degenerate);
  return fv;
}

FeatureVector mo_global(const SampleSet& sample) { return mo_global(SampleAnalysis(sample)); }
FeatureVector cv_global(const SampleSet& sample) { return cv_global(SampleAnalysis(sample)); }
FeatureVector mov_global(const SampleSet& sample) { return mov_global(SampleAnalysis(sample)); }

FeatureVector global_features(const SampleSet& sample) {
  const SampleAnalysis a(sample);
  FeatureVector all = mo_global(a);
  all.merge(cv_global(a));
  all.merge(mov_global(a));
  FeatureVector fv;
  for (auto name : global_feature_names()) {
    const auto* e = all.find(name);
    fv.set(name, e->value, e->degenerate);
  }
  return fv;
}

}  // namespace cmopla
