#include "cmopla/features_walk.hpp"

#include <algorithm>
#include <string>

#include "cmopla/dominance.hpp"
#include "cmopla/indicators.hpp"
#include "cmopla/stats.hpp"

namespace cmopla {
namespace {

struct WalkFrames {
  NormalizationFrame objectives;
  double cv_min = 0.0;
  double cv_max = 0.0;

  double scaled_cv(double cv) const { return cv_max > cv_min ? (cv - cv_min) / (cv_max - cv_min) : 0.0; }
};

WalkFrames walk_frames(const WalkTrace& walk) {
  PointSet all;
  WalkFrames frames;
  bool first = true;
  auto visit = [&](const EvaluatedSolution& s) {
    all.push_back(s.f);
    if (first) {
      frames.cv_min = frames.cv_max = s.cv;
      first = false;
    }
    frames.cv_min = std::min(frames.cv_min, s.cv);
    frames.cv_max = std::max(frames.cv_max, s.cv);
  };
  for (const auto& step : walk.steps) {
    visit(step.current);
    for (const auto& nb : step.neighbors) visit(nb);
  }
  frames.objectives = NormalizationFrame::of(all);
  return frames;
}

void add_average(FeatureVector& fv, const std::string& name, const std::vector<double>& series) {
  if (series.empty()) {
    fv.set_missing(name);
  } else {
    fv.set(name, stats::mean(series));
  }
}

void add_autocorr(FeatureVector& fv, const std::string& name, const std::vector<double>& series) {
  if (series.size() < 3) {
    fv.set_missing(name);
    return;
  }
  const bool flat = std::all_of(series.begin(), series.end(), [&](double v) { return v == series.front(); });
  fv.set(name, stats::lag1_autocorr(series), flat);
}

void add_ratio(FeatureVector& fv, const std::string& avg_name, const std::string& r1_name,
               const std::vector<double>& numer, const std::vector<double>& dist_x) {
  std::vector<double> ratio;
  for (std::size_t t = 0; t < numer.size(); ++t) {
    if (dist_x[t] > 0.0) ratio.push_back(numer[t] / dist_x[t]);
  }
  if (ratio.empty()) {
    fv.set_missing(avg_name);
    fv.set_missing(r1_name);
    return;
  }
  fv.set(avg_name, stats::mean(ratio), ratio.size() < numer.size());
  add_autocorr(fv, r1_name, ratio);
}

}  // namespace

StepSeries step_series(const WalkTrace& walk) {
  if (walk.steps.size() < 3) throw ArgumentError("walk needs at least 3 steps");
  const WalkFrames frames = walk_frames(walk);
  const std::size_t M = walk.problem.M;
  const auto ref = ReferencePoint::uniform(M);

  StepSeries out;
  for (const auto& step : walk.steps) {
    const auto& c = step.current;
    const auto& nbrs = step.neighbors;
    if (nbrs.empty()) throw ArgumentError("walk step without neighbors");
    const double k = static_cast<double>(nbrs.size());

    const Point fc = normalize(c.f, frames.objectives);
    const double cc = frames.scaled_cv(c.cv);
    double dx = 0.0, df = 0.0, dc = 0.0, dfc = 0.0;
    std::size_t sup = 0, inf = 0;
    for (const auto& b : nbrs) {
      const Point fb = normalize(b.f, frames.objectives);
      dx += euclidean(b.x, c.x);
      df += euclidean(fb, fc);
      dc += std::abs(b.cv - c.cv);
      Point jb = fb, jc = fc;
      jb.push_back(frames.scaled_cv(b.cv));
      jc.push_back(cc);
      dfc += euclidean(jb, jc);
      switch (constrained_compare(b, c)) {
        case Dominance::FirstDominates: ++sup; break;
        case Dominance::SecondDominates: ++inf; break;
        default: break;
      }
    }
    out.dist_x.push_back(dx / k);
    out.dist_f.push_back(df / k);
    out.dist_c.push_back(dc / k);
    out.dist_f_c.push_back(dfc / k);
    out.sup.push_back(static_cast<double>(sup) / k);
    out.inf.push_back(static_cast<double>(inf) / k);
    out.inc.push_back(static_cast<double>(nbrs.size() - sup - inf) / k);

    std::vector<EvaluatedSolution> hood;
    hood.reserve(nbrs.size() + 1);
    hood.push_back(c);
    hood.insert(hood.end(), nbrs.begin(), nbrs.end());
    const double hood_size = static_cast<double>(hood.size());

    const auto cons = nondominated_sort(hood, SortMode::Constrained);
    const auto uncons = nondominated_sort(hood, SortMode::Unconstrained);

    double cv_sum = 0.0, best_cv_sum = 0.0;
    std::size_t best = 0;
    PointSet uncons_front, cons_front, feasible_set;
    for (std::size_t i = 0; i < hood.size(); ++i) {
      cv_sum += hood[i].cv;
      const Point fi = normalize(hood[i].f, frames.objectives);
      if (cons.ranks[i] == 1) {
        best_cv_sum += hood[i].cv;
        ++best;
        cons_front.push_back(fi);
      }
      if (uncons.ranks[i] == 1) uncons_front.push_back(fi);
      if (hood[i].feasible()) feasible_set.push_back(fi);
    }
    out.ncv.push_back(c.cv);
    out.nncv.push_back(cv_sum / hood_size);
    out.bncv.push_back(best_cv_sum / static_cast<double>(best));
    out.lnd.push_back(static_cast<double>(best) / hood_size);
    out.nfronts.push_back(static_cast<double>(cons.front_count));
    out.nuhv.push_back(hypervolume(uncons_front, ref));
    out.nhv.push_back(feasible_set.empty() ? 0.0 : hypervolume(feasible_set, ref));
    out.bhv.push_back(hypervolume(cons_front, ref));
    out.feasible.push_back(c.feasible());
  }
  return out;
}

double boundary_crossing_ratio(const std::vector<bool>& feasible) {
  if (feasible.size() < 2) throw ArgumentError("boundary crossing ratio needs at least 2 steps");
  std::size_t crossings = 0;
  for (std::size_t t = 0; t + 1 < feasible.size(); ++t) {
    if (feasible[t] != feasible[t + 1]) ++crossings;
  }
  return static_cast<double>(crossings) / static_cast<double>(feasible.size() - 1);
}

FeatureVector walk_features(const StepSeries& s) {
  if (s.length() < 3) throw ArgumentError("walk needs at least 3 steps");
  FeatureVector fv;
  auto both = [&](const std::string& stem, const std::vector<double>& series) {
    add_average(fv, stem + "_avg_rws", series);
    add_autocorr(fv, stem + "_r1_rws", series);
  };

  both("dist_f", s.dist_f);
  add_ratio(fv, "dist_f_dist_x_avg_rws", "dist_f_dist_x_avg_r1", s.dist_f, s.dist_x);
  both("nuhv", s.nuhv);

  both("dist_c", s.dist_c);
  add_ratio(fv, "dist_c_dist_x_avg_rws", "dist_c_dist_x_r1_rws", s.dist_c, s.dist_x);
  both("ncv", s.ncv);
  both("nncv", s.nncv);
  both("bncv", s.bncv);

  both("sup", s.sup);
  both("inf", s.inf);
  both("inc", s.inc);
  both("lnd", s.lnd);
  both("dist_x", s.dist_x);
  both("dist_f_c", s.dist_f_c);
  add_ratio(fv, "dist_f_c_dist_x_avg_rws", "dist_f_c_dist_x_avg_r1", s.dist_f_c, s.dist_x);
  both("nhv", s.nhv);
  both("bhv", s.bhv);
  both("nfronts", s.nfronts);
  fv.set("rfbx_rws_avg", boundary_crossing_ratio(s.feasible));

  return fv;
}

FeatureVector walk_features(const WalkTrace& walk) { return walk_features(step_series(walk)); }

}  // namespace cmopla
