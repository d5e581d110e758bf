#include "cmopla/feature_vector.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cmopla {
namespace {

constexpr std::array<std::string_view, 43> kGlobalNames = {
    // multi-objective landscape
    "upo_n", "uhv", "corr_obj", "mean_f", "std_f", "max_f", "skew_f", "kurt_f", "kurt_avg", "kurt_min",
    "kurt_max", "kurt_rnge", "skew_avg", "skew_min", "skew_max", "skew_rnge", "f_mdl_r2", "f_range_coeff",
    // violation landscape
    "min_cv", "skew_cv", "kurt_cv", "cv_mdl_r2", "cv_range_coeff", "dist_c_corr",
    // multi-objective-violation landscape
    "fsr", "po_n", "hv", "cpo_upo_n", "hv_uhv_n", "GD_cpo_upo", "cover_cpo_upo", "corr_cobj_min",
    "corr_cobj_max", "corr_cf", "piz_ob_min", "piz_ob_max", "piz_f", "ps_dist_max", "ps_dist_mean",
    "ps_dist_iqr_mean", "pf_dist_max", "pf_dist_mean", "pf_dist_iqr_mean"};

constexpr std::array<std::string_view, 37> kWalkNames = {
    "dist_f_avg_rws", "dist_f_r1_rws", "dist_f_dist_x_avg_rws", "dist_f_dist_x_avg_r1", "nuhv_avg_rws",
    "nuhv_r1_rws",
    "dist_c_avg_rws", "dist_c_r1_rws", "dist_c_dist_x_avg_rws", "dist_c_dist_x_r1_rws", "ncv_avg_rws",
    "ncv_r1_rws", "nncv_avg_rws", "nncv_r1_rws", "bncv_avg_rws", "bncv_r1_rws",
    "sup_avg_rws", "sup_r1_rws", "inf_avg_rws", "inf_r1_rws", "inc_avg_rws", "inc_r1_rws", "lnd_avg_rws",
    "lnd_r1_rws", "dist_x_avg_rws", "dist_x_r1_rws", "dist_f_c_avg_rws", "dist_f_c_r1_rws",
    "dist_f_c_dist_x_avg_rws", "dist_f_c_dist_x_avg_r1", "nhv_avg_rws", "nhv_r1_rws", "bhv_avg_rws",
    "bhv_r1_rws", "nfronts_avg_rws", "nfronts_r1_rws", "rfbx_rws_avg"};

}  // namespace

void FeatureVector::set(std::string_view name, double value, bool degenerate) {
  if (!std::isfinite(value)) {
    value = 0.0;
    degenerate = true;
  }
  for (auto& e : entries_) {
    if (e.name == name) {
      e.value = value;
      e.degenerate = degenerate;
      return;
    }
  }
  entries_.push_back({std::string(name), value, degenerate});
}

const FeatureEntry* FeatureVector::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

double FeatureVector::value(std::string_view name) const {
  if (const auto* e = find(name)) return e->value;
  throw std::out_of_range("unknown feature " + std::string(name));
}

bool FeatureVector::degenerate(std::string_view name) const {
  if (const auto* e = find(name)) return e->degenerate;
  throw std::out_of_range("unknown feature " + std::string(name));
}

std::vector<std::string> FeatureVector::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

void FeatureVector::merge(const FeatureVector& other) {
  for (const auto& e : other.entries_) set(e.name, e.value, e.degenerate);
}

std::span<const std::string_view> global_feature_names() { return kGlobalNames; }
std::span<const std::string_view> walk_feature_names() { return kWalkNames; }

std::vector<std::string> all_feature_names() {
  std::vector<std::string> out(kGlobalNames.begin(), kGlobalNames.end());
  out.insert(out.end(), kWalkNames.begin(), kWalkNames.end());
  return out;
}

}  // namespace cmopla
