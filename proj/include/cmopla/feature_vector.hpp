#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmopla {

/// One named feature value. `degenerate` marks values substituted by 0
/// because the statistic was undefined on the data.
struct FeatureEntry {
  std::string name;
  double value = 0.0;
  bool degenerate = false;
};

/// Insertion-ordered named feature values.
class FeatureVector {
 public:
  void set(std::string_view name, double value, bool degenerate = false);
  void set_missing(std::string_view name) { set(name, 0.0, true); }

  bool contains(std::string_view name) const { return find(name) != nullptr; }
  /// Throws std::out_of_range for unknown names.
  double value(std::string_view name) const;
  bool degenerate(std::string_view name) const;
  const FeatureEntry* find(std::string_view name) const;

  std::span<const FeatureEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> names() const;

  /// Appends (or overwrites) every entry of `other`.
  void merge(const FeatureVector& other);

 private:
  std::vector<FeatureEntry> entries_;
};

/// Global-sample feature names in output order.
std::span<const std::string_view> global_feature_names();
/// Random-walk feature names in output order.
std::span<const std::string_view> walk_feature_names();
/// Global then walk names; the feature CSV column order.
std::vector<std::string> all_feature_names();

}  // namespace cmopla
