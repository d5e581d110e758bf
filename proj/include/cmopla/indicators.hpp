#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cmopla/errors.hpp"

namespace cmopla {

using Point = std::vector<double>;
using PointSet = std::vector<Point>;

/// Per-coordinate min/max used to map objectives into [0, 1].
struct NormalizationFrame {
  std::vector<double> fmin;
  std::vector<double> fmax;

  /// Frame spanning every point of `points`; empty input gives an empty frame.
  static NormalizationFrame of(const PointSet& points);
};

/// (v - fmin) / (fmax - fmin) per coordinate; degenerate coordinates map to 0.
Point normalize(std::span<const double> v, const NormalizationFrame& frame);
PointSet normalize(const PointSet& points, const NormalizationFrame& frame);

inline constexpr double kDefaultReference = 1.1;

struct ReferencePoint {
  Point r;
  static ReferencePoint uniform(std::size_t M, double value = kDefaultReference) {
    return {Point(M, value)};
  }
};

/// Exact hypervolume for M = 2 (sweep) and M = 3 (z-slicing). Points that do
/// not strictly dominate the reference are ignored. Throws
/// UnsupportedDimensionError for M > 3.
double hypervolume(const PointSet& front, const ReferencePoint& ref);

/// sqrt(sum over A of squared nearest distance to B) / |A|; nullopt if
/// either set is empty.
std::optional<double> generational_distance(const PointSet& A, const PointSet& B);

/// Tolerance for "equal" coordinates in coverage.
inline constexpr double kCoverageTolerance = 1e-12;

/// Fraction of B weakly dominated by some point of A; nullopt if B is empty.
std::optional<double> coverage(const PointSet& A, const PointSet& B);

double euclidean(std::span<const double> a, std::span<const double> b);

}  // namespace cmopla
