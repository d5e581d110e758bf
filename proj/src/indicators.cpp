#include "cmopla/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmopla {
namespace {

double hv2d(std::vector<std::pair<double, double>> pts, double rx, double ry) {
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double prev_y = ry;
  for (const auto& [x, y] : pts) {
    if (y < prev_y) {
      area += (rx - x) * (prev_y - y);
      prev_y = y;
    }
  }
  return area;
}

}  // namespace

NormalizationFrame NormalizationFrame::of(const PointSet& points) {
  NormalizationFrame frame;
  if (points.empty()) return frame;
  frame.fmin = points.front();
  frame.fmax = points.front();
  for (const auto& p : points) {
    for (std::size_t m = 0; m < p.size(); ++m) {
      frame.fmin[m] = std::min(frame.fmin[m], p[m]);
      frame.fmax[m] = std::max(frame.fmax[m], p[m]);
    }
  }
  return frame;
}

Point normalize(std::span<const double> v, const NormalizationFrame& frame) {
  if (v.size() != frame.fmin.size() || v.size() != frame.fmax.size()) {
    throw ShapeError("point and normalization frame differ in dimension");
  }
  Point out(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    const double span = frame.fmax[m] - frame.fmin[m];
    out[m] = span > 0.0 ? (v[m] - frame.fmin[m]) / span : 0.0;
  }
  return out;
}

PointSet normalize(const PointSet& points, const NormalizationFrame& frame) {
  PointSet out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normalize(p, frame));
  return out;
}

double hypervolume(const PointSet& front, const ReferencePoint& ref) {
  const std::size_t M = ref.r.size();
  if (M > 3) throw UnsupportedDimensionError("exact hypervolume supports M <= 3, got M = " + std::to_string(M));
  if (M < 2) throw UnsupportedDimensionError("hypervolume needs M >= 2");

  PointSet counted;
  for (const auto& p : front) {
    if (p.size() != M) throw ShapeError("front point dimension differs from reference point");
    bool dominates_ref = true;
    for (std::size_t m = 0; m < M; ++m) dominates_ref = dominates_ref && p[m] < ref.r[m];
    if (dominates_ref) counted.push_back(p);
  }
  if (counted.empty()) return 0.0;

  if (M == 2) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(counted.size());
    for (const auto& p : counted) pts.emplace_back(p[0], p[1]);
    return hv2d(std::move(pts), ref.r[0], ref.r[1]);
  }

  std::sort(counted.begin(), counted.end(), [](const Point& a, const Point& b) { return a[2] < b[2]; });
  double volume = 0.0;
  std::vector<std::pair<double, double>> slice;
  for (std::size_t i = 0; i < counted.size(); ++i) {
    slice.emplace_back(counted[i][0], counted[i][1]);
    const double next_z = i + 1 < counted.size() ? counted[i + 1][2] : ref.r[2];
    const double depth = next_z - counted[i][2];
    if (depth > 0.0) volume += depth * hv2d(slice, ref.r[0], ref.r[1]);
  }
  return volume;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::optional<double> generational_distance(const PointSet& A, const PointSet& B) {
  if (A.empty() || B.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& a : A) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : B) {
      double s = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m) {
        const double d = a[m] - b[m];
        s += d * d;
      }
      best = std::min(best, s);
      if (best == 0.0) break;
    }
    sum += best;
  }
  return std::sqrt(sum) / static_cast<double>(A.size());
}

std::optional<double> coverage(const PointSet& A, const PointSet& B) {
  if (B.empty()) return std::nullopt;
  std::size_t covered = 0;
  for (const auto& b : B) {
    for (const auto& a : A) {
      bool weakly = true;
      for (std::size_t m = 0; m < b.size() && weakly; ++m) weakly = a[m] <= b[m] + kCoverageTolerance;
      if (weakly) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(B.size());
}

}  // namespace cmopla
