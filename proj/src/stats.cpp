#include "cmopla/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace cmopla::stats {
namespace {

// Sum of squared deviations small enough to be rounding residue of a
// constant series.
bool negligible(double ss, std::span<const double> values) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return ss <= 1e-28 * scale * scale * static_cast<double>(values.size());
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("series lengths differ");
  if (x.size() < 2) throw ArgumentError("correlation needs at least 2 points");
}

}  // namespace

double mean(std::span<const double> series) {
  if (series.empty()) throw ArgumentError("mean of an empty series");
  return std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
}

Moments moments(std::span<const double> series) {
  if (series.empty()) throw ArgumentError("moments of an empty series");
  Moments out;
  const double n = static_cast<double>(series.size());
  out.mean = mean(series);
  auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  out.min = *lo;
  out.max = *hi;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : series) {
    const double d = v - out.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  out.std = series.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (negligible(m2, series)) {
    out.std = 0.0;
    out.degenerate = true;
    return out;
  }
  if (series.size() >= 3) {
    const double g1 = m3 / std::pow(m2, 1.5);
    out.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  } else {
    out.degenerate = true;
  }
  if (series.size() >= 4) {
    const double g2 = m4 / (m2 * m2) - 3.0;
    out.kurtosis = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
  } else {
    out.degenerate = true;
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (negligible(sxx, x) || negligible(syy, y)) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

double lag1_autocorr(std::span<const double> series) {
  if (series.size() < 3) throw ArgumentError("lag-1 autocorrelation needs at least 3 points");
  const double m = mean(series);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double d = series[t] - m;
    den += d * d;
    if (t + 1 < series.size()) num += d * (series[t + 1] - m);
  }
  if (negligible(den, series)) return 0.0;
  return std::clamp(num / den, -1.0, 1.0);
}

double quantile(std::span<const double> series, double p) {
  if (series.empty()) throw ArgumentError("quantile of an empty series");
  std::vector<double> v(series.begin(), series.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(v.begin(), v.begin() + lo, v.end());
  const double a = v[lo];
  if (frac == 0.0 || lo + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + lo + 1, v.end());
  return a + frac * (b - a);
}

double quartile_iqr(std::span<const double> series) {
  return std::max(0.0, quantile(series, 0.75) - quantile(series, 0.25));
}

LinearModelDiag linear_model(const std::vector<std::vector<double>>& rows, std::span<const double> y) {
  if (rows.size() != y.size()) throw ShapeError("design rows and response differ in length");
  if (rows.empty()) throw ArgumentError("linear model needs data");
  const std::size_t p = rows.front().size();
  const std::size_t N = rows.size();
  if (N < p + 2) throw ArgumentError("linear model needs at least n + 2 rows");

  Eigen::MatrixXd X(N, p + 1);
  Eigen::VectorXd Y(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (rows[i].size() != p) throw ShapeError("ragged design matrix");
    X(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) X(i, j + 1) = rows[i][j];
    Y(i) = y[i];
  }

  LinearModelDiag out;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
  const Eigen::VectorXd beta = cod.solve(Y);
  out.rank_deficient = cod.rank() < static_cast<Eigen::Index>(p + 1);
  out.beta.assign(beta.data(), beta.data() + beta.size());

  if (p > 0) {
    const auto abs_beta = beta.tail(p).cwiseAbs();
    out.coeff_range = abs_beta.maxCoeff() - abs_beta.minCoeff();
  }

  const double ybar = Y.mean();
  const double ss_tot = (Y.array() - ybar).square().sum();
  const double ss_res = (Y - X * beta).squaredNorm();
  if (ss_tot <= 0.0) {
    out.degenerate = true;
    out.r2adj = 0.0;
    return out;
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  const double n = static_cast<double>(N);
  out.r2adj = std::min(1.0, 1.0 - (1.0 - r2) * (n - 1.0) / (n - static_cast<double>(p) - 1.0));
  return out;
}

double yeo_johnson(double x, double lambda) {
  if (lambda == 1.0) return x;
  constexpr double eps = 1e-12;
  if (x >= 0.0) {
    if (std::abs(lambda) < eps) return std::log1p(x);
    return (std::pow(x + 1.0, lambda) - 1.0) / lambda;
  }
  if (std::abs(lambda - 2.0) < eps) return -std::log1p(-x);
  return -(std::pow(1.0 - x, 2.0 - lambda) - 1.0) / (2.0 - lambda);
}

double yeo_johnson_log_likelihood(std::span<const double> x, double lambda) {
  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  double jacobian = 0.0;
  std::vector<double> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    t[i] = yeo_johnson(x[i], lambda);
    sum += t[i];
    jacobian += std::copysign(std::log1p(std::abs(x[i])), x[i]);
  }
  const double m = sum / n;
  double var = 0.0;
  for (double v : t) var += (v - m) * (v - m);
  var /= n;
  if (!std::isfinite(var) || var <= 0.0) return -std::numeric_limits<double>::infinity();
  return -0.5 * n * std::log(var) + (lambda - 1.0) * jacobian;
}

YeoJohnsonFit yeo_johnson_fit_transform(std::span<const double> series) {
  if (series.size() < 3) throw ArgumentError("Yeo-Johnson fit needs at least 3 points");
  YeoJohnsonFit fit;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  if (*lo == *hi) {
    fit.lambda = 1.0;
    fit.transformed.assign(series.size(), 0.0);
    fit.degenerate = true;
    return fit;
  }

  double best = -std::numeric_limits<double>::infinity();
  for (int k = -500; k <= 500; ++k) {
    const double lambda = static_cast<double>(k) / 100.0;
    const double ll = yeo_johnson_log_likelihood(series, lambda);
    if (ll > best) {
      best = ll;
      fit.lambda = lambda;
    }
  }

  fit.transformed.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) fit.transformed[i] = yeo_johnson(series[i], fit.lambda);
  const double m = mean(fit.transformed);
  double var = 0.0;
  for (double v : fit.transformed) var += (v - m) * (v - m);
  const double sd = std::sqrt(var / static_cast<double>(series.size()));
  for (double& v : fit.transformed) v = sd > 0.0 ? (v - m) / sd : 0.0;
  if (!(sd > 0.0)) fit.degenerate = true;
  return fit;
}

}  // namespace cmopla::stats
