#pragma once

#include <span>
#include <vector>

#include "cmopla/errors.hpp"

namespace cmopla::stats {

// Degenerate inputs (zero variance, too few points for a moment) give 0 and
// set `degenerate` where the result type carries it.

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
  double min = 0.0;
  double max = 0.0;
  double skewness = 0.0;  // adjusted Fisher-Pearson G1
  double kurtosis = 0.0;  // bias-adjusted excess G2
  bool degenerate = false;
};

Moments moments(std::span<const double> series);

double mean(std::span<const double> series);

/// Sample Pearson correlation; 0 if either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Fractional ranks (1-based, ties share the average rank).
std::vector<double> fractional_ranks(std::span<const double> values);

double spearman(std::span<const double> x, std::span<const double> y);

/// Lag-1 autocorrelation about the series mean; 0 for zero variance.
double lag1_autocorr(std::span<const double> series);

/// Quantile by linear interpolation between order statistics at
/// position p * (n - 1).
double quantile(std::span<const double> series, double p);

/// Q3 - Q1 under `quantile`.
double quartile_iqr(std::span<const double> series);

struct LinearModelDiag {
  double r2adj = 0.0;
  double coeff_range = 0.0;  // max |beta_i| - min |beta_i|, intercept excluded
  std::vector<double> beta;  // intercept first
  bool rank_deficient = false;
  bool degenerate = false;   // constant response
};

/// Ordinary least squares with intercept; `rows` are the regressors.
LinearModelDiag linear_model(const std::vector<std::vector<double>>& rows, std::span<const double> y);

/// Four-branch Yeo-Johnson transform of a single value.
double yeo_johnson(double x, double lambda);

/// Gaussian profile log-likelihood of the transformed data.
double yeo_johnson_log_likelihood(std::span<const double> x, double lambda);

struct YeoJohnsonFit {
  double lambda = 1.0;
  std::vector<double> transformed;  // standardized: mean 0, unit population variance
  bool degenerate = false;
};

/// Grid search for lambda over [-5, 5] in steps of 0.01, then standardize.
YeoJohnsonFit yeo_johnson_fit_transform(std::span<const double> series);

}  // namespace cmopla::stats
