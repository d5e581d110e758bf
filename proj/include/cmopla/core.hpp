#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cmopla/errors.hpp"

namespace cmopla {

/// Relaxation applied to equality constraints.
inline constexpr double kDefaultEpsilon = 1e-4;

/// Raw output of a problem evaluator. Constraints follow g <= 0 is satisfied.
struct Evaluation {
  std::vector<double> f;
  std::vector<double> g;
  std::vector<double> h;
};

using Evaluator = std::function<Evaluation(std::span<const double>)>;

/// Dimensions and box of a constrained multi-objective problem.
struct ProblemMeta {
  std::string name;
  std::size_t n = 0;  // decision variables
  std::size_t M = 0;  // objectives
  std::size_t J = 0;  // inequality constraints
  std::size_t K = 0;  // equality constraints
  std::vector<double> lower;
  std::vector<double> upper;

  /// Throws ArgumentError when the dimensions or box are invalid.
  void validate() const;
  bool unconstrained() const noexcept { return J + K == 0; }
  double range(std::size_t i) const { return upper[i] - lower[i]; }
};

/// A problem together with its (deterministic, re-entrant) evaluator.
struct ProblemSpec {
  ProblemMeta meta;
  Evaluator evaluator;
};

struct EvaluatedSolution {
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> g;
  std::vector<double> h;
  double cv = 0.0;

  bool feasible() const noexcept { return cv == 0.0; }
};

enum class SampleMethod { Uniform, WalkFlattened, ExternalFile };

struct SampleSet {
  ProblemMeta problem;
  std::vector<EvaluatedSolution> solutions;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::Uniform;

  std::size_t size() const noexcept { return solutions.size(); }
};

struct WalkStep {
  EvaluatedSolution current;
  std::vector<EvaluatedSolution> neighbors;
};

struct WalkTrace {
  ProblemMeta problem;
  std::vector<WalkStep> steps;
  std::size_t neighborhood_size = 0;  // N, counting the current solution
  double step_fraction = 0.0;
};

/// Euclidean norm of the positive parts of g and the epsilon-relaxed |h|.
/// Throws EvaluationError naming the first non-finite constraint.
double compute_violation(std::span<const double> g, std::span<const double> h,
                         double epsilon = kDefaultEpsilon);

EvaluatedSolution evaluate(const ProblemSpec& problem, std::span<const double> x);

/// Default uniform sample size: n * 1000.
std::size_t default_sample_size(const ProblemMeta& meta);

SampleSet uniform_sample(const ProblemSpec& problem, std::size_t count, std::uint64_t seed);

/// Walk parameters derived from the decision-space dimension.
struct WalkShape {
  std::size_t neighborhood_size;  // 2n + 1
  std::size_t length;             // floor(n / N * 1000), at least 2
};

WalkShape walk_shape(std::size_t n);

inline constexpr double kWalkStepFraction = 0.02;

WalkTrace random_walk(const ProblemSpec& problem, std::uint64_t seed);

/// Every current and neighbor of a walk as one flat sample.
SampleSet flatten(const WalkTrace& walk);

}  // namespace cmopla
