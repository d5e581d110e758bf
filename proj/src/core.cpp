#include "cmopla/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cmopla {
namespace {

// Bit-reproducible uniform draw in [0, 1); std distributions are
// implementation-defined.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_draw(rng);
}

double reflect(double v, double lo, double hi) {
  // Steps are at most 2% of the range, so a single reflection suffices.
  if (v > hi) v = hi - (v - hi);
  if (v < lo) v = lo + (lo - v);
  return std::clamp(v, lo, hi);
}

void check_arity(const char* what, std::size_t got, std::size_t expected) {
  if (got != expected) {
    std::ostringstream os;
    os << "evaluator returned " << got << " " << what << " values, expected " << expected;
    throw ShapeError(os.str());
  }
}

void check_finite(const char* what, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "non-finite " << what << "[" << i + 1 << "]";
      throw EvaluationError(os.str());
    }
  }
}

}  // namespace

void ProblemMeta::validate() const {
  std::ostringstream os;
  if (n < 1) os << "n must be >= 1; ";
  if (M < 2) os << "M must be >= 2; ";
  if (lower.size() != n || upper.size() != n) {
    os << "bounds must have n entries; ";
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lower[i] < upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
        os << "lower[" << i + 1 << "] < upper[" << i + 1 << "] violated; ";
      }
    }
  }
  const auto msg = os.str();
  if (!msg.empty()) throw ArgumentError("problem '" + name + "': " + msg.substr(0, msg.size() - 2));
}

double compute_violation(std::span<const double> g, std::span<const double> h, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be >= 0");
  check_finite("g", g);
  check_finite("h", h);
  double sum = 0.0;
  for (double gj : g) {
    const double v = std::max(0.0, gj);
    sum += v * v;
  }
  for (double hk : h) {
    const double v = std::max(0.0, std::abs(hk) - epsilon);
    sum += v * v;
  }
  return std::sqrt(sum);
}

EvaluatedSolution evaluate(const ProblemSpec& problem, std::span<const double> x) {
  const auto& meta = problem.meta;
  if (x.size() != meta.n) {
    throw ShapeError("decision vector has " + std::to_string(x.size()) + " entries, expected " +
                     std::to_string(meta.n));
  }
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < meta.n; ++i) {
    if (!(x[i] >= meta.lower[i] && x[i] <= meta.upper[i])) outside.push_back(i);
  }
  if (!outside.empty()) {
    std::ostringstream os;
    os << "decision vector out of bounds at indices";
    for (auto i : outside) os << " " << i + 1;
    throw BoundsError(os.str(), std::move(outside));
  }
  if (!problem.evaluator) throw ArgumentError("problem '" + meta.name + "' has no evaluator");

  Evaluation e = problem.evaluator(x);
  check_arity("objective", e.f.size(), meta.M);
  check_arity("inequality", e.g.size(), meta.J);
  check_arity("equality", e.h.size(), meta.K);
  check_finite("f", e.f);

  EvaluatedSolution s;
  s.x.assign(x.begin(), x.end());
  s.cv = compute_violation(e.g, e.h);
  s.f = std::move(e.f);
  s.g = std::move(e.g);
  s.h = std::move(e.h);
  return s;
}

std::size_t default_sample_size(const ProblemMeta& meta) { return meta.n * 1000; }

SampleSet uniform_sample(const ProblemSpec& problem, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw ArgumentError("sample count must be >= 1");
  problem.meta.validate();
  std::mt19937_64 rng(seed);
  SampleSet set;
  set.problem = problem.meta;
  set.seed = seed;
  set.method = SampleMethod::Uniform;
  set.solutions.reserve(count);
  std::vector<double> x(problem.meta.n);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = uniform_in(rng, problem.meta.lower[i], problem.meta.upper[i]);
    }
    set.solutions.push_back(evaluate(problem, x));
  }
  return set;
}

WalkShape walk_shape(std::size_t n) {
  const std::size_t N = 2 * n + 1;
  const std::size_t length = std::max<std::size_t>(2, (n * 1000) / N);
  return {N, length};
}

WalkTrace random_walk(const ProblemSpec& problem, std::uint64_t seed) {
  const auto& meta = problem.meta;
  meta.validate();
  const auto shape = walk_shape(meta.n);
  std::mt19937_64 rng(seed);

  std::vector<double> step(meta.n);
  for (std::size_t i = 0; i < meta.n; ++i) step[i] = kWalkStepFraction * meta.range(i);

  WalkTrace walk;
  walk.problem = meta;
  walk.neighborhood_size = shape.neighborhood_size;
  walk.step_fraction = kWalkStepFraction;
  walk.steps.reserve(shape.length);

  std::vector<double> current(meta.n);
  for (std::size_t i = 0; i < meta.n; ++i) current[i] = uniform_in(rng, meta.lower[i], meta.upper[i]);

  std::vector<double> probe(meta.n);
  for (std::size_t t = 0; t < shape.length; ++t) {
    if (t > 0) {
      for (std::size_t i = 0; i < meta.n; ++i) {
        current[i] = reflect(current[i] + uniform_in(rng, -step[i], step[i]), meta.lower[i], meta.upper[i]);
      }
    }
    WalkStep ws;
    ws.current = evaluate(problem, current);
    ws.neighbors.reserve(shape.neighborhood_size - 1);
    for (std::size_t k = 0; k + 1 < shape.neighborhood_size; ++k) {
      for (std::size_t i = 0; i < meta.n; ++i) {
        probe[i] = std::clamp(uniform_in(rng, current[i] - step[i], current[i] + step[i]),
                              meta.lower[i], meta.upper[i]);
      }
      ws.neighbors.push_back(evaluate(problem, probe));
    }
    walk.steps.push_back(std::move(ws));
  }
  return walk;
}

SampleSet flatten(const WalkTrace& walk) {
  SampleSet set;
  set.problem = walk.problem;
  set.method = SampleMethod::WalkFlattened;
  for (const auto& step : walk.steps) {
    set.solutions.push_back(step.current);
    set.solutions.insert(set.solutions.end(), step.neighbors.begin(), step.neighbors.end());
  }
  return set;
}

}  // namespace cmopla
