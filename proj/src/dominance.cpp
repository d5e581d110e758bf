#include "cmopla/dominance.hpp"

#include <cmath>

namespace cmopla {

Dominance pareto_compare(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("objective vectors differ in length");
  bool a_better = false;
  bool b_better = false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] < b[m]) {
      a_better = true;
    } else if (b[m] < a[m]) {
      b_better = true;
    }
    if (a_better && b_better) return Dominance::Incomparable;
  }
  if (a_better) return Dominance::FirstDominates;
  if (b_better) return Dominance::SecondDominates;
  return Dominance::Incomparable;
}

Dominance constrained_compare(const EvaluatedSolution& a, const EvaluatedSolution& b) {
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa && !fb) return Dominance::FirstDominates;
  if (fb && !fa) return Dominance::SecondDominates;
  if (!fa && std::abs(a.cv - b.cv) > kViolationTieTolerance) {
    return a.cv < b.cv ? Dominance::FirstDominates : Dominance::SecondDominates;
  }
  return pareto_compare(a.f, b.f);
}

Dominance compare(const EvaluatedSolution& a, const EvaluatedSolution& b, SortMode mode) {
  return mode == SortMode::Constrained ? constrained_compare(a, b) : pareto_compare(a.f, b.f);
}

std::vector<std::size_t> FrontAssignment::members(std::size_t rank) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == rank) out.push_back(i);
  }
  return out;
}

FrontAssignment nondominated_sort(std::span<const EvaluatedSolution> solutions, SortMode mode) {
  const std::size_t n = solutions.size();
  FrontAssignment out;
  out.ranks.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      switch (compare(solutions[i], solutions[j], mode)) {
        case Dominance::FirstDominates: ++dominators[j]; break;
        case Dominance::SecondDominates: ++dominators[i]; break;
        default: break;
      }
    }
  }

  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominators[i] == 0) front.push_back(i);
  }
  std::size_t assigned = 0;
  std::size_t rank = 0;
  while (assigned < n) {
    ++rank;
    if (front.empty()) {
      // Only reachable through a dominance cycle created by the violation
      // tie tolerance; the remainder becomes one front.
      for (std::size_t i = 0; i < n; ++i) {
        if (out.ranks[i] == 0) front.push_back(i);
      }
    }
    for (auto i : front) out.ranks[i] = rank;
    assigned += front.size();
    std::vector<std::size_t> next;
    for (auto p : front) {
      for (std::size_t q = 0; q < n; ++q) {
        if (out.ranks[q] != 0 || dominators[q] == 0) continue;
        if (compare(solutions[p], solutions[q], mode) == Dominance::FirstDominates && --dominators[q] == 0) {
          next.push_back(q);
        }
      }
    }
    front = std::move(next);
  }
  out.front_count = rank;
  return out;
}

ParetoSets extract_sets(const SampleSet& sample) {
  ParetoSets sets;
  sets.upo = nondominated_sort(sample.solutions, SortMode::Unconstrained).members(1);
  sets.cpo = nondominated_sort(sample.solutions, SortMode::Constrained).members(1);
  return sets;
}

}  // namespace cmopla
