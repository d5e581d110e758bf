#pragma once

#include <span>
#include <vector>

#include "cmopla/core.hpp"

namespace cmopla {

enum class Dominance { FirstDominates, SecondDominates, Incomparable };

enum class SortMode { Unconstrained, Constrained };

/// Two violation norms closer than this are treated as similar.
inline constexpr double kViolationTieTolerance = 1e-12;

/// Pareto dominance for minimization. Equal vectors are incomparable.
Dominance pareto_compare(std::span<const double> a, std::span<const double> b);

/// Constraint-domination: feasibility first, then smaller violation, then
/// Pareto dominance between solutions of similar violation.
Dominance constrained_compare(const EvaluatedSolution& a, const EvaluatedSolution& b);

Dominance compare(const EvaluatedSolution& a, const EvaluatedSolution& b, SortMode mode);

inline Dominance swapped(Dominance d) {
  switch (d) {
    case Dominance::FirstDominates: return Dominance::SecondDominates;
    case Dominance::SecondDominates: return Dominance::FirstDominates;
    default: return Dominance::Incomparable;
  }
}

struct FrontAssignment {
  std::vector<std::size_t> ranks;  // 1-based
  std::size_t front_count = 0;

  std::vector<std::size_t> members(std::size_t rank) const;
};

/// Front peeling by dominator counting; O(N^2) comparisons, O(N) memory.
FrontAssignment nondominated_sort(std::span<const EvaluatedSolution> solutions, SortMode mode);

/// Index sets of the unconstrained (upo) and constrained (cpo) first fronts.
struct ParetoSets {
  std::vector<std::size_t> upo;
  std::vector<std::size_t> cpo;
};

ParetoSets extract_sets(const SampleSet& sample);

}  // namespace cmopla
