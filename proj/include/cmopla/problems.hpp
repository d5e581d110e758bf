#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmopla/core.hpp"

namespace cmopla {

/// LIN-1: f = (x1, 1 - x1), g1 = 0.2 - x1 on [0,1]^n.
ProblemSpec make_lin1(std::size_t n = 2);

/// FREE-1: LIN-1 without its constraint.
ProblemSpec make_free1(std::size_t n = 2);

/// Binh and Korn's two-constraint problem on [0,5] x [0,3].
ProblemSpec make_bnh();

/// Names accepted by make_builtin.
std::vector<std::string> builtin_names();

/// Looks a built-in up by name; `n` is ignored for fixed-dimension problems.
std::optional<ProblemSpec> make_builtin(const std::string& name, std::size_t n = 2);

}  // namespace cmopla
