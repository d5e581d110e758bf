#include "cmopla/problems.hpp"

namespace cmopla {
namespace {

ProblemMeta box_meta(std::string name, std::size_t n, std::size_t J, double lo, double hi) {
  ProblemMeta m;
  m.name = std::move(name);
  m.n = n;
  m.M = 2;
  m.J = J;
  m.K = 0;
  m.lower.assign(n, lo);
  m.upper.assign(n, hi);
  return m;
}

}  // namespace

ProblemSpec make_lin1(std::size_t n) {
  ProblemSpec p{box_meta("LIN-1", n, 1, 0.0, 1.0), {}};
  p.evaluator = [](std::span<const double> x) {
    return Evaluation{{x[0], 1.0 - x[0]}, {0.2 - x[0]}, {}};
  };
  p.meta.validate();
  return p;
}

ProblemSpec make_free1(std::size_t n) {
  ProblemSpec p{box_meta("FREE-1", n, 0, 0.0, 1.0), {}};
  p.evaluator = [](std::span<const double> x) { return Evaluation{{x[0], 1.0 - x[0]}, {}, {}}; };
  p.meta.validate();
  return p;
}

ProblemSpec make_bnh() {
  ProblemSpec p{box_meta("BNH", 2, 2, 0.0, 5.0), {}};
  p.meta.upper[1] = 3.0;
  p.evaluator = [](std::span<const double> x) {
    const double a = x[0], b = x[1];
    Evaluation e;
    e.f = {4.0 * a * a + 4.0 * b * b, (a - 5.0) * (a - 5.0) + (b - 5.0) * (b - 5.0)};
    e.g = {(a - 5.0) * (a - 5.0) + b * b - 25.0, 7.7 - (a - 8.0) * (a - 8.0) - (b + 3.0) * (b + 3.0)};
    return e;
  };
  p.meta.validate();
  return p;
}

std::vector<std::string> builtin_names() { return {"BNH", "FREE-1", "LIN-1"}; }

std::optional<ProblemSpec> make_builtin(const std::string& name, std::size_t n) {
  if (name == "LIN-1") return make_lin1(n);
  if (name == "FREE-1") return make_free1(n);
  if (name == "BNH") return make_bnh();
  return std::nullopt;
}

}  // namespace cmopla
