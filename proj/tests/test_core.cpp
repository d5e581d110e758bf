#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "cmopla/core.hpp"
#include "cmopla/problems.hpp"
#include "cmopla/sample_io.hpp"

using namespace cmopla;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "cmopla_test_core";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
}

ProblemMeta lin1_meta() { return make_lin1(2).meta; }

}  // namespace

TEST_CASE("violation examples") {
  CHECK(compute_violation(std::vector<double>{-1.0, 2.0}, {}) == 2.0);
  CHECK(compute_violation(std::vector<double>{3.0, 4.0}, {}) == 5.0);
  CHECK(compute_violation({}, std::vector<double>{1e-5}, 1e-4) == 0.0);
  CHECK(compute_violation({}, std::vector<double>{1e-5}) == 0.0);
  CHECK(kDefaultEpsilon == 1e-4);
  CHECK(compute_violation({}, std::vector<double>{-0.5}, 0.0) == doctest::Approx(0.5));
  CHECK(compute_violation({}, {}) == 0.0);
}

TEST_CASE("violation rejects non-finite constraints") {
  CHECK_THROWS_AS(compute_violation(std::vector<double>{NAN}, {}), EvaluationError);
  CHECK_THROWS_AS(compute_violation({}, std::vector<double>{INFINITY}), EvaluationError);
}

TEST_CASE("violation is monotone in each active term") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> g{u(rng), u(rng), u(rng)};
    std::vector<double> h{u(rng), u(rng)};
    const double base = compute_violation(g, h);
    auto g2 = g;
    g2[trial % 3] += std::abs(u(rng));
    CHECK(compute_violation(g2, h) >= base);
    auto h2 = h;
    h2[trial % 2] += std::copysign(std::abs(u(rng)), h2[trial % 2]);
    CHECK(compute_violation(g, h2) >= base);
  }
}

TEST_CASE("evaluate built-in problems") {
  const auto lin = make_lin1(3);
  auto s = evaluate(lin, std::vector<double>{0.5, 0.1, 0.9});
  CHECK(s.f == std::vector<double>{0.5, 0.5});
  CHECK(s.g[0] == doctest::Approx(-0.3));
  CHECK(s.cv == 0.0);
  CHECK(s.feasible());

  s = evaluate(lin, std::vector<double>{0.1, 0.0, 0.0});
  CHECK(s.f[0] == doctest::Approx(0.1));
  CHECK(s.f[1] == doctest::Approx(0.9));
  CHECK(s.g[0] == doctest::Approx(0.1));
  CHECK(s.cv == doctest::Approx(0.1));

  s = evaluate(make_bnh(), std::vector<double>{0.0, 0.0});
  CHECK(s.f == std::vector<double>{0.0, 50.0});
  CHECK(s.cv == 0.0);

  const auto free1 = make_free1(2);
  CHECK(free1.meta.unconstrained());
  CHECK(evaluate(free1, std::vector<double>{0.0, 0.0}).cv == 0.0);
}

TEST_CASE("evaluate reports bounds and arity problems") {
  const auto lin = make_lin1(3);
  try {
    evaluate(lin, std::vector<double>{0.5, 1.5, -0.1});
    FAIL("expected BoundsError");
  } catch (const BoundsError& e) {
    CHECK(e.indices() == std::vector<std::size_t>{1, 2});
    CHECK(std::string(e.what()).find("indices 2 3") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate(lin, std::vector<double>{0.5}), ShapeError);

  ProblemSpec bad = lin;
  bad.evaluator = [](std::span<const double>) { return Evaluation{{1.0}, {0.0}, {}}; };
  CHECK_THROWS_AS(evaluate(bad, std::vector<double>{0.5, 0.5, 0.5}), ShapeError);
}

TEST_CASE("built-in lookup") {
  CHECK(make_builtin("LIN-1", 4)->meta.n == 4);
  CHECK(make_builtin("BNH", 7)->meta.n == 2);
  CHECK_FALSE(make_builtin("ZDT-9").has_value());
  CHECK(builtin_names().size() == 3);
}

TEST_CASE("uniform sampling") {
  const auto lin = make_lin1(2);
  const auto a = uniform_sample(lin, 2000, 7);
  CHECK(a.size() == 2000);
  for (const auto& s : a.solutions) {
    for (double x : s.x) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }
  const auto b = uniform_sample(lin, 2000, 7);
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) identical = identical && a.solutions[i].x == b.solutions[i].x;
  CHECK(identical);
  CHECK(uniform_sample(lin, 5, 8).solutions[0].x != a.solutions[0].x);
  CHECK_THROWS_AS(uniform_sample(lin, 0, 1), ArgumentError);

  const auto big = uniform_sample(lin, 10000, 1);
  std::size_t feasible = 0;
  for (const auto& s : big.solutions) feasible += s.feasible() ? 1 : 0;
  CHECK(std::abs(static_cast<double>(feasible) / 10000.0 - 0.8) <= 0.02);
  CHECK(default_sample_size(lin.meta) == 2000);
}

TEST_CASE("walk shape and protocol") {
  CHECK(walk_shape(5).neighborhood_size == 11);
  CHECK(walk_shape(5).length == 454);
  CHECK(walk_shape(2).neighborhood_size == 5);
  CHECK(walk_shape(2).length == 400);
  CHECK(walk_shape(1).length == 333);

  const auto bnh = make_bnh();
  const auto walk = random_walk(bnh, 11);
  REQUIRE(walk.steps.size() == 400);
  for (std::size_t t = 0; t < walk.steps.size(); ++t) {
    const auto& step = walk.steps[t];
    CHECK(step.neighbors.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
      const double limit = 0.02 * bnh.meta.range(i) + 1e-12;
      if (t > 0) CHECK(std::abs(step.current.x[i] - walk.steps[t - 1].current.x[i]) <= limit);
      for (const auto& nb : step.neighbors) {
        CHECK(std::abs(nb.x[i] - step.current.x[i]) <= limit);
        CHECK(nb.x[i] >= bnh.meta.lower[i]);
        CHECK(nb.x[i] <= bnh.meta.upper[i]);
      }
    }
  }
  const auto again = random_walk(bnh, 11);
  CHECK(again.steps.back().current.x == walk.steps.back().current.x);
  CHECK(flatten(walk).size() == 400 * 5);
}

TEST_CASE("sample file round trip") {
  const auto lin = make_lin1(2);
  const auto sample = uniform_sample(lin, 3, 5);
  const auto path = scratch("three.csv");
  write_sample_file(path, sample);
  const auto back = load_sample_file(path, lin.meta);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.solutions[i].x == sample.solutions[i].x);
    CHECK(back.solutions[i].cv == sample.solutions[i].cv);
  }
}

TEST_CASE("sample file errors") {
  const auto meta = lin1_meta();
  const auto wrong_f = scratch("wrong_f.csv");
  write_text(wrong_f, "x1,x2,f1,g1\n0.5,0.5,0.5,-0.3\n");
  try {
    load_sample_file(wrong_f, meta);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }

  const auto nan_row = scratch("nan.csv");
  write_text(nan_row, "x1,x2,f1,f2,g1\n0.5,0.5,0.5,0.5,-0.3\n0.5,nan,0.5,0.5,-0.3\n");
  try {
    load_sample_file(nan_row, meta);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
  }

  const auto bad_cv = scratch("bad_cv.csv");
  write_text(bad_cv, "x1,x2,f1,f2,g1,cv\n0.1,0.5,0.1,0.9,0.1,0.7\n");
  Diagnostics diag;
  const auto s = load_sample_file(bad_cv, meta, &diag);
  CHECK(s.solutions[0].cv == doctest::Approx(0.1));
  CHECK(diag.warnings.size() == 1);
}

TEST_CASE("problem metadata JSON") {
  const auto meta = parse_problem_meta(R"({"name":"P","n":2,"M":2,"J":1,"K":0,"lower":[0,0],"upper":[1,1]})");
  CHECK(meta.name == "P");
  CHECK(meta.J == 1);
  CHECK(sample_header(meta) == std::vector<std::string>{"x1", "x2", "f1", "f2", "g1"});
  CHECK_THROWS(parse_problem_meta(R"({"name":"P","n":2,"M":2,"J":0,"K":0,"lower":[0],"upper":[1,1]})"));
}
