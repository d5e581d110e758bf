#include <doctest.h>

#include <cmath>

#include "cmopla/features_walk.hpp"
#include "cmopla/problems.hpp"
#include "cmopla/stats.hpp"
#include "walk_fixture.hpp"

using namespace cmopla;
using walk_fixture::brute_force;
using walk_fixture::fixture;

namespace {

void check_series(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t t = 0; t < got.size(); ++t) CHECK(got[t] == doctest::Approx(want[t]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("hand fixture matches the brute-force series") {
  const auto w = fixture();
  const auto s = step_series(w);
  const auto e = brute_force(w);
  check_series(s.dist_x, e.dist_x);
  check_series(s.dist_f, e.dist_f);
  check_series(s.dist_c, e.dist_c);
  check_series(s.dist_f_c, e.dist_f_c);
  check_series(s.ncv, e.ncv);
  check_series(s.nncv, e.nncv);
  check_series(s.bncv, e.bncv);
  check_series(s.sup, e.sup);
  check_series(s.inf, e.inf);
  check_series(s.inc, e.inc);
  check_series(s.lnd, e.lnd);
  check_series(s.nfronts, e.nfronts);
  check_series(s.nuhv, e.nuhv);
  check_series(s.nhv, e.nhv);
  check_series(s.bhv, e.bhv);
  CHECK(s.feasible == std::vector<bool>{true, true, false});

  // By hand: steps 0 and 1 each have one infeasible (inferior) neighbor;
  // at step 2 the current is infeasible and one neighbor violates less.
  CHECK(s.sup == std::vector<double>{0.0, 0.0, 0.5});
  CHECK(s.inf == std::vector<double>{0.5, 0.5, 0.0});
  CHECK(s.nfronts[0] == 2.0);
}

TEST_CASE("walk features of the hand fixture") {
  const auto w = fixture();
  const auto fv = walk_features(w);
  const auto e = brute_force(w);
  CHECK(fv.value("sup_avg_rws") == doctest::Approx(stats::mean(e.sup)));
  CHECK(fv.value("ncv_r1_rws") == doctest::Approx(stats::lag1_autocorr(e.ncv)));
  std::vector<double> ratio;
  for (std::size_t t = 0; t < 3; ++t) ratio.push_back(e.dist_f[t] / e.dist_x[t]);
  CHECK(fv.value("dist_f_dist_x_avg_rws") == doctest::Approx(stats::mean(ratio)));
  CHECK(fv.value("rfbx_rws_avg") == doctest::Approx(0.5));
  CHECK(fv.names().size() == walk_feature_names().size());
}

TEST_CASE("walks shorter than three steps are rejected") {
  auto w = fixture();
  w.steps.pop_back();
  CHECK_THROWS_AS(step_series(w), ArgumentError);
}

TEST_CASE("boundary crossing ratio") {
  CHECK(boundary_crossing_ratio({false, true, false, true}) == 1.0);
  CHECK(boundary_crossing_ratio({true, false, true, false}) == 1.0);
  CHECK(boundary_crossing_ratio({true, true, true}) == 0.0);
  CHECK(boundary_crossing_ratio({true, true, false}) == 0.5);
}

TEST_CASE("unconstrained walk has no violation signal") {
  const auto s = step_series(random_walk(make_free1(2), 3));
  for (std::size_t t = 0; t < s.length(); ++t) {
    CHECK(s.ncv[t] == 0.0);
    CHECK(s.nncv[t] == 0.0);
    CHECK(s.bncv[t] == 0.0);
  }
}

TEST_CASE("constant objectives give full incomparability") {
  ProblemSpec flat;
  flat.meta = {"FLAT", 2, 2, 0, 0, {0, 0}, {1, 1}};
  flat.evaluator = [](std::span<const double>) { return Evaluation{{1.0, 1.0}, {}, {}}; };
  const auto s = step_series(random_walk(flat, 5));
  for (std::size_t t = 0; t < s.length(); ++t) {
    CHECK(s.sup[t] == 0.0);
    CHECK(s.inf[t] == 0.0);
    CHECK(s.inc[t] == 1.0);
    CHECK(s.nfronts[t] == 1.0);
  }
}

TEST_CASE("walk invariants on built-in problems") {
  for (const auto& spec : {make_lin1(2), make_bnh(), make_lin1(5)}) {
    const auto walk = random_walk(spec, 1);
    const auto s = step_series(walk);
    const double box = std::pow(1.1, static_cast<double>(spec.meta.M));
    for (std::size_t t = 0; t < s.length(); ++t) {
      CHECK(std::abs(s.sup[t] + s.inf[t] + s.inc[t] - 1.0) <= 1e-9);
      CHECK(s.lnd[t] > 0.0);
      CHECK(s.lnd[t] <= 1.0);
      for (double hv : {s.nuhv[t], s.nhv[t], s.bhv[t]}) {
        CHECK(hv >= 0.0);
        CHECK(hv <= box + 1e-12);
      }
    }
    const auto fv = walk_features(s);
    CHECK(std::abs(fv.value("sup_avg_rws") + fv.value("inf_avg_rws") + fv.value("inc_avg_rws") - 1.0) <= 1e-9);
    for (const auto& e : fv.entries()) {
      CAPTURE(e.name);
      CHECK(std::isfinite(e.value));
      if (e.name.find("_r1") != std::string::npos) CHECK(std::abs(e.value) <= 1.0 + 1e-12);
    }
    CHECK(fv.value("rfbx_rws_avg") >= 0.0);
    CHECK(fv.value("rfbx_rws_avg") <= 1.0);

    const auto again = walk_features(random_walk(spec, 1));
    for (const auto& e : fv.entries()) CHECK(again.value(e.name) == e.value);
  }
}
