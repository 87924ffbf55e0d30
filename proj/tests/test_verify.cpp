#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "trigdisc/freqsets.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/verify.hpp"

using namespace trigdisc;

TEST_CASE("dual enumeration examples") {
  const auto f3 = oracle_dual_enumeration(fibonacci_generator(3).dual(), 2);
  CHECK(std::find(f3.begin(), f3.end(), FreqIndex{1, 1}) != f3.end());
  for (const auto& k : f3) CHECK(fibonacci_generator(3).dual().contains(k));
  const auto zero = oracle_dual_enumeration(korobov_generator(7, {1, 3, 2}).dual(), 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero.front().is_zero());
}

TEST_CASE("dual enumeration agrees with the pruned minimizer") {
  for (int n = 3; n <= 18; ++n) {
    const auto dual = fibonacci_generator(n).dual();
    const auto fast = min_product(dual);
    const auto list = oracle_dual_enumeration(dual, fast.product);
    CHECK(std::find(list.begin(), list.end(), fast.minimizer) != list.end());
    CHECK(oracle_min_product(list).product == fast.product);
  }
}

TEST_CASE("grid norm oracle examples") {
  for (double p : {1.0, 3.0, kInfNorm})
    for (double v : oracle_grid_norm(TrigPoly::monomial(FreqIndex{2, -1}), p, 3))
      CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto k4 = oracle_grid_norm(fejer(4), 1.0, 3);
  for (double v : k4) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto v5 = hc_vallee_poussin(5, 2);
  const auto est = oracle_grid_norm(v5, 1.0, 3);
  REQUIRE(est.size() == 3);
  CHECK(std::abs(est.back() - lp_norm(v5, 1.0)) < 1e-8);
  CHECK(std::abs(est[2] - est[1]) <= std::abs(est[1] - est[0]) + 1e-12);
  CHECK_THROWS(oracle_grid_norm(v5, 1.0, 1));
}

TEST_CASE("config validation") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.tolerances.identity = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.gamma_n_min = 10;
  c.gamma_n_max = 9;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(SuiteConfig::from_json({{"tolerances", {{"convolution", 0}}}}), ConfigError);
  CHECK_THROWS_AS(SuiteConfig::from_json({{"no_such_key", 1}}), ConfigError);
  const auto j = SuiteConfig::from_json({{"p_list", {2, "inf"}}, {"seed", 5}});
  CHECK(j.seed == 5);
  CHECK(std::isinf(j.p_list.back()));
}

TEST_CASE("config json round trip") {
  SuiteConfig c;
  c.criteria = {1, 8};
  c.trials = 2;
  const auto back = SuiteConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("a config with zero tolerance fails without crashing") {
  SuiteConfig c;
  c.tolerances.convolution = 0.0;
  CHECK_THROWS_AS(run_suite(c), ConfigError);
}

TEST_CASE("suite reports are deterministic") {
  SuiteConfig c;
  c.criteria = {1, 8, 9};
  c.gamma_n_max = 12;
  c.brute_force_n_max = 12;
  c.korobov_l_max = 4;
  const auto a = run_suite(c).to_json(false);
  const auto b = run_suite(c).to_json(false);
  CHECK(a.dump() == b.dump());
  CHECK(a["passed"] == true);
  CHECK(a.contains("seed"));
  CHECK(a.contains("version"));
  CHECK(a["criteria"].size() == 3);
}

TEST_CASE("exactness helpers") {
  for (int n = 3; n <= 15; ++n) {
    const std::int64_t b = exactness_bound(n);
    CHECK(b == gamma_scan(n).n_max);
    const auto g = fibonacci_generator(n);
    const auto k = shortest_dual_vector(g);
    CHECK_FALSE(k.is_zero());
    CHECK(g.dual().contains(k));
    // No dual vector in a strictly smaller box.
    if (k.max_abs() > 1) {
      const auto inner = oracle_dual_enumeration(g.dual(), k.max_abs() - 1);
      CHECK(inner.size() == 1);
    }
  }
  const auto g = fibonacci_generator(10);
  for (const auto& j : convolution_rectangles(g, 89)) {
    CHECK(j[0] * j[1] <= 89);
    CHECK(is_exact_on(g, build_rectangle({2 * j[0] - 1, 2 * j[1] - 1})));
  }
}

TEST_CASE("criterion names") {
  for (int id = 1; id <= kCriterionCount; ++id) CHECK_FALSE(criterion_name(id).empty());
}
