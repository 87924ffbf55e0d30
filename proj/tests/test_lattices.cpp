#include <cmath>
#include <limits>
#include <functional>
#include <numbers>
#include <set>

#include "doctest.h"
#include "trigdisc/freqsets.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/verify.hpp"

using namespace trigdisc;
using std::numbers::pi;

namespace {

// S(k) from floating-point coordinates.
Complex direct_sum(const PointSet& pts, const FreqIndex& k) {
  Complex s = 0.0;
  for (std::size_t nu = 0; nu < pts.size(); ++nu) {
    double phase = 0.0;
    for (std::size_t i = 0; i < pts.dim(); ++i) phase += static_cast<double>(k[i]) * pts.coord(nu, i);
    s += std::polar(1.0, phase);
  }
  return s / static_cast<double>(pts.size());
}

}  // namespace

TEST_CASE("Fibonacci numbers") {
  CHECK(fibonacci_number(0) == 1);
  CHECK(fibonacci_number(1) == 1);
  CHECK(fibonacci_number(5) == 8);
  CHECK(fibonacci_number(10) == 89);
  CHECK(fibonacci_number(16) == 1597);
  for (int n = 2; n < 80; ++n)
    CHECK(fibonacci_number(n) == fibonacci_number(n - 1) + fibonacci_number(n - 2));
  CHECK_THROWS_AS(fibonacci_number(200), std::overflow_error);
  CHECK_THROWS(fibonacci_number(-1));
}

TEST_CASE("Fibonacci point examples") {
  const auto f3 = fibonacci_points(3);
  REQUIRE(f3.size() == 3);
  const double want[3][2] = {{2 * pi / 3, 4 * pi / 3}, {4 * pi / 3, 2 * pi / 3}, {0, 0}};
  for (std::size_t nu = 0; nu < 3; ++nu)
    for (std::size_t i = 0; i < 2; ++i) CHECK(f3.coord(nu, i) == doctest::Approx(want[nu][i]));
  const auto f5 = fibonacci_points(5);
  CHECK(f5.size() == 8);
  std::set<std::int64_t> first;
  for (std::size_t nu = 0; nu < f5.size(); ++nu) {
    first.insert(f5.numerator(nu, 0));
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(f5.coord(nu, i) >= 0.0);
      CHECK(f5.coord(nu, i) < 2 * pi);
    }
  }
  CHECK(first.size() == 8);
  CHECK_THROWS(fibonacci_points(1));
}

TEST_CASE("Korobov point examples") {
  for (int n = 2; n <= 12; ++n) {
    const std::uint64_t b = fibonacci_number(n);
    const std::vector<std::int64_t> h{1, static_cast<std::int64_t>(fibonacci_number(n - 1))};
    CHECK(korobov_points(b, h).numerators() == fibonacci_points(n).numerators());
  }
  const auto one = korobov_points(1, std::vector<std::int64_t>{1, 5, 7});
  CHECK(one.size() == 1);
  CHECK(one.numerators() == std::vector<std::int64_t>{0, 0, 0});
  const auto z = korobov_points(11, std::vector<std::int64_t>{1, 22, 3});
  for (std::size_t nu = 0; nu < z.size(); ++nu) CHECK(z.numerator(nu, 1) == 0);
}

TEST_CASE("dual lattice examples") {
  const auto dual = fibonacci_generator(5).dual();
  CHECK(dual_contains(dual, FreqIndex{0, 0}));
  CHECK(dual_contains(dual, FreqIndex{3, 1}));
  CHECK_FALSE(dual_contains(dual, FreqIndex{1, 0}));
}

TEST_CASE("exponential sums match dual membership") {
  std::vector<LatticeGenerator> gens;
  for (int n = 3; n <= 10; ++n) gens.push_back(fibonacci_generator(n));
  gens.push_back(korobov_generator(31, {1, 5, 25}));
  gens.push_back(korobov_generator(101, {1, 17}));
  gens.push_back(korobov_generator(60, {1, 7}));  // composite modulus
  for (const auto& g : gens) {
    const auto pts = lattice_points(g);
    const std::int64_t m = static_cast<std::int64_t>(g.m);
    const std::int64_t bound = g.h.size() == 2 ? 2 * m : std::min<std::int64_t>(2 * m, 12);
    for (const auto& k : oracle_dual_enumeration(g.dual(), 0)) CHECK(k.is_zero());
    FreqIndex k(g.h.size());
    // Sample the box on a stride to keep runtime small.
    const std::int64_t step = std::max<std::int64_t>(1, bound / 20);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == k.dim()) {
        const Complex s = direct_sum(pts, k);
        const double want = dual_contains(g.dual(), k) ? 1.0 : 0.0;
        CHECK(std::abs(s - want) < 1e-10);
        return;
      }
      for (std::int64_t v = -bound; v <= bound; v += step) {
        k[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("gamma scan examples") {
  CHECK(gamma_scan(3).n_max == 0);
  CHECK(gamma_scan(4).n_max == 1);
  CHECK(gamma_scan(5).n_max == 2);
  const auto rows = gamma_scan(3, 5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].b_n == 8);
  CHECK(rows[2].ratio == doctest::Approx(0.25));
  CHECK_THROWS(gamma_scan(2));
}

TEST_CASE("pruned min_product agrees with brute force") {
  for (int n = 3; n <= 18; ++n) {
    const auto dual = fibonacci_generator(n).dual();
    const auto fast = min_product(dual);
    const std::int64_t box = static_cast<std::int64_t>(fibonacci_number(n));
    const auto slow = oracle_min_product(oracle_dual_enumeration(dual, box));
    CHECK(fast.product == slow.product);
    CHECK(dual_contains(dual, fast.minimizer));
    CHECK_FALSE(fast.minimizer.is_zero());
    CHECK(fast.minimizer.cross_weight() == fast.product);
  }
}

TEST_CASE("gamma scan has a positive floor") {
  double floor = 1.0;
  for (const auto& row : gamma_scan(5, 25)) floor = std::min(floor, row.ratio);
  MESSAGE("min N_max(n)/b_n over n = 5..25: " << floor);
  CHECK(floor >= 0.15);
}

TEST_CASE("exactness examples") {
  const auto g = fibonacci_generator(5);
  CHECK(is_exact_on(g, build_hyperbolic_cross(2, 2)));
  CHECK_FALSE(is_exact_on(g, build_hyperbolic_cross(3, 2)));
  for (const auto& gen : {g, korobov_generator(7, {1, 2, 4})})
    CHECK(is_exact_on(gen, make_explicit_set(gen.h.size(), {FreqIndex(gen.h.size())})));
}

TEST_CASE("primes") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(251));
  CHECK_FALSE(is_prime(253));
  CHECK(next_prime(244) == 251);
  CHECK(next_prime(251) == 251);
}

TEST_CASE("Korobov search examples") {
  const auto r = korobov_search(2, 3);
  CHECK(r.card_gamma == 81);
  CHECK(r.m == 251);
  CHECK(r.verified);
  CHECK(is_exact_on(r.generator(), build_hyperbolic_cross(2, 3)));
  CHECK(korobov_search(1, 2).m == 23);
  const auto j = r.to_json();
  for (const char* key : {"L", "d", "cardGamma", "m", "h", "verified"}) CHECK(j.contains(key));
}

TEST_CASE("Korobov search satisfies the size condition and exactness") {
  for (std::size_t d : {3, 4})
    for (std::int64_t L = 1; L <= 8; ++L) {
      const auto r = korobov_search(L, d);
      CHECK(is_prime(r.m));
      CHECK(static_cast<double>(r.card_gamma) < static_cast<double>(r.m - 1) / d);
      // Smallest such prime.
      for (std::uint64_t m = r.m - 1; m >= 2 && static_cast<double>(r.card_gamma) < static_cast<double>(m - 1) / d; --m)
        CHECK_FALSE(is_prime(m));
      CHECK(r.verified);
      // Independent check with the enumeration oracle on the cross's box.
      const auto dual = r.generator().dual();
      const auto g = build_hyperbolic_cross(L, d);
      for (const auto& k : g)
        if (!k.is_zero()) CHECK_FALSE(dual.contains(k));
      // h is the smallest admissible value.
      for (std::int64_t h = 1; h < r.h; ++h)
        CHECK_FALSE(is_exact_on(korobov_special_generator(r.m, h, d), g));
    }
}

TEST_CASE("point set json round trip") {
  const auto pts = korobov_points(13, std::vector<std::int64_t>{1, 5, 12});
  const auto back = PointSet::from_json(pts.to_json());
  CHECK(back.numerators() == pts.numerators());
  REQUIRE(back.generator().has_value());
  CHECK(back.generator()->h == pts.generator()->h);
}

TEST_CASE("rank-1 structure is detected") {
  const auto pts = fibonacci_points(7);
  const PointSet copy(2, pts.denominator(), pts.numerators());
  REQUIRE(copy.generator().has_value());
  CHECK(copy.generator()->h == std::vector<std::int64_t>{1, 13});
  const PointSet odd(1, 5, {0, 2, 1});
  CHECK_FALSE(odd.generator().has_value());
}
