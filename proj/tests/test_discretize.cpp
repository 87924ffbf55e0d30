#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trigdisc/discretize.hpp"
#include "trigdisc/freqsets.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/random.hpp"
#include "trigdisc/verify.hpp"

using namespace trigdisc;
using std::numbers::pi;

namespace {

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
  double e = 0.0;
  const TrigPoly diff = a - b;
  for (const auto& [k, c] : diff.terms()) e = std::max(e, std::abs(c));
  return e;
}

SampleVector random_samples(std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> v(m);
  for (auto& x : v) x = Complex(rng.gaussian(), rng.gaussian());
  return SampleVector(std::move(v));
}

// lambda_max(G)/m for a rank-1 lattice: G is circulant, its eigenvalues are
// m * sum of |c_k|^2 over each residue class of (h, k) mod m.
double circulant_oracle(const TrigPoly& kernel, const LatticeGenerator& g) {
  std::vector<double> cls(g.m, 0.0);
  const auto dual = g.dual();
  for (const auto& [k, c] : kernel.terms()) cls[dual.residue(k)] += std::norm(c);
  return *std::max_element(cls.begin(), cls.end());
}

}  // namespace

TEST_CASE("sample vector norms") {
  const SampleVector a({3.0, Complex(0.0, -4.0)});
  CHECK(a.norm(1.0) == doctest::Approx(3.5));
  CHECK(a.norm(2.0) == doctest::Approx(std::sqrt(12.5)));
  CHECK(a.norm(kInfNorm) == doctest::Approx(4.0));
  CHECK(a.power_mean(2.0) == doctest::Approx(12.5));
}

TEST_CASE("cubature examples") {
  const auto f5 = fibonacci_points(5);
  CHECK(std::abs(cubature(f5, TrigPoly::constant(2, 1.0)) - 1.0) < 1e-15);
  CHECK(std::abs(cubature(f5, TrigPoly::monomial(FreqIndex{3, 1})) - 1.0) < 1e-12);
  CHECK(std::abs(cubature(f5, TrigPoly::monomial(FreqIndex{1, 0}))) < 1e-12);
  CHECK_THROWS(cubature(f5, SampleVector(std::vector<Complex>(7, 1.0))));
}

TEST_CASE("cubature reproduces dual membership exhaustively") {
  for (int n = 3; n <= 12; ++n) {
    const auto g = fibonacci_generator(n);
    const auto pts = lattice_points(g);
    const std::int64_t b = static_cast<std::int64_t>(g.m);
    double worst = 0.0;
    for (std::int64_t k1 = -b; k1 <= b; ++k1)
      for (std::int64_t k2 = -b; k2 <= b; ++k2) {
        const FreqIndex k{k1, k2};
        const double want = dual_contains(g.dual(), k) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(exponential_sum(pts, k) - want));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("spectral and pointwise paths agree") {
  const std::vector<PointSet> sets{fibonacci_points(9), korobov_points(31, std::vector<std::int64_t>{1, 5, 25}),
                                   PointSet(2, 12, {0, 0, 3, 7, 5, 11, 9, 2, 1, 1})};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& pts = sets[s];
    const auto q = build_hyperbolic_cross(6, pts.dim());
    for (std::uint64_t t = 0; t < 10; ++t) {
      const auto f = random_poly(q, derive_seed(s, t));
      CHECK(std::abs(cubature(pts, f) - cubature_spectral(pts, f)) < 1e-11);
      const auto a = sample(pts, f), b = sample_direct(pts, f);
      for (std::size_t nu = 0; nu < pts.size(); ++nu) CHECK(std::abs(a[nu] - b[nu]) < 1e-11);

      const ShiftOperator op(build_kernel({KernelKind::ValleePoussin, std::vector<std::int64_t>(pts.dim(), 3)}), pts);
      const auto av = random_samples(pts.size(), derive_seed(s, t, 1));
      const auto out = apply_shift(op, av);
      Rng rng(derive_seed(s, t, 2));
      for (int probe = 0; probe < 5; ++probe) {
        std::vector<double> x(pts.dim());
        for (auto& v : x) v = 2 * pi * rng.uniform();
        CHECK(std::abs(out(x) - apply_shift_direct(op, av, x)) < 1e-11);
      }
    }
  }
}

TEST_CASE("point set spectrum matches exponential sums") {
  const auto pts = korobov_points(7, std::vector<std::int64_t>{1, 3, 2});
  const auto spec = point_set_spectrum(pts);
  REQUIRE(spec.size() == 343);
  for (std::int64_t a = 0; a < 7; ++a)
    for (std::int64_t b = 0; b < 7; ++b)
      for (std::int64_t c = 0; c < 7; ++c)
        CHECK(std::abs(spec[(a * 7 + b) * 7 + c] - exponential_sum(pts, FreqIndex{a, b, c})) < 1e-12);
}

TEST_CASE("discretized convolution examples") {
  const auto f5 = fibonacci_points(5);
  const auto e11 = TrigPoly::monomial(FreqIndex{1, 1});
  CHECK(max_coeff_diff(discretized_convolution(e11, e11, f5), e11) < 1e-12);
  const auto e31 = TrigPoly::monomial(FreqIndex{3, 1});
  const auto one = TrigPoly::constant(2, 1.0);
  const auto alias = discretized_convolution(e31, one, f5);
  CHECK(max_coeff_diff(alias, one) < 1e-12);
  CHECK(convolve(e31, one).empty());
}

TEST_CASE("discretized convolution is exact in the exactness regime") {
  int checked = 0;
  for (int n = 6; n <= 14; ++n) {
    const auto g = fibonacci_generator(n);
    const auto pts = lattice_points(g);
    for (const auto& j : convolution_rectangles(g, static_cast<std::int64_t>(g.m))) {
      if (j[0] * j[1] > 40) continue;
      const auto q = build_rectangle(j);
      const auto f = random_poly(q, derive_seed(n, j[0], j[1]));
      const auto h = random_poly(q, derive_seed(n, j[1], j[0]));
      CHECK(max_coeff_diff(discretized_convolution(f, h, pts), convolve(f, h)) < 1e-10);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("sampling representation examples") {
  const auto f12 = fibonacci_points(12);
  const std::vector<std::int64_t> j{4, 4};
  const auto vj = build_kernel({KernelKind::ValleePoussin, j});
  CHECK(sampling_representation_check(TrigPoly::constant(2, 2.5), f12, vj, 1) < 1e-13);
  REQUIRE(4 * j[0] * j[1] <= exactness_bound(12));
  CHECK(sampling_representation_check(random_poly(build_rectangle(j), 3), f12, vj, 2) <= 1e-10);

  // Oversized rectangle: the kernel's support meets the dual lattice.
  const std::vector<std::int64_t> big{20, 20};
  const auto vbig = build_kernel({KernelKind::ValleePoussin, big});
  REQUIRE_FALSE(is_exact_on(fibonacci_generator(12), difference_set(build_rectangle({20, 20}))));
  CHECK(sampling_representation_check(random_poly(build_rectangle(big), 4), f12, vbig, 5) > 1e-3);
}

TEST_CASE("apply_shift examples") {
  const auto pts = fibonacci_points(10);
  const ShiftOperator op(hc_vallee_poussin(3, 2), pts);
  CHECK(apply_shift(op, SampleVector(std::vector<Complex>(pts.size(), 0.0))).empty());

  std::vector<Complex> e1(pts.size(), 0.0);
  e1[0] = 1.0;
  const auto shifted = apply_shift(op, SampleVector(e1));
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const double x[2] = {2 * pi * rng.uniform(), 2 * pi * rng.uniform()};
    const double y[2] = {x[0] - pts.coord(0, 0), x[1] - pts.coord(0, 1)};
    CHECK(std::abs(shifted(x) - op.kernel()(y) / static_cast<double>(pts.size())) < 1e-12);
  }

  REQUIRE(is_exact_on(fibonacci_generator(10), build_step_hyperbolic_cross(3, 2)));
  const auto ones = apply_shift(op, SampleVector(std::vector<Complex>(pts.size(), 1.0)));
  CHECK(max_coeff_diff(ones, TrigPoly::constant(2, 1.0)) < 1e-12);
  CHECK_THROWS(apply_shift(op, SampleVector(std::vector<Complex>(3, 1.0))));
  CHECK_THROWS(ShiftOperator(hc_vallee_poussin(3, 3), pts));
}

TEST_CASE("Fibonacci sum examples") {
  const auto s0 = fibonacci_sum(0, 8);
  for (double v : s0.values) CHECK(v == doctest::Approx(1.0));
  const auto s = fibonacci_sum(4, 12);
  CHECK(s.max() >= s.norm(2.0));
  CHECK(s.norm(2.0) >= s.norm(1.0));
  CHECK(s.norm(1.0) >= 1.0 - 1e-9);  // mean of |V| is at least |mean of V| = 1
  // Oracle: the full shift sum at a few grid nodes by direct kernel evaluation.
  const auto pts = fibonacci_points(12);
  const auto v = hc_vallee_poussin(4, 2);
  const std::size_t g0 = s.grid.points[0], g1 = s.grid.points[1];
  for (std::size_t row = 0; row < s.slab_rows; ++row)
    for (std::size_t col = 0; col < g1; col += g1 / 7) {
      const double x[2] = {2 * pi * row / g0, 2 * pi * col / g1};
      double sum = 0.0;
      for (std::size_t nu = 0; nu < pts.size(); ++nu) {
        const double y[2] = {x[0] - pts.coord(nu, 0), x[1] - pts.coord(nu, 1)};
        sum += std::abs(v(y));
      }
      CHECK(s.values[row * g1 + col] == doctest::Approx(sum / pts.size()).epsilon(1e-10));
    }
}

TEST_CASE("operator norm for p = 1 is the kernel's L1 norm") {
  const auto pts = fibonacci_points(12);
  for (int r = 1; r <= 5; ++r) {
    const ShiftOperator op(hc_vallee_poussin(r, 2), pts);
    const auto res = op_norm(op, 1.0);
    CHECK(res.method == "kernel-l1");
    CHECK(res.value == doctest::Approx(lp_norm(op.kernel(), 1.0)).epsilon(1e-12));
    // Both sides are L1 norms on an 8x grid; shifted kernels sit off the
    // grid nodes, so allow grid-resolution slack.
    CHECK(op_norm_probe(op, 1.0, 30, derive_seed(9, r)) <= res.value * 1.01);
  }
}

TEST_CASE("operator norm for p = 2 matches the circulant oracle") {
  for (int n : {8, 11, 13}) {
    const auto g = fibonacci_generator(n);
    const auto pts = lattice_points(g);
    for (int r = 1; r <= 5; ++r)
      for (const auto& kernel : {hc_vallee_poussin(r, 2), delta_hc_vp(r, 2)}) {
        const ShiftOperator op(kernel, pts);
        const auto res = op_norm(op, 2.0);
        CHECK(res.method == "gram-circulant");
        CHECK(res.converged);
        CHECK(res.value * res.value == doctest::Approx(circulant_oracle(kernel, g)).epsilon(1e-8));
        CHECK(op_norm_probe(op, 2.0, 10, derive_seed(n, r)) <= res.value * (1 + 1e-9));
      }
  }
}

TEST_CASE("Gram power iteration on a non-lattice point set") {
  const PointSet pts(1, 10, {0, 1, 3, 7});
  REQUIRE_FALSE(pts.generator().has_value());
  const auto kernel = vallee_poussin(2);
  const ShiftOperator op(kernel, pts);
  const auto res = op_norm(op, 2.0);
  CHECK(res.method == "gram-factored");
  // Oracle: largest eigenvalue of the explicit 4x4 Gram matrix, by plain
  // power iteration on its dense entries.
  const std::size_t m = pts.size();
  std::vector<Complex> G(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Complex s = 0.0;
      for (const auto& [k, c] : kernel.terms())
        s += std::norm(c) * std::polar(1.0, static_cast<double>(k[0]) * (pts.coord(a, 0) - pts.coord(b, 0)));
      G[a * m + b] = s;
    }
  std::vector<Complex> v(m, 1.0), w(m);
  v[1] = 0.3;
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    double nrm = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      w[a] = 0.0;
      for (std::size_t b = 0; b < m; ++b) w[a] += G[a * m + b] * v[b];
      nrm += std::norm(w[a]);
    }
    nrm = std::sqrt(nrm);
    double vn = 0.0;
    for (auto x : v) vn += std::norm(x);
    lambda = nrm / std::sqrt(vn);
    for (std::size_t a = 0; a < m; ++a) v[a] = w[a] / nrm;
  }
  CHECK(res.value * res.value == doctest::Approx(lambda / m).epsilon(1e-8));
}

TEST_CASE("operator norm for p = inf bounds the probes") {
  const auto pts = fibonacci_points(11);
  for (int r = 1; r <= 4; ++r) {
    const ShiftOperator op(hc_vallee_poussin(r, 2), pts, separable_hc_vallee_poussin(r, 2));
    const auto res = op_norm(op, kInfNorm);
    CHECK(res.method == "shift-sum-max");
    CHECK(op_norm_probe(op, kInfNorm, 20, derive_seed(11, r)) <= res.value * 1.01);
  }
  CHECK_THROWS_AS(op_norm(ShiftOperator(vallee_poussin(2), korobov_points(5, std::vector<std::int64_t>{1})), 3.0),
                  std::invalid_argument);
}

TEST_CASE("de la Vallee Poussin shift operators stay below 9") {
  for (int n : {10, 12}) {
    const auto g = fibonacci_generator(n);
    const auto pts = lattice_points(g);
    const std::int64_t bound = exactness_bound(n);
    for (int s1 = 0; (std::int64_t{1} << s1) <= bound; ++s1)
      for (int s2 = 0; (std::int64_t{4} << (s1 + s2)) <= bound; ++s2) {
        const std::vector<std::int64_t> j{std::int64_t{1} << s1, std::int64_t{1} << s2};
        const KernelId id{KernelKind::ValleePoussin, j};
        const ShiftOperator op(build_kernel(id), pts, build_separable_kernel(id));
        for (double p : {1.0, 2.0, kInfNorm}) {
          CHECK(op_norm(op, p).value <= 9.0);
          CHECK(op_norm_probe(op, p, 50, derive_seed(n, s1, s2)) <= 9.0);
        }
      }
  }
}

TEST_CASE("discretization ratio examples") {
  const auto pts = fibonacci_points(11);
  for (double p : {1.0, 2.0, 3.0, 4.0, kInfNorm}) {
    const auto r = discretization_ratio(TrigPoly::monomial(FreqIndex{2, 5}), pts, p);
    CHECK(r.sampled == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.true_norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto q = build_rectangle({4, 3});
  REQUIRE(is_exact_on(fibonacci_generator(11), difference_set(q)));
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto r = discretization_ratio(random_poly(q, t), pts, 2.0);
    CHECK(std::abs(r.ratio() - 1.0) < 1e-12);
  }
  const auto r4 = discretization_ratio(random_poly(q, 77), pts, 4.0);
  CHECK(r4.ratio() > 0.5);
  CHECK(r4.ratio() < 2.0);
}

TEST_CASE("rectangle collections") {
  const auto h = hyperbolic_rectangles(4, 2);
  CHECK(h.size() == 8);  // (1,1..4), (2,1), (2,2), (3,1), (4,1)
  for (const auto& j : h) CHECK(j[0] * j[1] <= 4);
  const auto dy = dyadic_rectangles(3, 2);
  CHECK(dy.size() == 4);
  CHECK(dy.front() == std::vector<std::int64_t>{1, 8});
  const std::int64_t n = universal_collection_bound(fibonacci_generator(14), 2);
  CHECK(n >= 1);
  for (const auto& j : hyperbolic_rectangles(n, 2))
    CHECK(is_exact_on(fibonacci_generator(14), build_rectangle({3 * j[0] - 1, 3 * j[1] - 1})));
}

TEST_CASE("universal check examples") {
  const auto pts = fibonacci_points(10);
  const auto trivial = universal_check({{1, 1}}, pts, 4.0, 3, 1);
  CHECK(trivial.worst_lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trivial.worst_upper == doctest::Approx(1.0).epsilon(1e-12));

  const auto f14 = fibonacci_points(14);
  const auto coll = hyperbolic_rectangles(universal_collection_bound(fibonacci_generator(14), 2), 2);
  const auto two = universal_check(coll, f14, 2.0, 2, 2);
  CHECK(std::abs(two.worst_lower - 1.0) < 1e-10);
  CHECK(std::abs(two.worst_upper - 1.0) < 1e-10);
  CHECK(two.max_representation_error < 1e-10);
  const auto four = universal_check(coll, f14, 4.0, 2, 3);
  CHECK(four.within_bounds);
  for (const auto& r : four.rectangles) {
    CHECK(r.lower >= r.bound_lower * 0.95);
    CHECK(r.upper <= r.bound_upper * 1.05);
  }
}
