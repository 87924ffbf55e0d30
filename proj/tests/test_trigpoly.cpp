#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trigdisc/freqsets.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/random.hpp"
#include "trigdisc/trigpoly.hpp"

using namespace trigdisc;
using std::numbers::pi;

namespace {

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
  double e = 0.0;
  const TrigPoly diff = a - b;
  for (const auto& [k, c] : diff.terms()) e = std::max(e, std::abs(c));
  return e;
}

TrigPoly rand_on(std::initializer_list<std::int64_t> j, std::uint64_t seed) {
  return random_poly(build_rectangle(j), seed);
}

}  // namespace

TEST_CASE("evaluate examples") {
  const double zero[2] = {0.0, 0.0};
  CHECK(std::abs(TrigPoly::monomial(FreqIndex{1, 1})(zero) - Complex(1.0)) < 1e-15);
  const TrigPoly f = TrigPoly::from_terms(1, {{FreqIndex{-1}, 1.0}, {FreqIndex{0}, 1.0},
                                              {FreqIndex{1}, 1.0}});
  const double x = pi;
  CHECK(std::abs(f(std::span<const double>(&x, 1)) - Complex(-1.0)) < 1e-14);
  const double o = 0.0;
  CHECK(std::abs(evaluate(dirichlet(2), std::span<const double>(&o, 1)) - Complex(5.0)) < 1e-14);
}

TEST_CASE("convolve examples") {
  const auto ek = TrigPoly::monomial(FreqIndex{1, 2});
  const auto el = TrigPoly::monomial(FreqIndex{2, 1});
  CHECK(convolve(ek, el).empty());
  CHECK(max_coeff_diff(convolve(ek, ek), ek) == 0.0);
  const auto f = rand_on({3, 2}, 7);
  const auto dir = tensor_kernel(KernelKind::Dirichlet, std::vector<std::int64_t>{2, 1});
  CHECK(max_coeff_diff(convolve(f, dir), f) < 1e-15);
  CHECK_THROWS(convolve(f, dirichlet(1)));
}

TEST_CASE("autocorrelate examples") {
  const auto ek = TrigPoly::monomial(FreqIndex{3});
  CHECK(max_coeff_diff(autocorrelate(ek), ek) == 0.0);
  CHECK(max_coeff_diff(autocorrelate(2.0 * ek), 4.0 * ek) < 1e-15);
  for (std::int64_t j : {2, 5, 9}) {
    const auto fs = autocorrelate(fejer(j));
    const std::size_t n = 64 * static_cast<std::size_t>(j);
    for (std::size_t t = 0; t < n; ++t) {
      const double x = 2.0 * pi * static_cast<double>(t) / static_cast<double>(n);
      CHECK(fs(std::span<const double>(&x, 1)).real() >= -1e-12);
    }
  }
}

TEST_CASE("lp_norm examples") {
  const auto ek = TrigPoly::monomial(FreqIndex{2, -3});
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, kInfNorm}) CHECK(lp_norm(ek, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(fejer(2), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(fejer(2), kInfNorm) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(ek, 0.5), std::invalid_argument);
}

TEST_CASE("lp_norm labels its method") {
  const auto f = rand_on({3, 3}, 1);
  CHECK(lp_norm_estimate(f, 2.0).method == "parseval");
  const auto four = lp_norm_estimate(f, 4.0);
  CHECK(four.method == "quadrature-exact");
  CHECK(four.exact);
  const auto three = lp_norm_estimate(f, 3.0);
  CHECK(three.method == "grid-estimated");
  CHECK(three.grid.points == std::vector<std::size_t>{16, 16});
}

TEST_CASE("random_poly examples") {
  const auto q = build_hyperbolic_cross(6, 2);
  CHECK(max_coeff_diff(random_poly(q, 99), random_poly(q, 99)) == 0.0);
  CHECK(max_coeff_diff(random_poly(q, 99), random_poly(q, 100)) > 0.0);
  const auto c = random_poly(make_explicit_set(2, {FreqIndex{0, 0}}), 5,
                             CoefficientLaw::Unimodular);
  CHECK(c.size() == 1);
  CHECK(std::abs(c.coeff(FreqIndex{0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto u = random_poly(q, s, CoefficientLaw::Unimodular);
    const double n2 = lp_norm(u, 2.0);
    CHECK(std::abs(n2 * n2 / static_cast<double>(q.size()) - 1.0) < 1e-12);
  }
}

TEST_CASE("Parseval against direct quadrature") {
  // Oracle: mean of |f|^2 on a (2K+1)-grid by point evaluation.
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto f = rand_on({3, 4}, derive_seed(1, s));
    double sum = 0.0;
    for (const auto& [k, c] : f.terms()) sum += std::norm(c);
    CHECK(std::abs(std::pow(lp_norm(f, 2.0), 2) - sum) <= 1e-12 * sum);
    if (s < 5) {
      const std::size_t m0 = 2 * 2 + 1 + 2, m1 = 2 * 3 + 1 + 2;
      double q = 0.0;
      for (std::size_t a = 0; a < m0; ++a)
        for (std::size_t b = 0; b < m1; ++b) {
          const double x[2] = {2 * pi * a / m0, 2 * pi * b / m1};
          q += std::norm(f(x));
        }
      q /= static_cast<double>(m0 * m1);
      CHECK(std::abs(q - sum) <= 1e-12 * sum);
    }
  }
}

TEST_CASE("equispaced quadrature integrates exactly") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = rand_on({4, 3}, derive_seed(2, s));
    const std::size_t m0 = 2 * 3 + 1, m1 = 2 * 2 + 1;
    Complex q = 0.0;
    for (std::size_t a = 0; a < m0; ++a)
      for (std::size_t b = 0; b < m1; ++b) {
        const double x[2] = {2 * pi * a / m0, 2 * pi * b / m1};
        q += f(x);
      }
    q /= static_cast<double>(m0 * m1);
    CHECK(std::abs(q - f.coeff(FreqIndex{0, 0})) < 1e-12);
  }
}

TEST_CASE("convolution algebra") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = rand_on({3, 2}, derive_seed(3, s, 0));
    const auto g = rand_on({2, 4}, derive_seed(3, s, 1));
    const auto h = rand_on({4, 3}, derive_seed(3, s, 2));
    const Complex a(0.3, -1.1);
    CHECK(max_coeff_diff(convolve(f, g), convolve(g, f)) < 1e-12);
    CHECK(max_coeff_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))) < 1e-12);
    CHECK(max_coeff_diff(convolve(a * f + g, h), a * convolve(f, h) + convolve(g, h)) < 1e-12);
    CHECK(max_coeff_diff(autocorrelate(f), convolve(f, f)) < 1e-12);
  }
}

TEST_CASE("lp_norm is nondecreasing in p") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = rand_on({3, 3}, derive_seed(4, s));
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, kInfNorm}) {
      const double v = lp_norm(f, p);
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("zero coefficients are pruned") {
  const auto f = TrigPoly::monomial(FreqIndex{1}, 2.0);
  CHECK((f - f).empty());
  CHECK(TrigPoly::from_terms(1, {{FreqIndex{0}, 1e-16}}).empty());
}

TEST_CASE("real-valued predicate") {
  CHECK(fejer(4).is_real_valued());
  CHECK_FALSE(TrigPoly::monomial(FreqIndex{1}).is_real_valued());
}

TEST_CASE("json round trip") {
  const auto f = rand_on({3, 2}, 11);
  CHECK(max_coeff_diff(TrigPoly::from_json(f.to_json()), f) == 0.0);
}
