#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "trigdisc/freqsets.hpp"

namespace trigdisc {

/// b_0 = b_1 = 1, b_n = b_{n-1} + b_{n-2}. Throws std::overflow_error when
/// b_n does not fit in 64 bits and std::invalid_argument for n < 0.
std::uint64_t fibonacci_number(int n);

/// L(m, h) = {k : (h, k) = 0 mod m}.
class DualLattice {
 public:
  DualLattice(std::uint64_t m, std::vector<std::int64_t> h);

  std::uint64_t modulus() const { return m_; }
  const std::vector<std::int64_t>& generator() const { return h_; }
  std::size_t dim() const { return h_.size(); }

  /// (h, k) mod m in [0, m).
  std::uint64_t residue(const FreqIndex& k) const;
  bool contains(const FreqIndex& k) const { return residue(k) == 0; }

 private:
  std::uint64_t m_;
  std::vector<std::int64_t> h_;
};

bool dual_contains(const DualLattice& lattice, const FreqIndex& k);

/// Rank-1 lattice generator: the points 2*pi*{mu*h/m}, mu = 1..m.
struct LatticeGenerator {
  enum class Family { Fibonacci, Korobov };

  Family family = Family::Korobov;
  std::uint64_t m = 1;
  std::vector<std::int64_t> h;
  int fibonacci_index = 0;  // n, for the Fibonacci family

  DualLattice dual() const { return DualLattice(m, h); }
  std::string describe() const;
  nlohmann::json to_json() const;
};

/// Points with rational coordinates 2*pi*q/m (0 <= q < m), stored exactly as
/// integer numerators over a common denominator.
class PointSet {
 public:
  /// `numerators` is row-major, dim entries per point. When no generator is
  /// given, one is detected if point mu equals mu * (point 1) mod m.
  PointSet(std::size_t dim, std::uint64_t denominator,
           std::vector<std::int64_t> numerators,
           std::optional<LatticeGenerator> generator = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return numerators_.size() / dim_; }
  std::uint64_t denominator() const { return m_; }
  std::int64_t numerator(std::size_t nu, std::size_t i) const {
    return numerators_[nu * dim_ + i];
  }
  double coord(std::size_t nu, std::size_t i) const;
  std::vector<double> point(std::size_t nu) const;
  const std::vector<std::int64_t>& numerators() const { return numerators_; }

  /// Set when the points are exactly mu * h mod m for mu = 1..m in order.
  const std::optional<LatticeGenerator>& generator() const { return gen_; }

  nlohmann::json to_json() const;
  static PointSet from_json(const nlohmann::json& j);

 private:
  std::size_t dim_;
  std::uint64_t m_;
  std::vector<std::int64_t> numerators_;
  std::optional<LatticeGenerator> gen_;
};

LatticeGenerator fibonacci_generator(int n);
LatticeGenerator korobov_generator(std::uint64_t m, std::vector<std::int64_t> h);
/// h = (1, a, a^2, ..., a^(d-1)) reduced mod m.
LatticeGenerator korobov_special_generator(std::uint64_t m, std::int64_t a,
                                           std::size_t d);

PointSet lattice_points(const LatticeGenerator& gen);
/// F_n = {(2 pi mu / b_n, 2 pi {mu b_{n-1} / b_n})}, mu = 1..b_n. Needs n >= 2.
PointSet fibonacci_points(int n);
PointSet korobov_points(std::uint64_t m, std::span<const std::int64_t> h);

struct MinProductResult {
  std::int64_t product = 0;
  FreqIndex minimizer;
};

/// min over nonzero dual vectors of prod max(|k_j|, 1), for d = 2 and h_1
/// invertible mod m. Scans k_2 = 0, 1, ... with the minimal |k_1| solving the
/// congruence and stops once k_2 alone exceeds the best product.
MinProductResult min_product(const DualLattice& lattice);

struct GammaScanRow {
  int n = 0;
  std::uint64_t b_n = 0;
  std::int64_t n_max = 0;  // largest N with Gamma(N,2) free of dual vectors
  double ratio = 0.0;      // n_max / b_n
};

GammaScanRow gamma_scan(int n);
std::vector<GammaScanRow> gamma_scan(int n_min, int n_max);

/// True iff no nonzero member of q lies in the dual lattice.
bool is_exact_on(const DualLattice& lattice, const FreqSet& q);
bool is_exact_on(const LatticeGenerator& gen, const FreqSet& q);

bool is_prime(std::uint64_t m);
std::uint64_t next_prime(std::uint64_t m);  // smallest prime >= m

struct KorobovSearchResult {
  std::int64_t L = 0;
  std::size_t d = 0;
  std::size_t card_gamma = 0;
  std::uint64_t m = 0;
  std::int64_t h = 0;
  bool verified = false;

  LatticeGenerator generator() const;
  nlohmann::json to_json() const;
};

/// Smallest prime m with |Gamma(L,d)| < (m-1)/d, then the smallest h in
/// [1, m) with k_1 + h k_2 + ... + h^(d-1) k_d != 0 mod m on Gamma(L,d)\{0}.
/// Throws std::runtime_error if no such h exists.
KorobovSearchResult korobov_search(std::int64_t L, std::size_t d);

}  // namespace trigdisc
