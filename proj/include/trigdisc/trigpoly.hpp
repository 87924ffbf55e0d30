#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "trigdisc/freqsets.hpp"

namespace trigdisc {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Coefficients with modulus at or below this are dropped.
inline constexpr double kPruneTolerance = 1e-15;

/// Sparse trigonometric polynomial sum_k c_k e^{i(k,x)} over Z^d.
///
/// Terms are kept sorted by frequency (lexicographic) with nonzero
/// coefficients only, so lookups are binary searches and sums are merges.
class TrigPoly {
 public:
  using Term = std::pair<FreqIndex, Complex>;

  explicit TrigPoly(std::size_t dim = 1);

  /// Builds from arbitrary terms: duplicates are summed, then tiny
  /// coefficients pruned.
  static TrigPoly from_terms(std::size_t dim, std::vector<Term> terms);
  static TrigPoly monomial(const FreqIndex& k, Complex c = 1.0);
  static TrigPoly constant(std::size_t dim, Complex c);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Fourier coefficient at k (zero when absent).
  Complex coeff(const FreqIndex& k) const;

  /// max |k_i| per coordinate over the support.
  std::vector<std::int64_t> max_abs_per_dim() const;

  /// True iff c(-k) == conj(c(k)) for all k, up to tol.
  bool is_real_valued(double tol = 1e-13) const;

  Complex operator()(std::span<const double> x) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(Complex s);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }
  friend TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }

  nlohmann::json to_json() const;
  static TrigPoly from_json(const nlohmann::json& j);

 private:
  TrigPoly& axpy(const TrigPoly& other, Complex s);
  void prune();

  std::size_t dim_;
  std::vector<Term> terms_;
};

/// Equispaced product grid with nodes 2*pi*m/M_i, m = 0..M_i-1.
struct GridSpec {
  std::vector<std::size_t> points;

  std::size_t dim() const { return points.size(); }
  std::size_t total() const;
  nlohmann::json to_json() const;
};

/// Default oversampling factor for grid-estimated norms.
inline constexpr std::size_t kDefaultOversampling = 8;

/// Grid with M_i = factor * max(K_i, 1), K_i the largest |k_i| in f.
GridSpec oversampled_grid(const TrigPoly& f,
                          std::size_t factor = kDefaultOversampling);

Complex evaluate(const TrigPoly& f, std::span<const double> x);

/// Exact convolution: coefficient-wise product of the two spectra.
TrigPoly convolve(const TrigPoly& f, const TrigPoly& g);

/// f * f, whose coefficients are the squares of those of f.
TrigPoly autocorrelate(const TrigPoly& f);

/// (f (x) g)(x, y) = f(x) g(y); the result has dimension f.dim() + g.dim().
TrigPoly tensor_product(const TrigPoly& f, const TrigPoly& g);

/// How an L_p norm was obtained.
struct NormEstimate {
  double value = 0.0;
  double p = 2.0;
  /// "parseval", "quadrature-exact", or "grid-estimated".
  std::string method;
  GridSpec grid;
  bool exact = false;

  nlohmann::json to_json() const;
};

/// L_p norm with respect to the normalized Lebesgue measure on [0,2pi)^d.
///
/// p = 2 uses Parseval. Even integer p integrates |f|^p exactly on a grid
/// with M_i >= p*K_i + 1. Any other p (including infinity) is estimated on
/// `grid`, or on oversampled_grid(f) when no grid is given. Throws
/// std::invalid_argument for p < 1.
NormEstimate lp_norm_estimate(const TrigPoly& f, double p,
                              std::optional<GridSpec> grid = std::nullopt);
double lp_norm(const TrigPoly& f, double p,
               std::optional<GridSpec> grid = std::nullopt);

enum class CoefficientLaw { ComplexGaussian, Unimodular };

/// Identifier of the pseudo-random algorithm recorded in every report.
inline constexpr const char* kRngAlgorithm =
    "mt19937_64; u = (x >> 11) * 2^-53; gaussian via Box-Muller";

/// Random polynomial on Q with i.i.d. coefficients. Coefficients are
/// assigned in Q's enumeration order, so (Q, seed, law) fixes the result.
TrigPoly random_poly(const FreqSet& q, std::uint64_t seed,
                     CoefficientLaw law = CoefficientLaw::ComplexGaussian);

}  // namespace trigdisc
