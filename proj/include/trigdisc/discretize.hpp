#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/trigpoly.hpp"

namespace trigdisc {

/// Values a_1..a_m attached to the points of a PointSet, with
/// ||a||_{p,m} = ((1/m) sum |a_nu|^p)^(1/p) and ||a||_inf = max |a_nu|.
class SampleVector {
 public:
  SampleVector() = default;
  explicit SampleVector(std::vector<Complex> values) : v_(std::move(values)) {}

  std::size_t size() const { return v_.size(); }
  const std::vector<Complex>& values() const { return v_; }
  Complex operator[](std::size_t i) const { return v_[i]; }

  double norm(double p) const;
  /// (1/m) sum |a_nu|^p, or max |a_nu| for p = infinity.
  double power_mean(double p) const;

 private:
  std::vector<Complex> v_;
};

/// a -> (1/m) sum_nu a_nu K(x - xi^nu).
class ShiftOperator {
 public:
  /// `separable` is an optional split of the same kernel used by the
  /// p = infinity norm; one is derived from the coefficients if omitted.
  ShiftOperator(TrigPoly kernel, PointSet points,
                std::optional<SeparableKernel> separable = std::nullopt);

  const TrigPoly& kernel() const { return kernel_; }
  const PointSet& points() const { return points_; }
  const SeparableKernel& separable() const { return separable_; }

 private:
  TrigPoly kernel_;
  PointSet points_;
  SeparableKernel separable_;
};

/// f at every point, with phases reduced exactly as (k, q) mod m.
SampleVector sample(const PointSet& points, const TrigPoly& f);
/// f at every point from floating-point coordinates (reference path).
SampleVector sample_direct(const PointSet& points, const TrigPoly& f);

/// S(k) = (1/m) sum_nu e^{i(k, xi^nu)}.
Complex exponential_sum(const PointSet& points, const FreqIndex& k);

/// S(k) for every residue k in Z_m^d, from a d-dimensional FFT of the point
/// counts. Row-major, last coordinate fastest; size m^d.
std::vector<Complex> point_set_spectrum(const PointSet& points);

/// (1/m) sum_nu f(xi^nu).
Complex cubature(const PointSet& points, const TrigPoly& f);
Complex cubature(const PointSet& points, const SampleVector& values);
/// sum_k c_k S(k): the same number computed from the coefficients.
Complex cubature_spectral(const PointSet& points, const TrigPoly& f);

/// (1/m) sum_nu a_nu e^{-i(k, xi^nu)} for each k.
std::vector<Complex> discrete_fourier_coefficients(const PointSet& points,
                                                   const SampleVector& a,
                                                   std::span<const FreqIndex> ks);

/// x -> (1/m) sum_nu f(xi^nu) g(x - xi^nu), as a polynomial on supp g.
TrigPoly discretized_convolution(const TrigPoly& f, const TrigPoly& g,
                                 const PointSet& points);

/// max over `probes` random x of |f(x) - (1/m) sum_nu f(xi^nu) K(x - xi^nu)|.
double sampling_representation_check(const TrigPoly& f, const PointSet& points,
                                     const TrigPoly& kernel, std::uint64_t seed,
                                     int probes = 64);

TrigPoly apply_shift(const ShiftOperator& op, const SampleVector& a);
/// The same value at one point by summing the shifted kernels directly.
Complex apply_shift_direct(const ShiftOperator& op, const SampleVector& a,
                           std::span<const double> x);

/// Values of (1/m) sum_nu |K(x - xi^nu)| on a product grid with
/// G_i = c_i * m nodes, c_i = ceil(oversampling * max(K_i, 1) / m).
///
/// The sum is invariant under shifts by lattice points, so only the slab
/// 0 <= j_1 < c_1 is stored; its mean and max equal those over the whole
/// grid. Needs a rank-1 lattice with h_1 invertible mod m.
struct ShiftSumGrid {
  GridSpec grid;
  std::size_t slab_rows = 0;  // c_1
  std::vector<double> values;

  double max() const;
  /// Grid estimate of the L_p norm of the shift sum.
  double norm(double p) const;
};

ShiftSumGrid shift_sum_grid(const SeparableKernel& kernel, const PointSet& points,
                            std::size_t oversampling = kDefaultOversampling);

/// FSV_{Q_r} for the Fibonacci set F_n.
ShiftSumGrid fibonacci_sum(int r, int n,
                           std::size_t oversampling = kDefaultOversampling);
/// The same sum with V_{Q_r} replaced by its autocorrelation.
ShiftSumGrid fibonacci_autocorrelation_sum(
    int r, int n, std::size_t oversampling = kDefaultOversampling);

struct OpNormOptions {
  std::size_t oversampling = kDefaultOversampling;
  double tolerance = 1e-10;       // relative change of the Rayleigh quotient
  long max_iterations = 200000;
  std::size_t max_points = 4096;  // Gram size cap for p = 2
  std::uint64_t seed = 1;         // start vector of the power iteration
};

struct OpNormResult {
  double value = 0.0;
  double p = 1.0;
  /// "kernel-l1", "shift-sum-max", "gram-circulant" or "gram-factored".
  std::string method;
  GridSpec grid;
  long iterations = 0;
  bool converged = true;

  nlohmann::json to_json() const;
};

/// Norm of the shift operator from l_{p,m} to L_p for p in {1, 2, inf}:
/// p = 1 gives ||K||_1, p = inf the max of the shift sum, p = 2 the root of
/// lambda_max(G)/m for G_{nu,mu} = sum_k |c_k|^2 e^{i(k, xi^nu - xi^mu)}.
/// Throws std::invalid_argument for any other p.
OpNormResult op_norm(const ShiftOperator& op, double p,
                     const OpNormOptions& options = {});

/// Largest ||apply_shift(a)||_p / ||a||_{p,m} over random a (a lower bound
/// for the operator norm, valid for any p).
double op_norm_probe(const ShiftOperator& op, double p, int trials,
                     std::uint64_t seed);

struct DiscretizationRatio {
  double sampled = 0.0;     // (1/m) sum |f(xi^nu)|^p, or the max for p = inf
  double true_norm = 0.0;   // ||f||_p^p, or ||f||_inf
  std::string method;       // how true_norm was obtained

  double ratio() const { return sampled / true_norm; }
};

/// Oversampling of the grid behind ||f||_inf in discretization_ratio.
inline constexpr std::size_t kSupOversampling = 32;

DiscretizationRatio discretization_ratio(const TrigPoly& f, const PointSet& points,
                                         double p);

/// {j : prod j_i <= N}, every j_i >= 1.
std::vector<std::vector<std::int64_t>> hyperbolic_rectangles(std::int64_t n,
                                                             std::size_t d);
/// {2^s : ||s||_1 = n}.
std::vector<std::vector<std::int64_t>> dyadic_rectangles(int n, std::size_t d);

/// Largest N such that every R(j) with prod j_i <= N has its representation
/// box {|k_i| <= 3 j_i - 2} free of nonzero dual vectors (0 if none).
std::int64_t universal_collection_bound(const LatticeGenerator& gen,
                                        std::size_t d);

struct RectangleResult {
  std::vector<std::int64_t> j;
  double lower = 0.0;  // min sampled / true over the trials
  double upper = 0.0;  // max sampled / true
  double representation_error = 0.0;
  double op_norm_1 = 0.0, op_norm_2 = 0.0, op_norm_inf = 0.0;
  double bound_lower = 0.0;  // lower bound implied by the operator norms
  double bound_upper = 0.0;  // upper bound implied by the operator norms
};

struct UniversalReport {
  double p = 2.0;
  int trials = 0;
  std::vector<RectangleResult> rectangles;
  double worst_lower = 0.0;  // min over the collection
  double worst_upper = 0.0;  // max over the collection
  double max_representation_error = 0.0;
  /// Every rectangle satisfies bound_lower*0.95 <= lower and
  /// upper <= bound_upper*1.05.
  bool within_bounds = true;

  nlohmann::json to_json() const;
};

/// For every rectangle, `trials` random f in T(R(j)): two-sided sampling
/// ratios, the de la Vallee Poussin representation error and the shift
/// operator norms for V_j. For p = 4 the norm bounds are interpolated:
/// C(4) <= sqrt(C_2 C_inf), C(4/3) <= sqrt(C_1 C_2).
UniversalReport universal_check(
    const std::vector<std::vector<std::int64_t>>& collection,
    const PointSet& points, double p, int trials, std::uint64_t seed);

}  // namespace trigdisc
