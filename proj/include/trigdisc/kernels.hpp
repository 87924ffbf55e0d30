#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "trigdisc/trigpoly.hpp"

namespace trigdisc {

// Univariate kernels.

/// D_j, coefficients 1 on |k| <= j.
TrigPoly dirichlet(std::int64_t j);
/// K_j, coefficients 1 - |k|/j on |k| <= j - 1.
TrigPoly fejer(std::int64_t j);
/// V_j, coefficients 1 on |k| <= j and (2j - |k|)/j for j < |k| < 2j.
TrigPoly vallee_poussin(std::int64_t j);
/// V_{2^(level-1)}, with level 0 meaning the constant 1.
TrigPoly vallee_poussin_dyadic(int level);
/// A_0 = 1, A_1 = V_1 - 1, A_s = V_{2^(s-1)} - V_{2^(s-2)}.
TrigPoly block_a(int s);

// Closed forms. At x = 0 (mod 2pi) the removable singularity takes its
// limit value.
double dirichlet_value(std::int64_t j, double x);
double fejer_value(std::int64_t j, double x);
double vallee_poussin_value(std::int64_t j, double x);

enum class KernelKind {
  Dirichlet,
  Fejer,
  ValleePoussin,
  BlockA,
  TensorVP,
  HCValleePoussin,
  DeltaHCVP
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// Names a kernel. For Dirichlet, Fejer, ValleePoussin, TensorVP and BlockA
/// `params` holds one order per dimension (tensor product when d > 1); for
/// HCValleePoussin and DeltaHCVP it is {r, d}.
struct KernelId {
  KernelKind kind = KernelKind::ValleePoussin;
  std::vector<std::int64_t> params;

  std::size_t dim() const;
  std::string to_string() const;
  auto operator<=>(const KernelId&) const = default;
};

/// Product kernel F(x) = prod_i F_{j_i}(x_i) for a univariate family.
TrigPoly tensor_kernel(KernelKind kind, std::span<const std::int64_t> orders);

/// V_{Q_r}: sum of A_s over ||s||_1 <= r.
TrigPoly hc_vallee_poussin(int r, std::size_t d);
/// V_{Q_r} from the collapsed form: the last coordinate's blocks telescope
/// into V_{2^(r - ||s'||_1 - 1)}.
TrigPoly hc_vallee_poussin_collapsed(int r, std::size_t d);
/// Delta V_{Q_r}: sum of A_s over ||s||_1 = r.
TrigPoly delta_hc_vp(int r, std::size_t d);

/// Materializes a kernel; throws std::invalid_argument on bad parameters.
TrigPoly build_kernel(const KernelId& id);
/// Same as build_kernel but memoized; safe to call concurrently.
std::shared_ptr<const TrigPoly> cached_kernel(const KernelId& id);

/// Kernel written as a sum of tensor products of univariate factors, so
/// point values cost O(#terms * d) once the factors are tabulated.
class SeparableKernel {
 public:
  struct Term {
    std::vector<TrigPoly> factors;  // one univariate factor per coordinate
  };

  SeparableKernel(std::size_t dim, std::vector<Term> terms);

  /// Generic split: one term per distinct trailing frequency (k_1..k_{d-1}).
  static SeparableKernel from_poly(const TrigPoly& f);

  std::size_t dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<std::int64_t> max_abs_per_dim() const;

  TrigPoly to_poly() const;
  /// Kernel whose coefficients are the squared coefficients of this one.
  SeparableKernel autocorrelation() const;
  Complex operator()(std::span<const double> x) const;

 private:
  std::size_t dim_;
  std::vector<Term> terms_;
};

SeparableKernel separable_tensor(KernelKind kind,
                                 std::span<const std::int64_t> orders);
SeparableKernel separable_hc_vallee_poussin(int r, std::size_t d);
SeparableKernel separable_delta_hc_vp(int r, std::size_t d);
SeparableKernel build_separable_kernel(const KernelId& id);

/// Compositions s of `total` into d nonnegative parts (lexicographic).
std::vector<std::vector<int>> compositions(int total, std::size_t d);

}  // namespace trigdisc
