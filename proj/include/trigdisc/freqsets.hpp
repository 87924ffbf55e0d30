#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace trigdisc {

/// Largest supported number of variables.
inline constexpr std::size_t kMaxDim = 8;

/// Integer frequency vector k in Z^d.
class FreqIndex {
 public:
  FreqIndex() = default;
  explicit FreqIndex(std::size_t dim);
  FreqIndex(std::initializer_list<std::int64_t> coords);
  explicit FreqIndex(std::span<const std::int64_t> coords);

  std::size_t dim() const { return dim_; }
  std::int64_t operator[](std::size_t i) const { return k_[i]; }
  std::int64_t& operator[](std::size_t i) { return k_[i]; }

  const std::int64_t* begin() const { return k_.data(); }
  const std::int64_t* end() const { return k_.data() + dim_; }

  bool is_zero() const;
  /// max_i |k_i|
  std::int64_t max_abs() const;
  /// prod_i max(|k_i|, 1), the hyperbolic-cross weight.
  std::int64_t cross_weight() const;

  FreqIndex operator-() const;
  friend FreqIndex operator+(const FreqIndex& a, const FreqIndex& b);
  friend FreqIndex operator-(const FreqIndex& a, const FreqIndex& b);

  friend bool operator==(const FreqIndex& a, const FreqIndex& b);
  friend std::strong_ordering operator<=>(const FreqIndex& a,
                                          const FreqIndex& b);

  std::string to_string() const;

 private:
  std::array<std::int64_t, kMaxDim> k_{};
  std::uint8_t dim_ = 0;
};

/// Dyadic level of an integer: 0 for 0, otherwise the s with
/// 2^(s-1) <= |k| < 2^s.
int dyadic_level(std::int64_t k);

enum class FreqSetKind {
  Rectangle,
  HyperbolicCross,
  DyadicBlock,
  StepHyperbolicCross,
  Explicit
};

std::string to_string(FreqSetKind kind);

/// Finite frequency set. Members are enumerated once at construction in
/// lexicographic order; the object is immutable afterwards.
class FreqSet {
 public:
  FreqSetKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  /// Construction parameters (j for rectangles, {N} for crosses, s for
  /// blocks, {r} for step crosses, empty for explicit sets).
  const std::vector<std::int64_t>& params() const { return params_; }

  bool contains(const FreqIndex& k) const;
  std::size_t size() const { return members_.size(); }
  const std::vector<FreqIndex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Per-coordinate max |k_i| over the members (zeros for an empty set).
  std::vector<std::int64_t> max_abs_per_dim() const;

  nlohmann::json to_json() const;

  friend FreqSet build_rectangle(std::span<const std::int64_t> j);
  friend FreqSet build_hyperbolic_cross(std::int64_t n, std::size_t d);
  friend FreqSet build_dyadic_block(std::span<const std::int64_t> s);
  friend FreqSet build_step_hyperbolic_cross(std::int64_t r, std::size_t d);
  friend FreqSet make_explicit_set(std::size_t d, std::vector<FreqIndex> ks);

 private:
  FreqSet(FreqSetKind kind, std::size_t dim, std::vector<std::int64_t> params,
          std::vector<FreqIndex> members);

  FreqSetKind kind_;
  std::size_t dim_;
  std::vector<std::int64_t> params_;
  std::vector<FreqIndex> members_;
};

/// R(j) = {k : |k_i| < j_i}.  Throws std::invalid_argument if some j_i < 1.
FreqSet build_rectangle(std::span<const std::int64_t> j);
FreqSet build_rectangle(std::initializer_list<std::int64_t> j);

/// Gamma(N, d) = {k : prod max(|k_i|,1) <= N}.
FreqSet build_hyperbolic_cross(std::int64_t n, std::size_t d);

/// rho(s) = {k : [2^(s_i - 1)] <= |k_i| < 2^(s_i)}.
FreqSet build_dyadic_block(std::span<const std::int64_t> s);
FreqSet build_dyadic_block(std::initializer_list<std::int64_t> s);

/// Q_r, the union of rho(s) over ||s||_1 <= r.
FreqSet build_step_hyperbolic_cross(std::int64_t r, std::size_t d);

/// Explicit set; duplicates are removed and members sorted.
FreqSet make_explicit_set(std::size_t d, std::vector<FreqIndex> ks);

/// {k - l : k, l in Q}.
FreqSet difference_set(const FreqSet& q);

/// Parses a JSON array of integer vectors into an explicit set.
FreqSet freq_set_from_json(const nlohmann::json& j);

}  // namespace trigdisc
