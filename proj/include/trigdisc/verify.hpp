#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "trigdisc/lattices.hpp"
#include "trigdisc/trigpoly.hpp"

namespace trigdisc {

inline constexpr const char* kVersion = "0.1.0";

// Brute-force oracles. None of them calls the routine it is used to check.

/// Every k in [-box, box]^d with (h, k) = 0 mod m, including 0.
std::vector<FreqIndex> oracle_dual_enumeration(const DualLattice& lattice,
                                               std::int64_t box);

/// Smallest prod max(|k_j|, 1) over the nonzero vectors of an enumeration.
MinProductResult oracle_min_product(const std::vector<FreqIndex>& dual_vectors);

/// ||f||_p by direct summation on `levels` grids, each twice as fine as the
/// previous one. The finest grid has 8 max(K_i, 1) nodes per coordinate
/// (p K_i + 1 for even p), the same grid lp_norm uses.
std::vector<double> oracle_grid_norm(const TrigPoly& f, double p, int levels);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerances {
  double identity = 1e-12;        // cubature and kernel identities
  double convolution = 1e-10;     // discretized vs exact convolution
  double representation = 1e-10;  // sampling representation, exact L_2
  double aliasing = 1e-3;         // minimum error of aliasing witnesses
  double spread = 4.0;            // max/min over an r or L range
  double slack = 0.05;            // relative slack on grid-estimated bounds
};

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  std::vector<int> criteria{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  // 1: gamma scan
  int gamma_n_min = 5;
  int gamma_n_max = 25;
  int brute_force_n_max = 18;
  double gamma_floor = 0.15;
  // 2: cubature identity
  int cubature_fibonacci_n_max = 13;
  std::uint64_t cubature_korobov_m_max = 251;
  // 3: convolution
  int convolution_pairs = 200;
  int convolution_fibonacci_n_min = 5;
  int convolution_fibonacci_n_max = 16;
  int convolution_korobov_l_max = 4;
  // 4: Vallee Poussin shift operators
  int shift_n_min = 3;
  int shift_n_max = 16;
  // 5-7: hyperbolic cross growth
  int growth_n = 16;
  int r_min = 2;
  // 8: kernels
  int kernel_j_max = 64;
  int block_s_max = 12;
  // 9: Korobov search
  std::int64_t korobov_l_min = 2;
  std::int64_t korobov_l_max = 8;
  std::vector<int> korobov_d{3, 4};
  // 10: universal discretization
  int universal_n = 14;
  std::vector<double> p_list{2.0, 4.0, kInfNorm};
  int trials = 3;

  Tolerances tolerances;
  std::string output;

  /// Missing keys keep their defaults; unknown keys are rejected.
  static SuiteConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Throws ConfigError when a tolerance is not positive or a range is empty.
  void validate() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  nlohmann::json details;
  double seconds = 0.0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CriterionResult> criteria;

  bool passed() const;
  /// Deterministic part of the report; timings live under "timings" and are
  /// left out when `with_timings` is false.
  nlohmann::json to_json(bool with_timings = true) const;
};

inline constexpr int kCriterionCount = 10;
std::string criterion_name(int id);

/// Runs one acceptance criterion. Exceptions inside the criterion are
/// caught and reported as a failure.
CriterionResult run_criterion(int id, const SuiteConfig& config);
SuiteReport run_suite(const SuiteConfig& config);

/// Largest N with Gamma(N, 2) free of nonzero dual vectors of F_n.
std::int64_t exactness_bound(int n);

/// Rectangles R(j) with j_i >= 1 whose difference set R(2j - 1) is free of
/// nonzero dual vectors, among those with prod j_i <= cap.
std::vector<std::vector<std::int64_t>> convolution_rectangles(
    const LatticeGenerator& gen, std::int64_t cap);

/// A nonzero dual vector with the smallest max |k_i| (searched up to m).
FreqIndex shortest_dual_vector(const LatticeGenerator& gen);

}  // namespace trigdisc
