#include "trigdisc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "trigdisc/discretize.hpp"
#include "trigdisc/kernels.hpp"
#include "trigdisc/random.hpp"

namespace trigdisc {

// ---------------------------------------------------------------- oracles

std::vector<FreqIndex> oracle_dual_enumeration(const DualLattice& lattice,
                                               std::int64_t box) {
  if (box < 0) throw std::invalid_argument("oracle_dual_enumeration: box must be >= 0");
  const std::size_t d = lattice.dim();
  const auto m = static_cast<std::int64_t>(lattice.modulus());
  std::vector<std::int64_t> h(d);
  for (std::size_t i = 0; i < d; ++i) h[i] = ((lattice.generator()[i] % m) + m) % m;

  std::vector<FreqIndex> out;
  FreqIndex k(d);
  for (std::size_t i = 0; i < d; ++i) k[i] = -box;
  while (true) {
    __int128 s = 0;
    for (std::size_t i = 0; i < d; ++i) s += static_cast<__int128>(h[i]) * k[i];
    if (s % m == 0) out.push_back(k);
    std::size_t i = d;
    while (i > 0 && k[i - 1] == box) k[--i] = -box;
    if (i == 0) break;
    ++k[i - 1];
  }
  return out;
}

MinProductResult oracle_min_product(const std::vector<FreqIndex>& dual_vectors) {
  MinProductResult best{0, {}};
  for (const auto& k : dual_vectors) {
    if (k.is_zero()) continue;
    std::int64_t prod = 1;
    for (auto v : k) prod *= std::max<std::int64_t>(std::abs(v), 1);
    if (best.product == 0 || prod < best.product) best = {prod, k};
  }
  return best;
}

std::vector<double> oracle_grid_norm(const TrigPoly& f, double p, int levels) {
  if (levels < 2) throw std::invalid_argument("oracle_grid_norm: levels must be >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("oracle_grid_norm: p must be >= 1");
  const std::size_t d = f.dim();
  const auto kmax = f.max_abs_per_dim();
  const bool even = !std::isinf(p) && p == std::floor(p) &&
                    static_cast<long>(p) % 2 == 0;
  std::vector<std::size_t> finest(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto K = static_cast<std::size_t>(kmax[i]);
    finest[i] = even ? std::max<std::size_t>(static_cast<std::size_t>(p) * K + 1, 1)
                     : 8 * std::max<std::size_t>(K, 1);
  }
  std::vector<double> out;
  for (int level = 0; level < levels; ++level) {
    const std::size_t div = std::size_t{1} << (levels - 1 - level);
    std::vector<std::size_t> g(d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      g[i] = std::max<std::size_t>((finest[i] + div - 1) / div, 1);
      total *= g[i];
    }
    std::vector<std::size_t> j(d, 0);
    std::vector<double> x(d, 0.0);
    double acc = 0.0;
    for (std::size_t n = 0; n < total; ++n) {
      for (std::size_t i = 0; i < d; ++i)
        x[i] = kTwoPi * static_cast<double>(j[i]) / static_cast<double>(g[i]);
      const double a = std::abs(f(x));
      acc = std::isinf(p) ? std::max(acc, a) : acc + std::pow(a, p);
      for (std::size_t i = d; i-- > 0;) {
        if (++j[i] < g[i]) break;
        j[i] = 0;
      }
    }
    out.push_back(std::isinf(p) ? acc
                                : std::pow(acc / static_cast<double>(total), 1.0 / p));
  }
  return out;
}

// ----------------------------------------------------------------- config

namespace {

nlohmann::json p_to_json(double p) {
  return std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
}

double p_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfNorm;
    throw ConfigError("p must be a number or \"inf\"");
  }
  return j.get<double>();
}

std::string p_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SuiteConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "criteria") c.criteria = v.get<std::vector<int>>();
      else if (key == "gamma_n_min") c.gamma_n_min = v.get<int>();
      else if (key == "gamma_n_max") c.gamma_n_max = v.get<int>();
      else if (key == "brute_force_n_max") c.brute_force_n_max = v.get<int>();
      else if (key == "gamma_floor") c.gamma_floor = v.get<double>();
      else if (key == "cubature_fibonacci_n_max") c.cubature_fibonacci_n_max = v.get<int>();
      else if (key == "cubature_korobov_m_max") c.cubature_korobov_m_max = v.get<std::uint64_t>();
      else if (key == "convolution_pairs") c.convolution_pairs = v.get<int>();
      else if (key == "convolution_fibonacci_n_min") c.convolution_fibonacci_n_min = v.get<int>();
      else if (key == "convolution_fibonacci_n_max") c.convolution_fibonacci_n_max = v.get<int>();
      else if (key == "convolution_korobov_l_max") c.convolution_korobov_l_max = v.get<int>();
      else if (key == "shift_n_min") c.shift_n_min = v.get<int>();
      else if (key == "shift_n_max") c.shift_n_max = v.get<int>();
      else if (key == "growth_n") c.growth_n = v.get<int>();
      else if (key == "r_min") c.r_min = v.get<int>();
      else if (key == "kernel_j_max") c.kernel_j_max = v.get<int>();
      else if (key == "block_s_max") c.block_s_max = v.get<int>();
      else if (key == "korobov_l_min") c.korobov_l_min = v.get<std::int64_t>();
      else if (key == "korobov_l_max") c.korobov_l_max = v.get<std::int64_t>();
      else if (key == "korobov_d") c.korobov_d = v.get<std::vector<int>>();
      else if (key == "universal_n") c.universal_n = v.get<int>();
      else if (key == "p_list") {
        c.p_list.clear();
        for (const auto& p : v) c.p_list.push_back(p_from_json(p));
      } else if (key == "trials") c.trials = v.get<int>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "tolerances") {
        for (const auto& [tk, tv] : v.items()) {
          const double x = tv.get<double>();
          if (tk == "identity") c.tolerances.identity = x;
          else if (tk == "convolution") c.tolerances.convolution = x;
          else if (tk == "representation") c.tolerances.representation = x;
          else if (tk == "aliasing") c.tolerances.aliasing = x;
          else if (tk == "spread") c.tolerances.spread = x;
          else if (tk == "slack") c.tolerances.slack = x;
          else throw ConfigError("unknown tolerance '" + tk + "'");
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json SuiteConfig::to_json() const {
  auto ps = nlohmann::json::array();
  for (double p : p_list) ps.push_back(p_to_json(p));
  return {{"seed", seed},
          {"criteria", criteria},
          {"gamma_n_min", gamma_n_min},
          {"gamma_n_max", gamma_n_max},
          {"brute_force_n_max", brute_force_n_max},
          {"gamma_floor", gamma_floor},
          {"cubature_fibonacci_n_max", cubature_fibonacci_n_max},
          {"cubature_korobov_m_max", cubature_korobov_m_max},
          {"convolution_pairs", convolution_pairs},
          {"convolution_fibonacci_n_min", convolution_fibonacci_n_min},
          {"convolution_fibonacci_n_max", convolution_fibonacci_n_max},
          {"convolution_korobov_l_max", convolution_korobov_l_max},
          {"shift_n_min", shift_n_min},
          {"shift_n_max", shift_n_max},
          {"growth_n", growth_n},
          {"r_min", r_min},
          {"kernel_j_max", kernel_j_max},
          {"block_s_max", block_s_max},
          {"korobov_l_min", korobov_l_min},
          {"korobov_l_max", korobov_l_max},
          {"korobov_d", korobov_d},
          {"universal_n", universal_n},
          {"p_list", ps},
          {"trials", trials},
          {"tolerances",
           {{"identity", tolerances.identity},
            {"convolution", tolerances.convolution},
            {"representation", tolerances.representation},
            {"aliasing", tolerances.aliasing},
            {"spread", tolerances.spread},
            {"slack", tolerances.slack}}},
          {"output", output}};
}

void SuiteConfig::validate() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  const auto& t = tolerances;
  for (double x : {t.identity, t.convolution, t.representation, t.aliasing,
                   t.spread, t.slack})
    need(x > 0.0 && std::isfinite(x), "tolerances must be positive and finite");
  need(!criteria.empty(), "criteria list is empty");
  for (int id : criteria)
    need(id >= 1 && id <= kCriterionCount, "criterion ids are 1.." +
                                               std::to_string(kCriterionCount));
  need(gamma_n_min >= 3 && gamma_n_min <= gamma_n_max && gamma_n_max <= 90,
       "gamma n range must satisfy 3 <= n_min <= n_max <= 90");
  need(brute_force_n_max >= 3 && brute_force_n_max <= 22,
       "brute_force_n_max must be in [3, 22]");
  need(gamma_floor > 0.0, "gamma_floor must be positive");
  need(cubature_fibonacci_n_max >= 2 && cubature_fibonacci_n_max <= 16,
       "cubature_fibonacci_n_max must be in [2, 16]");
  need(cubature_korobov_m_max >= 2 && cubature_korobov_m_max <= 400,
       "cubature_korobov_m_max must be in [2, 400]");
  need(convolution_pairs >= 1, "convolution_pairs must be >= 1");
  need(convolution_fibonacci_n_min >= 3 &&
           convolution_fibonacci_n_min <= convolution_fibonacci_n_max &&
           convolution_fibonacci_n_max <= 20,
       "convolution Fibonacci range must satisfy 3 <= min <= max <= 20");
  need(convolution_korobov_l_max >= 1 && convolution_korobov_l_max <= 8,
       "convolution_korobov_l_max must be in [1, 8]");
  need(shift_n_min >= 2 && shift_n_min <= shift_n_max && shift_n_max <= 17,
       "shift n range must satisfy 2 <= min <= max <= 17");
  need(growth_n >= 5 && growth_n <= 17, "growth_n must be in [5, 17]");
  need(r_min >= 1 && r_min <= 12, "r_min must be in [1, 12]");
  need(kernel_j_max >= 1 && kernel_j_max <= 4096, "kernel_j_max must be in [1, 4096]");
  need(block_s_max >= 2 && block_s_max <= 20, "block_s_max must be in [2, 20]");
  need(korobov_l_min >= 1 && korobov_l_min < korobov_l_max && korobov_l_max <= 16,
       "Korobov L range must satisfy 1 <= min < max <= 16");
  need(!korobov_d.empty(), "korobov_d is empty");
  for (int d : korobov_d) need(d >= 2 && d <= 5, "korobov_d entries must be in [2, 5]");
  need(universal_n >= 3 && universal_n <= 17, "universal_n must be in [3, 17]");
  need(!p_list.empty(), "p_list is empty");
  for (double p : p_list) need(p >= 1.0, "p_list entries must be >= 1");
  need(trials >= 1, "trials must be >= 1");
}

// -------------------------------------------------------------- helpers

std::int64_t exactness_bound(int n) {
  return min_product(fibonacci_generator(n).dual()).product - 1;
}

std::vector<std::vector<std::int64_t>> convolution_rectangles(
    const LatticeGenerator& gen, std::int64_t cap) {
  const std::size_t d = gen.h.size();
  const DualLattice dual = gen.dual();
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& j : hyperbolic_rectangles(std::max<std::int64_t>(cap, 1), d)) {
    std::vector<std::int64_t> box(d);
    for (std::size_t i = 0; i < d; ++i) box[i] = 2 * j[i] - 1;
    if (is_exact_on(dual, build_rectangle(box))) out.push_back(j);
  }
  return out;
}

FreqIndex shortest_dual_vector(const LatticeGenerator& gen) {
  const DualLattice dual = gen.dual();
  for (std::int64_t box = 1;; box *= 2) {
    FreqIndex best;
    std::int64_t best_norm = 0;
    for (const auto& k : oracle_dual_enumeration(dual, box)) {
      if (k.is_zero()) continue;
      if (best_norm == 0 || k.max_abs() < best_norm) {
        best = k;
        best_norm = k.max_abs();
      }
    }
    if (best_norm > 0) return best;
    if (box > static_cast<std::int64_t>(gen.m))
      throw std::runtime_error("shortest_dual_vector: none found");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double max_coefficient_diff(const TrigPoly& a, const TrigPoly& b) {
  double e = 0.0;
  const TrigPoly diff = a - b;
  for (const auto& [k, c] : diff.terms()) e = std::max(e, std::abs(c));
  return e;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return kInfNorm;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : kInfNorm;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Largest r in [r_min, ...] with 2^r * divisor <= bound; the list of r.
std::vector<int> admissible_r(int r_min, std::int64_t bound, std::int64_t divisor) {
  std::vector<int> rs;
  for (int r = r_min; r < 40 && (std::int64_t{1} << r) * divisor <= bound; ++r)
    rs.push_back(r);
  return rs;
}

// ---- 1: dual-lattice exactness
CriterionResult criterion_gamma(const SuiteConfig& c) {
  CriterionResult res;
  nlohmann::json det;
  bool ok = true;
  std::vector<std::string> notes;

  // Oracle first: exhaustive box enumeration.
  auto brute = nlohmann::json::array();
  for (int n = 3; n <= c.brute_force_n_max; ++n) {
    const auto gen = fibonacci_generator(n);
    const auto oracle =
        oracle_min_product(oracle_dual_enumeration(gen.dual(), static_cast<std::int64_t>(gen.m)));
    const auto pruned = min_product(gen.dual());
    const bool agree = oracle.product == pruned.product;
    ok = ok && agree;
    brute.push_back({{"n", n}, {"oracle", oracle.product}, {"pruned", pruned.product},
                     {"minimizer", std::vector<std::int64_t>(pruned.minimizer.begin(),
                                                             pruned.minimizer.end())}});
    if (!agree) notes.push_back("pruned != brute force at n=" + std::to_string(n));
  }
  det["bruteForce"] = brute;

  const std::int64_t expected[] = {0, 1, 2};
  for (int n = 3; n <= 5; ++n) {
    const auto row = gamma_scan(n);
    if (row.n_max != expected[n - 3]) {
      ok = false;
      notes.push_back("N_max(" + std::to_string(n) + ") = " + std::to_string(row.n_max));
    }
  }

  auto rows = nlohmann::json::array();
  double floor = kInfNorm;
  int argmin = 0;
  for (const auto& row : gamma_scan(c.gamma_n_min, c.gamma_n_max)) {
    rows.push_back({{"n", row.n}, {"b_n", row.b_n}, {"N_max", row.n_max}, {"ratio", row.ratio}});
    if (row.ratio < floor) {
      floor = row.ratio;
      argmin = row.n;
    }
  }
  det["scan"] = rows;
  det["floor"] = floor;
  det["floorAt"] = argmin;
  if (floor < c.gamma_floor) {
    ok = false;
    notes.push_back("floor below " + fmt(c.gamma_floor));
  }
  res.passed = ok;
  res.details = det;
  res.summary = "N_max(3..5) = 0,1,2; min N_max/b_n over n=" +
                std::to_string(c.gamma_n_min) + ".." + std::to_string(c.gamma_n_max) +
                " is " + fmt(floor) + " at n=" + std::to_string(argmin) +
                "; pruned = brute force for n<=" + std::to_string(c.brute_force_n_max);
  for (const auto& s : notes) res.summary += "; " + s;
  return res;
}

// ---- 2: cubature identity
// max |S(k) - [k in dual]| over |k_i| <= 2m, walking the spectrum with
// incremental residues.
double exhaustive_identity_error(const LatticeGenerator& gen,
                                 const std::vector<Complex>& spec, std::size_t& count) {
  const std::size_t d = gen.h.size();
  const std::uint64_t m = gen.m;
  const std::int64_t box = 2 * static_cast<std::int64_t>(m);
  std::vector<std::uint64_t> h(d);
  for (std::size_t i = 0; i < d; ++i)
    h[i] = static_cast<std::uint64_t>(((gen.h[i] % static_cast<std::int64_t>(m)) +
                                       static_cast<std::int64_t>(m)) %
                                      static_cast<std::int64_t>(m));
  const std::uint64_t start = (m - static_cast<std::uint64_t>(box) % m) % m;
  double worst = 0.0;
  std::function<void(std::size_t, std::size_t, std::uint64_t)> rec =
      [&](std::size_t i, std::size_t base, std::uint64_t r) {
        std::uint64_t idx = start;
        std::uint64_t ri = (r + h[i] * idx) % m;
        if (i + 1 == d) {
          const Complex* row = spec.data() + base * m;
          for (std::int64_t k = -box; k <= box; ++k) {
            const double want = ri == 0 ? 1.0 : 0.0;
            const Complex z = row[idx];
            worst = std::max(worst, (z.real() - want) * (z.real() - want) + z.imag() * z.imag());
            if (++idx == m) idx = 0;
            ri += h[i];
            if (ri >= m) ri -= m;
          }
          count += static_cast<std::size_t>(2 * box + 1);
          return;
        }
        for (std::int64_t k = -box; k <= box; ++k) {
          rec(i + 1, base * m + idx, ri);
          if (++idx == m) idx = 0;
          ri += h[i];
          if (ri >= m) ri -= m;
        }
      };
  rec(0, 0, 0);
  return std::sqrt(worst);
}

CriterionResult criterion_cubature(const SuiteConfig& c) {
  CriterionResult res;
  std::vector<LatticeGenerator> gens;
  for (int n = 2; n <= c.cubature_fibonacci_n_max; ++n) gens.push_back(fibonacci_generator(n));
  for (std::size_t d : {2, 3, 4})
    for (std::int64_t L = 1;; ++L) {
      const auto k = korobov_search(L, d);
      if (k.m > c.cubature_korobov_m_max) break;
      gens.push_back(k.generator());
    }

  bool ok = true;
  double worst = 0.0;
  auto rows = nlohmann::json::array();
  Rng rng(derive_seed(c.seed, 2));
  for (const auto& gen : gens) {
    const PointSet pts = lattice_points(gen);
    std::size_t count = 0;
    const double err = exhaustive_identity_error(gen, point_set_spectrum(pts), count);
    // Spot checks through the point-sum and coefficient paths.
    double spot = 0.0;
    const auto box = 2 * static_cast<std::int64_t>(gen.m);
    for (int t = 0; t < 64; ++t) {
      FreqIndex k(gen.h.size());
      for (std::size_t i = 0; i < k.dim(); ++i)
        k[i] = static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(2 * box + 1)) - box;
      if (t == 0) k = shortest_dual_vector(gen);
      const double want = dual_contains(gen.dual(), k) ? 1.0 : 0.0;
      const TrigPoly e = TrigPoly::monomial(k);
      spot = std::max({spot, std::abs(cubature(pts, e) - want),
                       std::abs(cubature_spectral(pts, e) - want)});
    }
    worst = std::max({worst, err, spot});
    ok = ok && err <= c.tolerances.identity && spot <= c.tolerances.identity;
    rows.push_back({{"generator", gen.describe()}, {"frequencies", count},
                    {"maxError", err}, {"spotError", spot}});
  }
  res.passed = ok;
  res.details = {{"lattices", rows}, {"maxError", worst}};
  res.summary = std::to_string(gens.size()) + " lattices, max |S(k) - [k in L]| = " +
                fmt(worst) + " over |k_i| <= 2m";
  return res;
}

// ---- 3: discretized convolution
CriterionResult criterion_convolution(const SuiteConfig& c) {
  struct Case {
    LatticeGenerator gen;
    PointSet pts;
    std::vector<std::vector<std::int64_t>> rects;
  };
  std::vector<Case> fib, kor;
  for (int n = c.convolution_fibonacci_n_min; n <= c.convolution_fibonacci_n_max; ++n) {
    const auto gen = fibonacci_generator(n);
    fib.push_back({gen, lattice_points(gen), convolution_rectangles(gen, exactness_bound(n))});
  }
  for (int L = 1; L <= c.convolution_korobov_l_max; ++L) {
    const auto gen = korobov_search(L, 3).generator();
    kor.push_back({gen, lattice_points(gen), convolution_rectangles(gen, 4 * L)});
  }

  Rng rng(derive_seed(c.seed, 3));
  double worst = 0.0;
  int fib_pairs = 0, kor_pairs = 0;
  for (int i = 0; i < c.convolution_pairs; ++i) {
    auto& pool = (i % 2 == 0) ? fib : kor;
    const Case& cs = pool[static_cast<std::size_t>(i / 2) % pool.size()];
    if (cs.rects.empty()) continue;
    const auto& j = cs.rects[rng.next() % cs.rects.size()];
    const FreqSet q = build_rectangle(j);
    const TrigPoly f = random_poly(q, derive_seed(c.seed, 3, 2 * static_cast<std::uint64_t>(i)));
    const TrigPoly g = random_poly(q, derive_seed(c.seed, 3, 2 * static_cast<std::uint64_t>(i) + 1));
    worst = std::max(worst, max_coefficient_diff(discretized_convolution(f, g, cs.pts),
                                                 convolve(f, g)));
    ++((i % 2 == 0) ? fib_pairs : kor_pairs);
  }

  // Aliasing witnesses: a rectangle whose difference set holds a dual vector.
  double weakest_alias = kInfNorm;
  bool alias_ok = true;
  auto witnesses = nlohmann::json::array();
  std::uint64_t wi = 0;
  for (const auto* pool : {&fib, &kor})
    for (const auto& cs : *pool) {
      const FreqIndex k = shortest_dual_vector(cs.gen);
      std::vector<std::int64_t> j(k.dim()), box(k.dim());
      for (std::size_t i = 0; i < k.dim(); ++i) {
        j[i] = (std::abs(k[i]) + 1) / 2 + 1;
        box[i] = 2 * j[i] - 1;
      }
      const bool outside = !is_exact_on(cs.gen, build_rectangle(box));
      const FreqSet q = build_rectangle(j);
      const TrigPoly f = random_poly(q, derive_seed(c.seed, 31, 2 * wi));
      const TrigPoly g = random_poly(q, derive_seed(c.seed, 31, 2 * wi + 1));
      ++wi;
      const double err = max_coefficient_diff(discretized_convolution(f, g, cs.pts),
                                              convolve(f, g));
      weakest_alias = std::min(weakest_alias, err);
      alias_ok = alias_ok && outside && err >= c.tolerances.aliasing;
      witnesses.push_back({{"generator", cs.gen.describe()}, {"j", j}, {"error", err}});
    }

  CriterionResult res;
  const bool enough = fib_pairs + kor_pairs == c.convolution_pairs;
  res.passed = enough && worst <= c.tolerances.convolution && alias_ok;
  res.details = {{"pairsFibonacci", fib_pairs}, {"pairsKorobov", kor_pairs},
                 {"maxError", worst}, {"witnesses", witnesses},
                 {"weakestAliasingError", weakest_alias}};
  res.summary = std::to_string(fib_pairs + kor_pairs) + " pairs, max error " + fmt(worst) +
                "; aliasing witnesses min error " + fmt(weakest_alias);
  return res;
}

// ---- 4: Vallee Poussin shift operators
CriterionResult criterion_vp_shift(const SuiteConfig& c) {
  double max1 = 0.0, max2 = 0.0, maxinf = 0.0;
  std::size_t cases = 0;
  auto rows = nlohmann::json::array();
  bool converged = true;
  for (int n = c.shift_n_min; n <= c.shift_n_max; ++n) {
    const auto gen = fibonacci_generator(n);
    const PointSet pts = lattice_points(gen);
    for (std::int64_t a = 1; a <= static_cast<std::int64_t>(gen.m); a *= 2)
      for (std::int64_t b = 1; b <= static_cast<std::int64_t>(gen.m); b *= 2) {
        if (!is_exact_on(gen, build_rectangle({2 * a, 2 * b}))) break;
        const std::vector<std::int64_t> j{a, b};
        const ShiftOperator op(tensor_kernel(KernelKind::ValleePoussin, j), pts,
                               separable_tensor(KernelKind::ValleePoussin, j));
        const double n1 = op_norm(op, 1.0).value;
        const auto r2 = op_norm(op, 2.0);
        const double ninf = op_norm(op, kInfNorm).value;
        converged = converged && r2.converged;
        max1 = std::max(max1, n1);
        max2 = std::max(max2, r2.value);
        maxinf = std::max(maxinf, ninf);
        ++cases;
        rows.push_back({{"n", n}, {"j", j}, {"p1", n1}, {"p2", r2.value}, {"pinf", ninf}});
      }
  }
  CriterionResult res;
  res.passed = cases > 0 && converged && max1 <= 9.0 && max2 <= 9.0 && maxinf <= 9.0;
  res.details = {{"cases", rows}, {"max1", max1}, {"max2", max2}, {"maxInf", maxinf},
                 {"powerIterationConverged", converged}};
  res.summary = std::to_string(cases) + " admissible dyadic j; max norms p=1: " + fmt(max1) +
                ", p=2: " + fmt(max2) + ", p=inf: " + fmt(maxinf) + " (bound 9)";
  return res;
}

// ---- 5: growth of V_{Q_r, b_n}
CriterionResult criterion_hc_growth(const SuiteConfig& c) {
  CriterionResult res;
  const auto gen = fibonacci_generator(c.growth_n);
  const PointSet pts = lattice_points(gen);
  const auto rs = admissible_r(c.r_min, exactness_bound(c.growth_n), 1);
  if (rs.size() < 2) {
    res.summary = "fewer than two admissible r";
    return res;
  }
  std::vector<double> q1, q2, qinf;
  auto rows = nlohmann::json::array();
  bool converged = true;
  for (int r : rs) {
    const ShiftOperator op(hc_vallee_poussin(r, 2), pts, separable_hc_vallee_poussin(r, 2));
    const double n1 = op_norm(op, 1.0).value;
    const auto r2 = op_norm(op, 2.0);
    const double ninf = op_norm(op, kInfNorm).value;
    converged = converged && r2.converged;
    const double rd = r;
    q1.push_back(n1 / rd);
    q2.push_back(r2.value / std::sqrt(rd));
    qinf.push_back(ninf / rd);
    rows.push_back({{"r", r}, {"p1", n1}, {"p2", r2.value}, {"pinf", ninf},
                    {"p1_over_r", q1.back()}, {"p2_over_sqrt_r", q2.back()},
                    {"pinf_over_r", qinf.back()}});
  }
  // The a = e_1 probe at the largest r.
  const int rmax = rs.back();
  const ShiftOperator op(hc_vallee_poussin(rmax, 2), pts, separable_hc_vallee_poussin(rmax, 2));
  std::vector<Complex> e1(gen.m);
  e1[0] = 1.0;
  const TrigPoly shifted = apply_shift(op, SampleVector(e1));
  const double b = static_cast<double>(gen.m);
  auto probes = nlohmann::json::array();
  bool probe_ok = true;
  for (double p : {1.0, 2.0, kInfNorm}) {
    const double got = lp_norm(shifted, p);
    const double scale = std::isinf(p) ? 1.0
                                       : std::pow(b, 1.0 - 1.0 / p) *
                                             std::pow(std::log(b), 1.0 / p) / b;
    const double ratio = got / scale;
    probe_ok = probe_ok && ratio >= 1.0 / c.tolerances.spread && ratio <= c.tolerances.spread;
    probes.push_back({{"p", p_to_json(p)}, {"norm", got}, {"scale", scale}, {"ratio", ratio}});
  }
  const double s1 = spread(q1), s2 = spread(q2), sinf = spread(qinf);
  res.passed = converged && s1 <= c.tolerances.spread && s2 <= c.tolerances.spread &&
               sinf <= c.tolerances.spread && probe_ok;
  res.details = {{"n", c.growth_n}, {"b_n", gen.m}, {"r", rs}, {"rows", rows},
                 {"spread", {{"p1", s1}, {"p2", s2}, {"pinf", sinf}}},
                 {"probe", probes}, {"powerIterationConverged", converged}};
  res.summary = "r=" + std::to_string(rs.front()) + ".." + std::to_string(rmax) +
                ", spread of norm/r^theta: p=1 " + fmt(s1) + ", p=2 " + fmt(s2) +
                ", p=inf " + fmt(sinf) + "; e_1 probe ratios " +
                fmt(probes[0]["ratio"].get<double>()) + ", " +
                fmt(probes[1]["ratio"].get<double>()) + ", " +
                fmt(probes[2]["ratio"].get<double>());
  return res;
}

// ---- 6: growth of Delta V_{Q_r, b_n} in L_2
CriterionResult criterion_delta_growth(const SuiteConfig& c) {
  CriterionResult res;
  const auto gen = fibonacci_generator(c.growth_n);
  const PointSet pts = lattice_points(gen);
  const auto rs = admissible_r(std::max(c.r_min, 1), exactness_bound(c.growth_n), 4);
  if (rs.size() < 2) {
    res.summary = "fewer than two admissible r";
    return res;
  }
  std::vector<double> q;
  auto rows = nlohmann::json::array();
  bool converged = true;
  for (int r : rs) {
    const ShiftOperator op(delta_hc_vp(r, 2), pts, separable_delta_hc_vp(r, 2));
    const auto r2 = op_norm(op, 2.0);
    converged = converged && r2.converged;
    q.push_back(r2.value / std::sqrt(static_cast<double>(r)));
    rows.push_back({{"r", r}, {"p2", r2.value}, {"p2_over_sqrt_r", q.back()},
                    {"iterations", r2.iterations}});
  }
  const double s = spread(q);
  res.passed = converged && s <= c.tolerances.spread;
  res.details = {{"n", c.growth_n}, {"r", rs}, {"rows", rows}, {"spread", s},
                 {"powerIterationConverged", converged}};
  res.summary = "r=" + std::to_string(rs.front()) + ".." + std::to_string(rs.back()) +
                ", norm/sqrt(r) in [" + fmt(min_of(q)) + ", " + fmt(max_of(q)) +
                "], spread " + fmt(s);
  return res;
}

// ---- 7: Fibonacci sums
CriterionResult criterion_fibonacci_sums(const SuiteConfig& c) {
  CriterionResult res;
  const auto rs = admissible_r(c.r_min, exactness_bound(c.growth_n), 1);
  if (rs.size() < 2) {
    res.summary = "fewer than two admissible r";
    return res;
  }
  std::vector<double> q1, q2, qinf, qauto;
  auto rows = nlohmann::json::array();
  for (int r : rs) {
    const auto fs = fibonacci_sum(r, c.growth_n);
    const auto as = fibonacci_autocorrelation_sum(r, c.growth_n);
    const double rd = r;
    q1.push_back(fs.norm(1.0) / rd);
    q2.push_back(fs.norm(2.0) / rd);
    qinf.push_back(fs.norm(kInfNorm) / rd);
    qauto.push_back(as.max() / rd);
    rows.push_back({{"r", r}, {"grid", fs.grid.to_json()},
                    {"fsv_p1_over_r", q1.back()}, {"fsv_p2_over_r", q2.back()},
                    {"fsv_pinf_over_r", qinf.back()}, {"auto_max_over_r", qauto.back()}});
  }
  nlohmann::json bounds;
  bool ok = true;
  for (const auto& [name, v] : {std::pair{"p1", &q1}, std::pair{"p2", &q2},
                                std::pair{"pinf", &qinf}, std::pair{"autocorrelation", &qauto}}) {
    const double lo = min_of(*v), hi = max_of(*v);
    bounds[name] = {{"c", lo}, {"C", hi}, {"spread", spread(*v)}};
    ok = ok && lo > 0.0 && spread(*v) <= c.tolerances.spread;
  }
  res.passed = ok;
  res.details = {{"n", c.growth_n}, {"r", rs}, {"rows", rows}, {"bounds", bounds},
                 {"gridEstimated", true}, {"oversampling", kDefaultOversampling}};
  res.summary = "||FSV||_p / r in [" + fmt(bounds["p1"]["c"].get<double>()) + ", " +
                fmt(bounds["p1"]["C"].get<double>()) + "] (p=1), [" +
                fmt(bounds["p2"]["c"].get<double>()) + ", " +
                fmt(bounds["p2"]["C"].get<double>()) + "] (p=2), [" +
                fmt(bounds["pinf"]["c"].get<double>()) + ", " +
                fmt(bounds["pinf"]["C"].get<double>()) + "] (p=inf); C* = " +
                fmt(bounds["autocorrelation"]["C"].get<double>());
  return res;
}

// ---- 8: kernel identities
CriterionResult criterion_kernels(const SuiteConfig& c) {
  const double tol = c.tolerances.identity;
  double fejer1 = 0.0, fejerinf = 0.0, vp_identity = 0.0, vp1 = 0.0;
  for (std::int64_t j = 1; j <= c.kernel_j_max; ++j) {
    const TrigPoly K = fejer(j);
    fejer1 = std::max(fejer1, std::abs(lp_norm(K, 1.0) - 1.0));
    fejerinf = std::max(fejerinf, std::abs(lp_norm(K, kInfNorm) - static_cast<double>(j)) /
                                      static_cast<double>(j));
    const TrigPoly V = vallee_poussin(j);
    vp_identity = std::max(vp_identity,
                           max_coefficient_diff(V, 2.0 * fejer(2 * j) - K));
    vp1 = std::max(vp1, lp_norm(V, 1.0));
  }
  double telescoping = 0.0;
  TrigPoly partial(1);
  for (int s = 0; s <= c.block_s_max; ++s) {
    partial += block_a(s);
    telescoping = std::max(telescoping, max_coefficient_diff(partial, vallee_poussin_dyadic(s)));
  }
  bool orthogonal = true;
  for (int s = 0; s <= c.block_s_max; ++s)
    for (int t = s + 2; t <= c.block_s_max; ++t)
      orthogonal = orthogonal && convolve(block_a(s), block_a(t)).empty();

  CriterionResult res;
  res.passed = fejer1 <= tol && fejerinf <= tol && vp_identity <= tol &&
               telescoping <= tol && orthogonal && vp1 <= 3.0;
  res.details = {{"fejerL1Error", fejer1}, {"fejerSupRelError", fejerinf},
                 {"vpIdentityError", vp_identity}, {"telescopingError", telescoping},
                 {"blocksOrthogonal", orthogonal}, {"maxVpL1", vp1},
                 {"jMax", c.kernel_j_max}, {"sMax", c.block_s_max}};
  res.summary = "j<=" + std::to_string(c.kernel_j_max) + ": ||K_j||_1 err " + fmt(fejer1) +
                ", ||K_j||_inf rel err " + fmt(fejerinf) + ", V_j identity err " +
                fmt(vp_identity) + ", telescoping err " + fmt(telescoping) +
                ", max ||V_j||_1 = " + fmt(vp1);
  return res;
}

// ---- 9: Korobov search
CriterionResult criterion_korobov(const SuiteConfig& c) {
  CriterionResult res;
  const auto base = korobov_search(2, 3);
  // Independent exhaustive check over Gamma(2,3) without the search's Horner loop.
  const DualLattice dual = base.generator().dual();
  std::size_t checked = 0;
  bool exhaustive = true;
  for (const auto& k : build_hyperbolic_cross(2, 3)) {
    if (k.is_zero()) continue;
    ++checked;
    exhaustive = exhaustive && !dual.contains(k);
  }
  bool ok = base.m == 251 && base.verified && exhaustive;

  auto rows = nlohmann::json::array();
  std::vector<double> trend;
  for (int d : c.korobov_d)
    for (std::int64_t L = 1; L <= c.korobov_l_max; ++L) {
      const auto k = korobov_search(L, static_cast<std::size_t>(d));
      const auto dd = static_cast<std::uint64_t>(d);
      bool smallest = is_prime(k.m) && dd * k.card_gamma < k.m - 1;
      for (std::uint64_t q = dd * k.card_gamma + 2; q < k.m && smallest; ++q)
        smallest = !is_prime(q);
      ok = ok && smallest && k.verified;
      const double Ld = static_cast<double>(L);
      const double scale = Ld * std::pow(std::log(Ld) + 1.0, d - 1);
      nlohmann::json row = k.to_json();
      row["ratio"] = static_cast<double>(k.m) / scale;
      rows.push_back(row);
      if (d == 3 && L >= c.korobov_l_min) trend.push_back(static_cast<double>(k.m) / scale);
    }
  const double s = trend.empty() ? kInfNorm : spread(trend);
  ok = ok && s <= c.tolerances.spread;
  res.passed = ok;
  res.details = {{"base", base.to_json()}, {"exhaustiveChecked", checked},
                 {"searches", rows}, {"trendSpread", s},
                 {"C", trend.empty() ? 0.0 : max_of(trend)}};
  res.summary = "korobov_search(2,3) = (m=" + std::to_string(base.m) +
                ", h=" + std::to_string(base.h) + "), " + std::to_string(checked) +
                " nonzero frequencies checked; m/(L(ln L+1)^2) for L=" +
                std::to_string(c.korobov_l_min) + ".." + std::to_string(c.korobov_l_max) +
                " in [" + fmt(trend.empty() ? 0.0 : min_of(trend)) + ", " +
                fmt(trend.empty() ? 0.0 : max_of(trend)) + "]";
  return res;
}

// ---- 10: universal discretization
CriterionResult criterion_universal(const SuiteConfig& c) {
  CriterionResult res;
  const auto gen = fibonacci_generator(c.universal_n);
  const PointSet pts = lattice_points(gen);
  const std::int64_t N = universal_collection_bound(gen, 2);
  if (N < 1) {
    res.summary = "empty collection";
    return res;
  }
  const auto collection = hyperbolic_rectangles(N, 2);
  bool ok = true;
  auto per_p = nlohmann::json::array();
  std::string summary = std::to_string(collection.size()) + " rectangles (N=" +
                        std::to_string(N) + ")";
  for (std::size_t pi = 0; pi < c.p_list.size(); ++pi) {
    const double p = c.p_list[pi];
    const auto rep = universal_check(collection, pts, p, c.trials, derive_seed(c.seed, 10, pi));
    bool pass = rep.max_representation_error <= c.tolerances.representation &&
                std::isfinite(rep.worst_lower) && std::isfinite(rep.worst_upper) &&
                rep.worst_lower > 0.0;
    if (p == 2.0)
      pass = pass && std::abs(rep.worst_lower - 1.0) <= c.tolerances.representation &&
             std::abs(rep.worst_upper - 1.0) <= c.tolerances.representation;
    // Norm-implied bounds, with slack for grid-estimated norms.
    bool bounded = true;
    for (const auto& r : rep.rectangles)
      bounded = bounded && r.lower >= (1.0 - c.tolerances.slack) * r.bound_lower &&
                r.upper <= (1.0 + c.tolerances.slack) * r.bound_upper;
    pass = pass && bounded;
    ok = ok && pass;
    auto j = rep.to_json();
    j["passed"] = pass;
    per_p.push_back(j);
    summary += "; p=" + p_label(p) + ": [" + fmt(rep.worst_lower) + ", " +
               fmt(rep.worst_upper) + "]";
  }
  res.passed = ok;
  res.details = {{"n", c.universal_n}, {"b_n", gen.m}, {"N", N},
                 {"collectionSize", collection.size()}, {"results", per_p}};
  res.summary = summary;
  return res;
}

}  // namespace

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "dual-lattice exactness scan";
    case 2: return "cubature identity";
    case 3: return "discretized convolution";
    case 4: return "Vallee Poussin shift operator norms";
    case 5: return "hyperbolic cross operator growth";
    case 6: return "hyperbolic cross increment growth";
    case 7: return "Fibonacci sums";
    case 8: return "kernel identities";
    case 9: return "Korobov search";
    case 10: return "universal two-sided discretization";
  }
  throw std::invalid_argument("unknown criterion " + std::to_string(id));
}

CriterionResult run_criterion(int id, const SuiteConfig& config) {
  const auto t0 = Clock::now();
  CriterionResult res;
  try {
    switch (id) {
      case 1: res = criterion_gamma(config); break;
      case 2: res = criterion_cubature(config); break;
      case 3: res = criterion_convolution(config); break;
      case 4: res = criterion_vp_shift(config); break;
      case 5: res = criterion_hc_growth(config); break;
      case 6: res = criterion_delta_growth(config); break;
      case 7: res = criterion_fibonacci_sums(config); break;
      case 8: res = criterion_kernels(config); break;
      case 9: res = criterion_korobov(config); break;
      case 10: res = criterion_universal(config); break;
      default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    res.passed = false;
    res.summary = std::string("error: ") + e.what();
  }
  res.id = id;
  res.name = criterion_name(id);
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteReport rep;
  rep.config = config;
  for (int id : config.criteria) rep.criteria.push_back(run_criterion(id, config));
  return rep;
}

bool SuiteReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

nlohmann::json SuiteReport::to_json(bool with_timings) const {
  auto list = nlohmann::json::array();
  nlohmann::json timings = nlohmann::json::object();
  double total = 0.0;
  for (const auto& c : criteria) {
    list.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed},
                    {"summary", c.summary}, {"details", c.details}});
    timings[std::to_string(c.id)] = c.seconds;
    total += c.seconds;
  }
  nlohmann::json j{{"version", kVersion},
                   {"rngAlgorithm", kRngAlgorithm},
                   {"seed", config.seed},
                   {"config", config.to_json()},
                   {"passed", passed()},
                   {"criteria", list}};
  if (with_timings) {
    timings["total"] = total;
    j["timings"] = timings;
  }
  return j;
}

}  // namespace trigdisc
