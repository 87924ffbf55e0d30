#include "trigdisc/lattices.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "trigdisc/trigpoly.hpp"

namespace trigdisc {

namespace {

using i128 = __int128;

std::uint64_t mod(i128 v, std::uint64_t m) {
  const i128 mm = static_cast<i128>(m);
  i128 r = v % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

// Inverse of a mod m, or nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m) {
  i128 t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  return mod(t, m);
}

}  // namespace

std::uint64_t fibonacci_number(int n) {
  if (n < 0) throw std::invalid_argument("fibonacci_number: n must be >= 0");
  std::uint64_t prev = 1, cur = 1;
  for (int i = 2; i <= n; ++i) {
    std::uint64_t next;
    if (__builtin_add_overflow(prev, cur, &next))
      throw std::overflow_error("fibonacci_number: b_" + std::to_string(n) +
                                " exceeds 64-bit range");
    prev = cur;
    cur = next;
  }
  return cur;
}

DualLattice::DualLattice(std::uint64_t m, std::vector<std::int64_t> h)
    : m_(m), h_(std::move(h)) {
  if (m_ == 0) throw std::invalid_argument("DualLattice: modulus must be >= 1");
  if (h_.empty() || h_.size() > kMaxDim)
    throw std::invalid_argument("DualLattice: bad generator length");
}

std::uint64_t DualLattice::residue(const FreqIndex& k) const {
  if (k.dim() != h_.size())
    throw std::invalid_argument("DualLattice: frequency of wrong dimension");
  i128 s = 0;
  for (std::size_t i = 0; i < h_.size(); ++i)
    s += static_cast<i128>(h_[i]) * static_cast<i128>(k[i]);
  return mod(s, m_);
}

bool dual_contains(const DualLattice& lattice, const FreqIndex& k) {
  return lattice.contains(k);
}

std::string LatticeGenerator::describe() const {
  std::ostringstream os;
  if (family == Family::Fibonacci) {
    os << "fibonacci(n=" << fibonacci_index << ", b_n=" << m << ")";
  } else {
    os << "korobov(m=" << m << ", h=(";
    for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
    os << "))";
  }
  return os.str();
}

nlohmann::json LatticeGenerator::to_json() const {
  nlohmann::json j{{"family", family == Family::Fibonacci ? "fibonacci" : "korobov"},
                   {"m", m},
                   {"h", h}};
  if (family == Family::Fibonacci) j["n"] = fibonacci_index;
  return j;
}

PointSet::PointSet(std::size_t dim, std::uint64_t denominator,
                   std::vector<std::int64_t> numerators,
                   std::optional<LatticeGenerator> generator)
    : dim_(dim),
      m_(denominator),
      numerators_(std::move(numerators)),
      gen_(std::move(generator)) {
  if (dim_ == 0 || dim_ > kMaxDim)
    throw std::invalid_argument("PointSet: unsupported dimension");
  if (m_ == 0) throw std::invalid_argument("PointSet: denominator must be >= 1");
  if (numerators_.empty() || numerators_.size() % dim_ != 0)
    throw std::invalid_argument("PointSet: numerator count not a multiple of dim");
  for (auto& q : numerators_) q = static_cast<std::int64_t>(mod(q, m_));
  if (!gen_ && size() == m_) {
    bool rank1 = true;
    for (std::size_t nu = 0; nu < size() && rank1; ++nu)
      for (std::size_t i = 0; i < dim_ && rank1; ++i)
        rank1 = static_cast<std::uint64_t>(numerator(nu, i)) ==
                mod(static_cast<i128>(nu + 1) * numerator(0, i), m_);
    if (rank1)
      gen_ = korobov_generator(m_, std::vector<std::int64_t>(
                                       numerators_.begin(),
                                       numerators_.begin() + static_cast<long>(dim_)));
  }
}

double PointSet::coord(std::size_t nu, std::size_t i) const {
  return kTwoPi * static_cast<double>(numerator(nu, i)) / static_cast<double>(m_);
}

std::vector<double> PointSet::point(std::size_t nu) const {
  std::vector<double> x(dim_);
  for (std::size_t i = 0; i < dim_; ++i) x[i] = coord(nu, i);
  return x;
}

nlohmann::json PointSet::to_json() const {
  auto pts = nlohmann::json::array();
  for (std::size_t nu = 0; nu < size(); ++nu) {
    std::vector<std::int64_t> q(numerators_.begin() + static_cast<long>(nu * dim_),
                                numerators_.begin() + static_cast<long>((nu + 1) * dim_));
    pts.push_back(q);
  }
  nlohmann::json j{{"dim", dim_}, {"denominator", m_}, {"numerators", pts}};
  if (gen_) j["generator"] = gen_->to_json();
  return j;
}

PointSet PointSet::from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  const auto m = j.at("denominator").get<std::uint64_t>();
  std::vector<std::int64_t> q;
  for (const auto& row : j.at("numerators")) {
    const auto v = row.get<std::vector<std::int64_t>>();
    if (v.size() != dim) throw std::invalid_argument("PointSet JSON: bad row length");
    q.insert(q.end(), v.begin(), v.end());
  }
  std::optional<LatticeGenerator> gen;
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    LatticeGenerator lg;
    lg.family = g.at("family") == "fibonacci" ? LatticeGenerator::Family::Fibonacci
                                              : LatticeGenerator::Family::Korobov;
    lg.m = g.at("m").get<std::uint64_t>();
    lg.h = g.at("h").get<std::vector<std::int64_t>>();
    lg.fibonacci_index = g.value("n", 0);
    gen = lg;
    // The stored numerators must agree with the claimed generator.
    if (lattice_points(lg).numerators() != PointSet(dim, m, q, lg).numerators())
      throw std::invalid_argument("PointSet JSON: points do not match generator");
  }
  return PointSet(dim, m, std::move(q), std::move(gen));
}

LatticeGenerator fibonacci_generator(int n) {
  if (n < 2) throw std::invalid_argument("Fibonacci point sets need n >= 2");
  LatticeGenerator g;
  g.family = LatticeGenerator::Family::Fibonacci;
  g.m = fibonacci_number(n);
  g.h = {1, static_cast<std::int64_t>(fibonacci_number(n - 1))};
  g.fibonacci_index = n;
  return g;
}

LatticeGenerator korobov_generator(std::uint64_t m, std::vector<std::int64_t> h) {
  if (m == 0) throw std::invalid_argument("korobov: m must be >= 1");
  if (h.empty() || h.size() > kMaxDim)
    throw std::invalid_argument("korobov: bad generating vector length");
  LatticeGenerator g;
  g.family = LatticeGenerator::Family::Korobov;
  g.m = m;
  g.h = std::move(h);
  return g;
}

LatticeGenerator korobov_special_generator(std::uint64_t m, std::int64_t a,
                                           std::size_t d) {
  if (m == 0) throw std::invalid_argument("korobov: m must be >= 1");
  std::vector<std::int64_t> h(d);
  std::uint64_t p = mod(1, m);
  for (std::size_t i = 0; i < d; ++i) {
    h[i] = static_cast<std::int64_t>(p);
    p = mod(static_cast<i128>(p) * a, m);
  }
  return korobov_generator(m, std::move(h));
}

PointSet lattice_points(const LatticeGenerator& gen) {
  const std::size_t d = gen.h.size();
  std::vector<std::int64_t> q;
  q.reserve(gen.m * d);
  for (std::uint64_t mu = 1; mu <= gen.m; ++mu)
    for (std::size_t i = 0; i < d; ++i)
      q.push_back(static_cast<std::int64_t>(
          mod(static_cast<i128>(mu) * gen.h[i], gen.m)));
  return PointSet(d, gen.m, std::move(q), gen);
}

PointSet fibonacci_points(int n) { return lattice_points(fibonacci_generator(n)); }

PointSet korobov_points(std::uint64_t m, std::span<const std::int64_t> h) {
  return lattice_points(korobov_generator(m, {h.begin(), h.end()}));
}

MinProductResult min_product(const DualLattice& lattice) {
  if (lattice.dim() != 2)
    throw std::invalid_argument("min_product: only d = 2 is supported");
  const std::uint64_t m = lattice.modulus();
  const auto& h = lattice.generator();
  const auto inv = mod_inverse(mod(h[0], m), m);
  if (!inv) throw std::invalid_argument("min_product: h_1 must be invertible mod m");
  // k_1 = c * k_2 (mod m) on the dual lattice.
  const std::uint64_t c = mod(-static_cast<i128>(*inv) * h[1], m);

  MinProductResult best{static_cast<std::int64_t>(m),
                        FreqIndex{static_cast<std::int64_t>(m), 0}};
  for (std::int64_t k2 = 1; k2 <= best.product; ++k2) {
    const std::uint64_t r = mod(static_cast<i128>(c) * k2, m);
    const std::int64_t k1 = r <= m - r ? static_cast<std::int64_t>(r)
                                       : -static_cast<std::int64_t>(m - r);
    const std::int64_t w = std::max<std::int64_t>(std::abs(k1), 1) * k2;
    if (w < best.product) best = {w, FreqIndex{k1, k2}};
  }
  return best;
}

GammaScanRow gamma_scan(int n) {
  if (n < 3) throw std::invalid_argument("gamma_scan: n must be >= 3");
  const auto gen = fibonacci_generator(n);
  GammaScanRow row;
  row.n = n;
  row.b_n = gen.m;
  row.n_max = min_product(gen.dual()).product - 1;
  row.ratio = static_cast<double>(row.n_max) / static_cast<double>(row.b_n);
  return row;
}

std::vector<GammaScanRow> gamma_scan(int n_min, int n_max) {
  if (n_min > n_max) throw std::invalid_argument("gamma_scan: empty n range");
  std::vector<GammaScanRow> rows;
  for (int n = n_min; n <= n_max; ++n) rows.push_back(gamma_scan(n));
  return rows;
}

bool is_exact_on(const DualLattice& lattice, const FreqSet& q) {
  if (q.dim() != lattice.dim())
    throw std::invalid_argument("is_exact_on: dimension mismatch");
  return std::none_of(q.begin(), q.end(), [&](const FreqIndex& k) {
    return !k.is_zero() && lattice.contains(k);
  });
}

bool is_exact_on(const LatticeGenerator& gen, const FreqSet& q) {
  return is_exact_on(gen.dual(), q);
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t p = 3; p <= m / p; p += 2)
    if (m % p == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t m) {
  while (!is_prime(m)) ++m;
  return m;
}

LatticeGenerator KorobovSearchResult::generator() const {
  return korobov_special_generator(m, h, d);
}

nlohmann::json KorobovSearchResult::to_json() const {
  return {{"L", L}, {"d", d}, {"cardGamma", card_gamma},
          {"m", m}, {"h", h}, {"verified", verified}};
}

KorobovSearchResult korobov_search(std::int64_t L, std::size_t d) {
  if (L < 1) throw std::invalid_argument("korobov_search: L must be >= 1");
  if (d < 2) throw std::invalid_argument("korobov_search: d must be >= 2");
  const FreqSet cross = build_hyperbolic_cross(L, d);
  KorobovSearchResult res;
  res.L = L;
  res.d = d;
  res.card_gamma = cross.size();
  res.m = next_prime(d * cross.size() + 2);

  std::vector<FreqIndex> nonzero;
  for (const auto& k : cross)
    if (!k.is_zero()) nonzero.push_back(k);

  const std::uint64_t m = res.m;
  for (std::uint64_t h = 1; h < m; ++h) {
    const bool ok = std::all_of(nonzero.begin(), nonzero.end(), [&](const FreqIndex& k) {
      i128 v = 0;  // Horner: k_1 + h (k_2 + h (k_3 + ...))
      for (std::size_t i = d; i-- > 0;)
        v = static_cast<i128>(mod(v * static_cast<i128>(h) + k[i], m));
      return v != 0;
    });
    if (ok) {
      res.h = static_cast<std::int64_t>(h);
      res.verified = is_exact_on(res.generator(), cross);
      return res;
    }
  }
  throw std::runtime_error(
      "korobov_search: no admissible h for L=" + std::to_string(L) +
      ", d=" + std::to_string(d) + ", m=" + std::to_string(m) +
      ", |Gamma|=" + std::to_string(cross.size()) +
      " (the prime bound guarantees one exists; check the inputs)");
}

}  // namespace trigdisc
