#include "trigdisc/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trigdisc/grid_eval.hpp"
#include "trigdisc/random.hpp"

namespace trigdisc {

namespace {

using u128 = unsigned __int128;

// e^{2 pi i t / m}, t = 0..m-1.
std::vector<Complex> roots_of_unity(std::uint64_t m) {
  std::vector<Complex> w(m);
  for (std::uint64_t t = 0; t < m; ++t) {
    const double a = kTwoPi * static_cast<double>(t) / static_cast<double>(m);
    w[t] = Complex(std::cos(a), std::sin(a));
  }
  return w;
}

std::uint64_t reduce(std::int64_t k, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = k % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

// (k, q_nu) mod m with k already reduced coordinate-wise.
std::uint64_t phase_index(const PointSet& pts, std::size_t nu,
                          std::span<const std::uint64_t> kr) {
  const std::uint64_t m = pts.denominator();
  u128 s = 0;
  for (std::size_t i = 0; i < kr.size(); ++i)
    s += static_cast<u128>(kr[i]) * static_cast<std::uint64_t>(pts.numerator(nu, i));
  return static_cast<std::uint64_t>(s % m);
}

std::vector<std::uint64_t> reduced(const FreqIndex& k, std::uint64_t m) {
  std::vector<std::uint64_t> r(k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i) r[i] = reduce(k[i], m);
  return r;
}

void require_dim(const TrigPoly& f, const PointSet& pts, const char* what) {
  if (f.dim() != pts.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_len(const SampleVector& a, const PointSet& pts, const char* what) {
  if (a.size() != pts.size())
    throw std::invalid_argument(std::string(what) + ": sample length " +
                                std::to_string(a.size()) + " != " +
                                std::to_string(pts.size()) + " points");
}

// Exact phases, one point at a time.
SampleVector sample_exact_pointwise(const PointSet& pts, const TrigPoly& f) {
  const std::uint64_t m = pts.denominator();
  const auto w = roots_of_unity(m);
  std::vector<std::vector<std::uint64_t>> kr;
  kr.reserve(f.size());
  for (const auto& [k, c] : f.terms()) kr.push_back(reduced(k, m));
  std::vector<Complex> out(pts.size());
  for (std::size_t nu = 0; nu < pts.size(); ++nu) {
    Complex s{};
    for (std::size_t t = 0; t < kr.size(); ++t)
      s += f.terms()[t].second * w[phase_index(pts, nu, kr[t])];
    out[nu] = s;
  }
  return SampleVector(std::move(out));
}

TrigPoly with_coefficients(const TrigPoly& g, const std::vector<Complex>& scale) {
  std::vector<TrigPoly::Term> out;
  out.reserve(g.size());
  for (std::size_t t = 0; t < g.size(); ++t)
    out.emplace_back(g.terms()[t].first, g.terms()[t].second * scale[t]);
  return TrigPoly::from_terms(g.dim(), std::move(out));
}

std::vector<FreqIndex> support(const TrigPoly& g) {
  std::vector<FreqIndex> ks;
  ks.reserve(g.size());
  for (const auto& [k, c] : g.terms()) ks.push_back(k);
  return ks;
}

SampleVector random_samples(std::size_t m, Rng& rng) {
  std::vector<Complex> a(m);
  for (auto& z : a) z = Complex(rng.gaussian(), rng.gaussian());
  return SampleVector(std::move(a));
}

double norm_from_mean(double mean, double p) {
  return std::isinf(p) ? mean : std::pow(mean, 1.0 / p);
}

// Bound on the l_{p,m} -> L_p norm from the three computed norms.
double interpolated_norm(double p, double c1, double c2, double cinf) {
  if (p == 1.0) return c1;
  if (p == 2.0) return c2;
  if (std::isinf(p)) return cinf;
  if (p > 2.0) return std::pow(c2, 2.0 / p) * std::pow(cinf, 1.0 - 2.0 / p);
  return std::pow(c1, 2.0 / p - 1.0) * std::pow(c2, 2.0 - 2.0 / p);
}

}  // namespace

double SampleVector::power_mean(double p) const {
  if (!(p >= 1.0)) throw std::invalid_argument("SampleVector: p must be >= 1");
  if (v_.empty()) return 0.0;
  if (std::isinf(p)) {
    double mx = 0.0;
    for (auto z : v_) mx = std::max(mx, std::abs(z));
    return mx;
  }
  double s = 0.0;
  for (auto z : v_) s += std::pow(std::abs(z), p);
  return s / static_cast<double>(v_.size());
}

double SampleVector::norm(double p) const { return norm_from_mean(power_mean(p), p); }

ShiftOperator::ShiftOperator(TrigPoly kernel, PointSet points,
                             std::optional<SeparableKernel> separable)
    : kernel_(std::move(kernel)),
      points_(std::move(points)),
      separable_(separable ? std::move(*separable)
                           : SeparableKernel::from_poly(kernel_)) {
  if (kernel_.dim() != points_.dim() || separable_.dim() != points_.dim())
    throw std::invalid_argument("ShiftOperator: kernel and points differ in dimension");
}

SampleVector sample(const PointSet& points, const TrigPoly& f) {
  require_dim(f, points, "sample");
  const auto& gen = points.generator();
  if (!gen) return sample_exact_pointwise(points, f);
  // Rank-1: f(xi^mu) = sum_t B[t] e^{2 pi i mu t / m} with B binned by (h, k).
  const std::uint64_t m = gen->m;
  const DualLattice dual = gen->dual();
  std::vector<Complex> bins(m);
  for (const auto& [k, c] : f.terms()) bins[dual.residue(k)] += c;
  const std::size_t n = m;
  dft_inplace(bins, std::span<const std::size_t>(&n, 1), +1);
  std::vector<Complex> out(m);
  for (std::uint64_t nu = 0; nu < m; ++nu) out[nu] = bins[(nu + 1) % m];
  return SampleVector(std::move(out));
}

SampleVector sample_direct(const PointSet& points, const TrigPoly& f) {
  require_dim(f, points, "sample_direct");
  std::vector<Complex> out(points.size());
  for (std::size_t nu = 0; nu < points.size(); ++nu) out[nu] = f(points.point(nu));
  return SampleVector(std::move(out));
}

Complex exponential_sum(const PointSet& points, const FreqIndex& k) {
  if (k.dim() != points.dim())
    throw std::invalid_argument("exponential_sum: dimension mismatch");
  const std::uint64_t m = points.denominator();
  const auto kr = reduced(k, m);
  Complex s{};
  for (std::size_t nu = 0; nu < points.size(); ++nu) {
    const double a = kTwoPi * static_cast<double>(phase_index(points, nu, kr)) /
                     static_cast<double>(m);
    s += Complex(std::cos(a), std::sin(a));
  }
  return s / static_cast<double>(points.size());
}

std::vector<Complex> point_set_spectrum(const PointSet& points) {
  const std::uint64_t m = points.denominator();
  const std::size_t d = points.dim();
  const double total = std::pow(static_cast<double>(m), static_cast<double>(d));
  if (total > static_cast<double>(1ULL << 27))
    throw std::invalid_argument("point_set_spectrum: m^d too large");
  std::vector<std::size_t> dims(d, m);
  std::vector<Complex> counts(static_cast<std::size_t>(total));
  for (std::size_t nu = 0; nu < points.size(); ++nu) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i)
      idx = idx * m + static_cast<std::size_t>(points.numerator(nu, i));
    counts[idx] += 1.0;
  }
  dft_inplace(counts, dims, +1);
  const double inv = 1.0 / static_cast<double>(points.size());
  for (auto& z : counts) z *= inv;
  return counts;
}

Complex cubature(const PointSet& points, const TrigPoly& f) {
  require_dim(f, points, "cubature");
  return cubature(points, sample_exact_pointwise(points, f));
}

Complex cubature(const PointSet& points, const SampleVector& values) {
  require_len(values, points, "cubature");
  Complex s{};
  for (auto z : values.values()) s += z;
  return s / static_cast<double>(points.size());
}

Complex cubature_spectral(const PointSet& points, const TrigPoly& f) {
  require_dim(f, points, "cubature_spectral");
  Complex s{};
  if (const auto& gen = points.generator()) {
    const DualLattice dual = gen->dual();
    for (const auto& [k, c] : f.terms())
      if (dual.contains(k)) s += c;
    return s;
  }
  for (const auto& [k, c] : f.terms()) s += c * exponential_sum(points, k);
  return s;
}

std::vector<Complex> discrete_fourier_coefficients(const PointSet& points,
                                                   const SampleVector& a,
                                                   std::span<const FreqIndex> ks) {
  require_len(a, points, "discrete_fourier_coefficients");
  const std::uint64_t m = points.denominator();
  const double inv = 1.0 / static_cast<double>(points.size());
  std::vector<Complex> out(ks.size());
  if (const auto& gen = points.generator()) {
    // (1/m) sum_mu a_mu e^{-2 pi i mu t / m} depends on k only via t = (h, k).
    std::vector<Complex> spec(m);
    for (std::uint64_t nu = 0; nu < m; ++nu) spec[(nu + 1) % m] = a[nu];
    const std::size_t n = m;
    dft_inplace(spec, std::span<const std::size_t>(&n, 1), -1);
    const DualLattice dual = gen->dual();
    for (std::size_t i = 0; i < ks.size(); ++i) out[i] = spec[dual.residue(ks[i])] * inv;
    return out;
  }
  const auto w = roots_of_unity(m);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i].dim() != points.dim())
      throw std::invalid_argument("discrete_fourier_coefficients: dimension mismatch");
    const auto kr = reduced(ks[i], m);
    Complex s{};
    for (std::size_t nu = 0; nu < points.size(); ++nu)
      s += a[nu] * std::conj(w[phase_index(points, nu, kr)]);
    out[i] = s * inv;
  }
  return out;
}

TrigPoly discretized_convolution(const TrigPoly& f, const TrigPoly& g,
                                 const PointSet& points) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("discretized_convolution: dimension mismatch");
  require_dim(f, points, "discretized_convolution");
  const auto ks = support(g);
  return with_coefficients(g, discrete_fourier_coefficients(points, sample(points, f), ks));
}

double sampling_representation_check(const TrigPoly& f, const PointSet& points,
                                     const TrigPoly& kernel, std::uint64_t seed,
                                     int probes) {
  require_dim(f, points, "sampling_representation_check");
  require_dim(kernel, points, "sampling_representation_check");
  const auto ks = support(kernel);
  const TrigPoly rep = with_coefficients(
      kernel, discrete_fourier_coefficients(points, sample(points, f), ks));
  Rng rng(seed);
  std::vector<double> x(points.dim());
  double err = 0.0;
  for (int t = 0; t < probes; ++t) {
    for (auto& xi : x) xi = kTwoPi * rng.uniform();
    err = std::max(err, std::abs(f(x) - rep(x)));
  }
  return err;
}

TrigPoly apply_shift(const ShiftOperator& op, const SampleVector& a) {
  require_len(a, op.points(), "apply_shift");
  const auto ks = support(op.kernel());
  return with_coefficients(op.kernel(),
                           discrete_fourier_coefficients(op.points(), a, ks));
}

Complex apply_shift_direct(const ShiftOperator& op, const SampleVector& a,
                           std::span<const double> x) {
  require_len(a, op.points(), "apply_shift_direct");
  const auto& pts = op.points();
  if (x.size() != pts.dim())
    throw std::invalid_argument("apply_shift_direct: point of wrong dimension");
  std::vector<double> y(pts.dim());
  Complex s{};
  for (std::size_t nu = 0; nu < pts.size(); ++nu) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - pts.coord(nu, i);
    s += a[nu] * op.kernel()(y);
  }
  return s / static_cast<double>(pts.size());
}

double ShiftSumGrid::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double ShiftSumGrid::norm(double p) const {
  if (std::isinf(p)) return max();
  double s = 0.0;
  for (double v : values) s += std::pow(v, p);
  return std::pow(s / static_cast<double>(values.size()), 1.0 / p);
}

ShiftSumGrid shift_sum_grid(const SeparableKernel& kernel, const PointSet& points,
                            std::size_t oversampling) {
  if (kernel.dim() != points.dim())
    throw std::invalid_argument("shift_sum_grid: dimension mismatch");
  const auto& gen = points.generator();
  if (!gen || std::gcd(reduce(gen->h[0], gen->m), gen->m) != 1)
    throw std::invalid_argument(
        "shift_sum_grid: needs a rank-1 lattice with h_1 invertible mod m");
  const std::size_t d = points.dim();
  const std::uint64_t m = gen->m;
  const auto kmax = kernel.max_abs_per_dim();

  ShiftSumGrid out;
  std::vector<std::size_t> c(d), g(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t need = oversampling * static_cast<std::uint64_t>(std::max<std::int64_t>(kmax[i], 1));
    c[i] = static_cast<std::size_t>((need + m - 1) / m);
    g[i] = c[i] * m;
  }
  out.grid.points = g;
  out.slab_rows = c[0];

  // tab[i][node * T + t]: factor t of coordinate i at node 2 pi node / G_i.
  const auto& terms = kernel.terms();
  const std::size_t T = terms.size();
  std::vector<std::vector<Complex>> tab(d);
  for (std::size_t i = 0; i < d; ++i) {
    tab[i].resize(g[i] * T);
    for (std::size_t t = 0; t < T; ++t) {
      const auto v = evaluate_on_circle(terms[t].factors[i], g[i]);
      for (std::size_t x = 0; x < g[i]; ++x) tab[i][x * T + t] = v[x];
    }
  }

  // Slab dims: (c_1, G_2, ..., G_d); the last one is swept innermost.
  std::vector<std::size_t> dims = g;
  dims[0] = c[0];
  std::size_t outer = 1;
  for (std::size_t i = 0; i + 1 < d; ++i) outer *= dims[i];
  const std::size_t inner = dims[d - 1];
  out.values.assign(outer * inner, 0.0);
  if (T == 0) return out;

  std::vector<Complex> partial(T);
  std::vector<std::size_t> j(d, 0), off(d);
  for (std::size_t nu = 0; nu < points.size(); ++nu) {
    for (std::size_t i = 0; i < d; ++i)
      off[i] = (c[i] * static_cast<std::size_t>(points.numerator(nu, i))) % g[i];
    std::fill(j.begin(), j.end(), 0);
    for (std::size_t o = 0; o < outer; ++o) {
      // Decode the leading multi-index of this row.
      std::size_t rem = o;
      for (std::size_t i = d - 1; i-- > 0;) {
        j[i] = rem % dims[i];
        rem /= dims[i];
      }
      std::fill(partial.begin(), partial.end(), Complex(1.0));
      for (std::size_t i = 0; i + 1 < d; ++i) {
        const std::size_t x = (j[i] + g[i] - off[i]) % g[i];
        const Complex* row = &tab[i][x * T];
        for (std::size_t t = 0; t < T; ++t) partial[t] *= row[t];
      }
      const std::size_t gl = g[d - 1];
      const Complex* last = tab[d - 1].data();
      double* dst = &out.values[o * inner];
      std::size_t x = (gl - off[d - 1]) % gl;
      for (std::size_t jl = 0; jl < inner; ++jl) {
        const Complex* row = last + x * T;
        Complex s{};
        for (std::size_t t = 0; t < T; ++t) s += partial[t] * row[t];
        dst[jl] += std::abs(s);
        if (++x == gl) x = 0;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(m);
  for (auto& v : out.values) v *= inv;
  return out;
}

ShiftSumGrid fibonacci_sum(int r, int n, std::size_t oversampling) {
  return shift_sum_grid(separable_hc_vallee_poussin(r, 2), fibonacci_points(n),
                        oversampling);
}

ShiftSumGrid fibonacci_autocorrelation_sum(int r, int n, std::size_t oversampling) {
  return shift_sum_grid(separable_hc_vallee_poussin(r, 2).autocorrelation(),
                        fibonacci_points(n), oversampling);
}

nlohmann::json OpNormResult::to_json() const {
  nlohmann::json j{{"value", value}, {"method", method}};
  j["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
  if (!grid.points.empty()) j["grid"] = grid.to_json();
  if (p == 2.0) {
    j["iterations"] = iterations;
    j["converged"] = converged;
  }
  return j;
}

namespace {

// Power iteration for a Hermitian positive semidefinite matvec.
template <class MatVec>
void power_iteration(std::size_t m, MatVec&& apply, const OpNormOptions& opt,
                     OpNormResult& res) {
  Rng rng(opt.seed);
  std::vector<Complex> x(m), y(m);
  for (auto& z : x) z = Complex(rng.gaussian(), rng.gaussian());
  auto normalize = [](std::vector<Complex>& v) {
    double s = 0.0;
    for (auto z : v) s += std::norm(z);
    s = std::sqrt(s);
    if (s > 0.0)
      for (auto& z : v) z /= s;
    return s;
  };
  normalize(x);
  double lambda = 0.0;
  res.converged = false;
  for (long it = 1; it <= opt.max_iterations; ++it) {
    apply(x, y);
    double rq = 0.0;
    for (std::size_t i = 0; i < m; ++i) rq += (std::conj(x[i]) * y[i]).real();
    res.iterations = it;
    const bool done = it > 1 && std::abs(rq - lambda) <= opt.tolerance * std::abs(rq);
    lambda = rq;
    if (done || normalize(y) == 0.0) {
      res.converged = true;
      break;
    }
    std::swap(x, y);
  }
  res.value = std::sqrt(std::max(lambda, 0.0));
}

}  // namespace

OpNormResult op_norm(const ShiftOperator& op, double p, const OpNormOptions& options) {
  OpNormResult res;
  res.p = p;
  const auto& pts = op.points();
  if (p == 1.0) {
    const auto est = lp_norm_estimate(op.kernel(), 1.0,
                                      oversampled_grid(op.kernel(), options.oversampling));
    res.value = est.value;
    res.grid = est.grid;
    res.method = "kernel-l1";
    return res;
  }
  if (std::isinf(p)) {
    const auto sums = shift_sum_grid(op.separable(), pts, options.oversampling);
    res.value = sums.max();
    res.grid = sums.grid;
    res.method = "shift-sum-max";
    return res;
  }
  if (p != 2.0)
    throw std::invalid_argument(
        "op_norm: exact mode supports p in {1, 2, inf}; use op_norm_probe");

  const std::size_t m = pts.size();
  if (m > options.max_points)
    throw std::invalid_argument("op_norm: Gram matrix larger than max_points");
  if (op.kernel().empty()) {
    res.method = "gram-circulant";
    return res;
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  if (const auto& gen = pts.generator()) {
    // G_{nu,mu} = g[nu - mu]: circulant, applied through its DFT.
    const DualLattice dual = gen->dual();
    std::vector<Complex> gdft(m);
    for (const auto& [k, c] : op.kernel().terms()) gdft[dual.residue(k)] += std::norm(c);
    const std::size_t n = m;
    std::span<const std::size_t> dims(&n, 1);
    dft_inplace(gdft, dims, +1);  // g[s]
    dft_inplace(gdft, dims, -1);  // its forward DFT
    res.method = "gram-circulant";
    power_iteration(m, [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
      y = x;
      dft_inplace(y, dims, -1);
      for (std::size_t i = 0; i < m; ++i) y[i] *= gdft[i] * inv_m;
      dft_inplace(y, dims, +1);
      for (auto& z : y) z *= inv_m;
    }, options, res);
  } else {
    // G = Phi diag(|c_k|^2) Phi^*, Phi_{nu,k} = e^{i(k, xi^nu)}.
    const auto& terms = op.kernel().terms();
    const std::uint64_t den = pts.denominator();
    const auto w = roots_of_unity(den);
    std::vector<std::uint32_t> phase(m * terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto kr = reduced(terms[t].first, den);
      for (std::size_t nu = 0; nu < m; ++nu)
        phase[t * m + nu] = static_cast<std::uint32_t>(phase_index(pts, nu, kr));
    }
    res.method = "gram-factored";
    power_iteration(m, [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
      std::fill(y.begin(), y.end(), Complex{});
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::uint32_t* ph = &phase[t * m];
        Complex z{};
        for (std::size_t nu = 0; nu < m; ++nu) z += std::conj(w[ph[nu]]) * x[nu];
        z *= std::norm(terms[t].second);
        for (std::size_t nu = 0; nu < m; ++nu) y[nu] += w[ph[nu]] * z;
      }
      for (auto& z : y) z *= inv_m;
    }, options, res);
  }
  return res;
}

double op_norm_probe(const ShiftOperator& op, double p, int trials,
                     std::uint64_t seed) {
  const std::size_t m = op.points().size();
  Rng rng(seed);
  std::vector<Complex> e1(m);
  e1[0] = 1.0;
  double best = 0.0;
  for (int t = 0; t <= trials; ++t) {
    const SampleVector a = t == 0 ? SampleVector(e1) : random_samples(m, rng);
    const double den = a.norm(p);
    if (den > 0.0) best = std::max(best, lp_norm(apply_shift(op, a), p) / den);
  }
  return best;
}

DiscretizationRatio discretization_ratio(const TrigPoly& f, const PointSet& points,
                                         double p) {
  require_dim(f, points, "discretization_ratio");
  DiscretizationRatio r;
  r.sampled = sample(points, f).power_mean(p);
  // The sampled max is compared with the sup, so the sup grid is refined
  // further than the default to keep its underestimate well below 1%.
  const auto est = std::isinf(p)
                       ? lp_norm_estimate(f, p, oversampled_grid(f, kSupOversampling))
                       : lp_norm_estimate(f, p);
  r.true_norm = std::isinf(p) ? est.value : std::pow(est.value, p);
  r.method = est.method;
  return r;
}

std::vector<std::vector<std::int64_t>> hyperbolic_rectangles(std::int64_t n,
                                                             std::size_t d) {
  if (n < 1 || d < 1) throw std::invalid_argument("hyperbolic_rectangles: need N, d >= 1");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> j(d);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
    if (i == d) {
      out.push_back(j);
      return;
    }
    for (std::int64_t v = 1; v <= budget; ++v) {
      j[i] = v;
      self(self, i + 1, budget / v);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::vector<std::vector<std::int64_t>> dyadic_rectangles(int n, std::size_t d) {
  if (n < 0 || n > 40) throw std::invalid_argument("dyadic_rectangles: n out of range");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& s : compositions(n, d)) {
    std::vector<std::int64_t> j;
    for (int si : s) j.push_back(std::int64_t{1} << si);
    out.push_back(std::move(j));
  }
  return out;
}

std::int64_t universal_collection_bound(const LatticeGenerator& gen, std::size_t d) {
  if (gen.h.size() != d)
    throw std::invalid_argument("universal_collection_bound: dimension mismatch");
  const DualLattice dual = gen.dual();
  for (std::int64_t n = 1;; ++n) {
    for (const auto& j : hyperbolic_rectangles(n, d)) {
      std::int64_t prod = 1;
      for (auto v : j) prod *= v;
      if (prod != n) continue;
      std::vector<std::int64_t> box(d);
      for (std::size_t i = 0; i < d; ++i) box[i] = 3 * j[i] - 1;
      if (!is_exact_on(dual, build_rectangle(box))) return n - 1;
    }
  }
}

nlohmann::json UniversalReport::to_json() const {
  auto rows = nlohmann::json::array();
  for (const auto& r : rectangles)
    rows.push_back({{"j", r.j},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"representationError", r.representation_error},
                    {"opNorm1", r.op_norm_1},
                    {"opNorm2", r.op_norm_2},
                    {"opNormInf", r.op_norm_inf},
                    {"boundLower", r.bound_lower},
                    {"boundUpper", r.bound_upper}});
  nlohmann::json j{{"trials", trials},
                   {"worstLower", worst_lower},
                   {"worstUpper", worst_upper},
                   {"maxRepresentationError", max_representation_error},
                   {"withinBounds", within_bounds},
                   {"rectangles", rows}};
  j["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
  return j;
}

UniversalReport universal_check(
    const std::vector<std::vector<std::int64_t>>& collection,
    const PointSet& points, double p, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("universal_check: trials must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("universal_check: p must be >= 1");
  UniversalReport rep;
  rep.p = p;
  rep.trials = trials;
  rep.worst_lower = kInfNorm;
  rep.worst_upper = 0.0;
  for (std::size_t idx = 0; idx < collection.size(); ++idx) {
    const auto& j = collection[idx];
    RectangleResult rr;
    rr.j = j;
    const ShiftOperator op(tensor_kernel(KernelKind::ValleePoussin, j), points,
                           separable_tensor(KernelKind::ValleePoussin, j));
    rr.op_norm_1 = op_norm(op, 1.0).value;
    rr.op_norm_2 = op_norm(op, 2.0).value;
    rr.op_norm_inf = op_norm(op, kInfNorm).value;
    if (std::isinf(p)) {
      rr.bound_lower = 1.0 / rr.op_norm_inf;
      rr.bound_upper = 1.0;
    } else if (p == 1.0) {
      rr.bound_lower = 1.0 / rr.op_norm_1;
      rr.bound_upper = rr.op_norm_inf;
    } else {
      const double q = p / (p - 1.0);
      rr.bound_lower =
          std::pow(interpolated_norm(p, rr.op_norm_1, rr.op_norm_2, rr.op_norm_inf), -p);
      rr.bound_upper =
          std::pow(interpolated_norm(q, rr.op_norm_1, rr.op_norm_2, rr.op_norm_inf), p);
    }

    const FreqSet q = build_rectangle(j);
    rr.lower = kInfNorm;
    for (int t = 0; t < trials; ++t) {
      const TrigPoly f = random_poly(q, derive_seed(seed, idx, static_cast<std::uint64_t>(t)));
      const double ratio = discretization_ratio(f, points, p).ratio();
      rr.lower = std::min(rr.lower, ratio);
      rr.upper = std::max(rr.upper, ratio);
      rr.representation_error = std::max(
          rr.representation_error,
          sampling_representation_check(f, points, op.kernel(),
                                        derive_seed(seed ^ 0x5eedULL, idx,
                                                    static_cast<std::uint64_t>(t))));
    }
    rep.worst_lower = std::min(rep.worst_lower, rr.lower);
    rep.worst_upper = std::max(rep.worst_upper, rr.upper);
    rep.max_representation_error =
        std::max(rep.max_representation_error, rr.representation_error);
    rep.within_bounds = rep.within_bounds && rr.lower >= 0.95 * rr.bound_lower &&
                        rr.upper <= 1.05 * rr.bound_upper;
    rep.rectangles.push_back(std::move(rr));
  }
  if (collection.empty()) rep.worst_lower = 0.0;
  return rep;
}

}  // namespace trigdisc
