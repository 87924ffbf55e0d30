#include "trigdisc/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trigdisc/grid_eval.hpp"
#include "trigdisc/random.hpp"

namespace trigdisc {

namespace {

bool term_less(const TrigPoly::Term& a, const TrigPoly::Term& b) {
  return a.first < b.first;
}

void require_same_dim(const TrigPoly& a, const TrigPoly& b, const char* what) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

TrigPoly::TrigPoly(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim)
    throw std::invalid_argument("TrigPoly: unsupported dimension");
}

TrigPoly TrigPoly::from_terms(std::size_t dim, std::vector<Term> terms) {
  TrigPoly p(dim);
  for (const auto& t : terms)
    if (t.first.dim() != dim)
      throw std::invalid_argument("TrigPoly: term of wrong dimension");
  std::sort(terms.begin(), terms.end(), term_less);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first)
      p.terms_.back().second += t.second;
    else
      p.terms_.push_back(std::move(t));
  }
  p.prune();
  return p;
}

TrigPoly TrigPoly::monomial(const FreqIndex& k, Complex c) {
  return from_terms(k.dim(), {{k, c}});
}

TrigPoly TrigPoly::constant(std::size_t dim, Complex c) {
  return monomial(FreqIndex(dim), c);
}

void TrigPoly::prune() {
  std::erase_if(terms_, [](const Term& t) {
    return std::abs(t.second) <= kPruneTolerance;
  });
}

Complex TrigPoly::coeff(const FreqIndex& k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, {}},
                             term_less);
  if (it != terms_.end() && it->first == k) return it->second;
  return {};
}

std::vector<std::int64_t> TrigPoly::max_abs_per_dim() const {
  std::vector<std::int64_t> m(dim_, 0);
  for (const auto& [k, c] : terms_)
    for (std::size_t i = 0; i < dim_; ++i)
      m[i] = std::max(m[i], k[i] < 0 ? -k[i] : k[i]);
  return m;
}

bool TrigPoly::is_real_valued(double tol) const {
  for (const auto& [k, c] : terms_)
    if (std::abs(coeff(-k) - std::conj(c)) > tol) return false;
  return true;
}

Complex TrigPoly::operator()(std::span<const double> x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("TrigPoly: point of wrong dimension");
  Complex sum{};
  for (const auto& [k, c] : terms_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      phase += static_cast<double>(k[i]) * x[i];
    sum += c * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

TrigPoly& TrigPoly::axpy(const TrigPoly& other, Complex s) {
  require_same_dim(*this, other, "TrigPoly arithmetic");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.emplace_back(b->first, s * b->second);
      ++b;
    } else {
      merged.emplace_back(a->first, a->second + s * b->second);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) { return axpy(other, 1.0); }
TrigPoly& TrigPoly::operator-=(const TrigPoly& other) { return axpy(other, -1.0); }

TrigPoly& TrigPoly::operator*=(Complex s) {
  for (auto& t : terms_) t.second *= s;
  prune();
  return *this;
}

nlohmann::json TrigPoly::to_json() const {
  auto entries = nlohmann::json::array();
  for (const auto& [k, c] : terms_)
    entries.push_back({std::vector<std::int64_t>(k.begin(), k.end()), c.real(),
                       c.imag()});
  return {{"dim", dim_}, {"entries", entries}};
}

TrigPoly TrigPoly::from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<Term> terms;
  for (const auto& e : j.at("entries")) {
    const auto k = e.at(0).get<std::vector<std::int64_t>>();
    terms.emplace_back(FreqIndex(std::span<const std::int64_t>(k)),
                       Complex(e.at(1).get<double>(), e.at(2).get<double>()));
  }
  return from_terms(dim, std::move(terms));
}

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (auto m : points) t *= m;
  return t;
}

nlohmann::json GridSpec::to_json() const { return points; }

GridSpec oversampled_grid(const TrigPoly& f, std::size_t factor) {
  GridSpec g;
  for (auto k : f.max_abs_per_dim())
    g.points.push_back(factor * static_cast<std::size_t>(std::max<std::int64_t>(k, 1)));
  return g;
}

Complex evaluate(const TrigPoly& f, std::span<const double> x) { return f(x); }

TrigPoly convolve(const TrigPoly& f, const TrigPoly& g) {
  require_same_dim(f, g, "convolve");
  std::vector<TrigPoly::Term> out;
  auto a = f.terms().begin();
  auto b = g.terms().begin();
  while (a != f.terms().end() && b != g.terms().end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      out.emplace_back(a->first, a->second * b->second);
      ++a;
      ++b;
    }
  }
  return TrigPoly::from_terms(f.dim(), std::move(out));
}

TrigPoly autocorrelate(const TrigPoly& f) { return convolve(f, f); }

TrigPoly tensor_product(const TrigPoly& f, const TrigPoly& g) {
  const std::size_t d = f.dim() + g.dim();
  if (d > kMaxDim) throw std::invalid_argument("tensor_product: too many dims");
  std::vector<TrigPoly::Term> out;
  out.reserve(f.size() * g.size());
  for (const auto& [k, c] : f.terms())
    for (const auto& [l, e] : g.terms()) {
      FreqIndex kl(d);
      for (std::size_t i = 0; i < f.dim(); ++i) kl[i] = k[i];
      for (std::size_t i = 0; i < g.dim(); ++i) kl[f.dim() + i] = l[i];
      out.emplace_back(kl, c * e);
    }
  return TrigPoly::from_terms(d, std::move(out));
}

nlohmann::json NormEstimate::to_json() const {
  nlohmann::json j{{"value", value}, {"method", method}, {"exact", exact}};
  j["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
  if (!grid.points.empty()) j["grid"] = grid.to_json();
  return j;
}

NormEstimate lp_norm_estimate(const TrigPoly& f, double p,
                              std::optional<GridSpec> grid) {
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_norm: p must be >= 1");
  NormEstimate est;
  est.p = p;
  if (f.empty()) {
    est.method = "parseval";
    est.exact = true;
    return est;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& [k, c] : f.terms()) s += std::norm(c);
    est.value = std::sqrt(s);
    est.method = "parseval";
    est.exact = true;
    return est;
  }
  const auto kmax = f.max_abs_per_dim();
  const bool even = !std::isinf(p) && p == std::floor(p) &&
                    static_cast<long>(p) % 2 == 0;
  if (even) {
    // |f|^p = (f conj f)^(p/2) has degree p*K_i per coordinate.
    GridSpec g = grid.value_or(GridSpec{std::vector<std::size_t>(f.dim(), 1)});
    if (g.dim() != f.dim())
      throw std::invalid_argument("lp_norm: grid dimension mismatch");
    for (std::size_t i = 0; i < f.dim(); ++i)
      g.points[i] = std::max<std::size_t>(
          g.points[i], static_cast<std::size_t>(p) * static_cast<std::size_t>(kmax[i]) + 1);
    est.grid = g;
    est.value = std::pow(grid_power_mean(f, g, p), 1.0 / p);
    est.method = "quadrature-exact";
    est.exact = true;
    return est;
  }
  est.grid = grid.value_or(oversampled_grid(f));
  if (est.grid.dim() != f.dim())
    throw std::invalid_argument("lp_norm: grid dimension mismatch");
  const double mean = grid_power_mean(f, est.grid, p);
  est.value = std::isinf(p) ? mean : std::pow(mean, 1.0 / p);
  est.method = "grid-estimated";
  est.exact = false;
  return est;
}

double lp_norm(const TrigPoly& f, double p, std::optional<GridSpec> grid) {
  return lp_norm_estimate(f, p, std::move(grid)).value;
}

TrigPoly random_poly(const FreqSet& q, std::uint64_t seed, CoefficientLaw law) {
  Rng rng(seed);
  std::vector<TrigPoly::Term> terms;
  terms.reserve(q.size());
  for (const auto& k : q) {
    Complex c;
    if (law == CoefficientLaw::Unimodular) {
      const double t = kTwoPi * rng.uniform();
      c = Complex(std::cos(t), std::sin(t));
    } else {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      c = Complex(re, im) * std::sqrt(0.5);
    }
    terms.emplace_back(k, c);
  }
  return TrigPoly::from_terms(q.dim(), std::move(terms));
}

}  // namespace trigdisc
