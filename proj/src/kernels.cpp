#include "trigdisc/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace trigdisc {

namespace {

TrigPoly univariate(std::vector<TrigPoly::Term> terms) {
  return TrigPoly::from_terms(1, std::move(terms));
}

// Representative of x in [-pi, pi]; std::remainder is exact.
double reduce(double x) { return std::remainder(x, kTwoPi); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

TrigPoly dirichlet(std::int64_t j) {
  require(j >= 0, "dirichlet: j must be >= 0");
  std::vector<TrigPoly::Term> t;
  for (std::int64_t k = -j; k <= j; ++k) t.emplace_back(FreqIndex{k}, 1.0);
  return univariate(std::move(t));
}

TrigPoly fejer(std::int64_t j) {
  require(j >= 1, "fejer: j must be >= 1");
  std::vector<TrigPoly::Term> t;
  const double jd = static_cast<double>(j);
  for (std::int64_t k = -(j - 1); k <= j - 1; ++k)
    t.emplace_back(FreqIndex{k}, 1.0 - static_cast<double>(std::abs(k)) / jd);
  return univariate(std::move(t));
}

TrigPoly vallee_poussin(std::int64_t j) {
  require(j >= 1, "vallee_poussin: j must be >= 1");
  std::vector<TrigPoly::Term> t;
  const double jd = static_cast<double>(j);
  for (std::int64_t k = -(2 * j - 1); k <= 2 * j - 1; ++k) {
    const std::int64_t a = std::abs(k);
    t.emplace_back(FreqIndex{k},
                   a <= j ? 1.0 : static_cast<double>(2 * j - a) / jd);
  }
  return univariate(std::move(t));
}

TrigPoly vallee_poussin_dyadic(int level) {
  require(level >= 0 && level <= 40, "vallee_poussin_dyadic: level in [0, 40]");
  if (level == 0) return TrigPoly::constant(1, 1.0);
  return vallee_poussin(std::int64_t{1} << (level - 1));
}

TrigPoly block_a(int s) {
  require(s >= 0 && s <= 40, "block_a: s in [0, 40]");
  if (s == 0) return TrigPoly::constant(1, 1.0);
  return vallee_poussin_dyadic(s) - vallee_poussin_dyadic(s - 1);
}

double dirichlet_value(std::int64_t j, double x) {
  x = reduce(x);
  if (x == 0.0) return static_cast<double>(2 * j + 1);
  return std::sin((static_cast<double>(j) + 0.5) * x) / std::sin(x / 2.0);
}

double fejer_value(std::int64_t j, double x) {
  const double jd = static_cast<double>(j);
  x = reduce(x);
  if (x == 0.0) return jd;
  const double num = std::sin(jd * x / 2.0);
  const double den = std::sin(x / 2.0);
  return num * num / (jd * den * den);
}

double vallee_poussin_value(std::int64_t j, double x) {
  return 2.0 * fejer_value(2 * j, x) - fejer_value(j, x);
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Dirichlet: return "dirichlet";
    case KernelKind::Fejer: return "fejer";
    case KernelKind::ValleePoussin: return "vallee-poussin";
    case KernelKind::BlockA: return "block-a";
    case KernelKind::TensorVP: return "tensor-vp";
    case KernelKind::HCValleePoussin: return "hc-vp";
    case KernelKind::DeltaHCVP: return "delta-hc-vp";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  for (auto k : {KernelKind::Dirichlet, KernelKind::Fejer,
                 KernelKind::ValleePoussin, KernelKind::BlockA,
                 KernelKind::TensorVP, KernelKind::HCValleePoussin,
                 KernelKind::DeltaHCVP})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown kernel kind '" + name + "'");
}

std::size_t KernelId::dim() const {
  if (kind == KernelKind::HCValleePoussin || kind == KernelKind::DeltaHCVP)
    return params.size() == 2 ? static_cast<std::size_t>(params[1]) : 0;
  return params.size();
}

std::string KernelId::to_string() const {
  std::string s = trigdisc::to_string(kind) + "(";
  for (std::size_t i = 0; i < params.size(); ++i)
    s += (i ? "," : "") + std::to_string(params[i]);
  return s + ")";
}

namespace {

TrigPoly univariate_kernel(KernelKind kind, std::int64_t order) {
  switch (kind) {
    case KernelKind::Dirichlet: return dirichlet(order);
    case KernelKind::Fejer: return fejer(order);
    case KernelKind::ValleePoussin:
    case KernelKind::TensorVP: return vallee_poussin(order);
    case KernelKind::BlockA: return block_a(static_cast<int>(order));
    default:
      throw std::invalid_argument("kernel kind " + to_string(kind) +
                                  " has no univariate factor");
  }
}

TrigPoly tensor_of(const std::vector<TrigPoly>& factors) {
  TrigPoly out = factors.at(0);
  for (std::size_t i = 1; i < factors.size(); ++i)
    out = tensor_product(out, factors[i]);
  return out;
}

TrigPoly block_tensor(std::span<const int> s) {
  std::vector<TrigPoly> f;
  for (int si : s) f.push_back(block_a(si));
  return tensor_of(f);
}

void require_hc(int r, std::size_t d, int r_min) {
  require(r >= r_min && r <= 30, "hyperbolic-cross kernel: r out of range");
  require(d >= 1 && d <= kMaxDim, "hyperbolic-cross kernel: bad dimension");
}

}  // namespace

TrigPoly tensor_kernel(KernelKind kind, std::span<const std::int64_t> orders) {
  require(!orders.empty() && orders.size() <= kMaxDim,
          "tensor_kernel: need 1..kMaxDim orders");
  std::vector<TrigPoly> f;
  for (auto o : orders) f.push_back(univariate_kernel(kind, o));
  return tensor_of(f);
}

std::vector<std::vector<int>> compositions(int total, std::size_t d) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(d, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == d) {
      s[i] = left;
      out.push_back(s);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      s[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (d > 0 && total >= 0) rec(rec, 0, total);
  return out;
}

TrigPoly hc_vallee_poussin(int r, std::size_t d) {
  require_hc(r, d, 0);
  std::vector<TrigPoly::Term> acc;
  for (int level = 0; level <= r; ++level)
    for (const auto& s : compositions(level, d)) {
      const TrigPoly t = block_tensor(s);
      acc.insert(acc.end(), t.terms().begin(), t.terms().end());
    }
  return TrigPoly::from_terms(d, std::move(acc));
}

TrigPoly hc_vallee_poussin_collapsed(int r, std::size_t d) {
  require_hc(r, d, 0);
  if (d == 1) return vallee_poussin_dyadic(r);
  std::vector<TrigPoly::Term> acc;
  for (int level = 0; level <= r; ++level)
    for (const auto& s : compositions(level, d - 1)) {
      const TrigPoly t =
          tensor_product(block_tensor(s), vallee_poussin_dyadic(r - level));
      acc.insert(acc.end(), t.terms().begin(), t.terms().end());
    }
  return TrigPoly::from_terms(d, std::move(acc));
}

TrigPoly delta_hc_vp(int r, std::size_t d) {
  require_hc(r, d, 1);
  std::vector<TrigPoly::Term> acc;
  for (const auto& s : compositions(r, d)) {
    const TrigPoly t = block_tensor(s);
    acc.insert(acc.end(), t.terms().begin(), t.terms().end());
  }
  return TrigPoly::from_terms(d, std::move(acc));
}

TrigPoly build_kernel(const KernelId& id) {
  switch (id.kind) {
    case KernelKind::HCValleePoussin:
    case KernelKind::DeltaHCVP: {
      require(id.params.size() == 2, id.to_string() + ": expected {r, d}");
      const int r = static_cast<int>(id.params[0]);
      const auto d = static_cast<std::size_t>(id.params[1]);
      return id.kind == KernelKind::HCValleePoussin ? hc_vallee_poussin(r, d)
                                                    : delta_hc_vp(r, d);
    }
    default:
      return tensor_kernel(id.kind, id.params);
  }
}

std::shared_ptr<const TrigPoly> cached_kernel(const KernelId& id) {
  static std::mutex mu;
  static std::map<KernelId, std::shared_ptr<const TrigPoly>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(id); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const TrigPoly>(build_kernel(id));
  std::lock_guard lock(mu);
  return cache.emplace(id, std::move(built)).first->second;
}

SeparableKernel::SeparableKernel(std::size_t dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.factors.size() != dim_)
      throw std::invalid_argument("SeparableKernel: factor count != dim");
    for (const auto& f : t.factors)
      if (f.dim() != 1)
        throw std::invalid_argument("SeparableKernel: factors must be univariate");
  }
}

SeparableKernel SeparableKernel::from_poly(const TrigPoly& f) {
  const std::size_t d = f.dim();
  if (d == 1) return SeparableKernel(1, {Term{{f}}});
  std::map<std::vector<std::int64_t>, std::vector<TrigPoly::Term>> groups;
  for (const auto& [k, c] : f.terms())
    groups[std::vector<std::int64_t>(k.begin() + 1, k.end())].emplace_back(
        FreqIndex{k[0]}, c);
  std::vector<Term> terms;
  for (auto& [rest, first] : groups) {
    Term t;
    t.factors.push_back(TrigPoly::from_terms(1, std::move(first)));
    for (auto v : rest) t.factors.push_back(TrigPoly::monomial(FreqIndex{v}));
    terms.push_back(std::move(t));
  }
  return SeparableKernel(d, std::move(terms));
}

std::vector<std::int64_t> SeparableKernel::max_abs_per_dim() const {
  std::vector<std::int64_t> m(dim_, 0);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < dim_; ++i) {
      auto k = t.factors[i].max_abs_per_dim();
      m[i] = std::max(m[i], k[0]);
    }
  return m;
}

TrigPoly SeparableKernel::to_poly() const {
  std::vector<TrigPoly::Term> acc;
  for (const auto& t : terms_) {
    const TrigPoly p = tensor_of(t.factors);
    acc.insert(acc.end(), p.terms().begin(), p.terms().end());
  }
  return TrigPoly::from_terms(dim_, std::move(acc));
}

SeparableKernel SeparableKernel::autocorrelation() const {
  std::vector<Term> out;
  for (const auto& a : terms_)
    for (const auto& b : terms_) {
      Term t;
      bool zero = false;
      for (std::size_t i = 0; i < dim_ && !zero; ++i) {
        t.factors.push_back(convolve(a.factors[i], b.factors[i]));
        zero = t.factors.back().empty();
      }
      if (!zero) out.push_back(std::move(t));
    }
  return SeparableKernel(dim_, std::move(out));
}

Complex SeparableKernel::operator()(std::span<const double> x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("SeparableKernel: point of wrong dimension");
  Complex sum{};
  for (const auto& t : terms_) {
    Complex prod = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) prod *= t.factors[i](x.subspan(i, 1));
    sum += prod;
  }
  return sum;
}

SeparableKernel separable_tensor(KernelKind kind,
                                 std::span<const std::int64_t> orders) {
  require(!orders.empty() && orders.size() <= kMaxDim,
          "separable_tensor: need 1..kMaxDim orders");
  SeparableKernel::Term t;
  for (auto o : orders) t.factors.push_back(univariate_kernel(kind, o));
  return SeparableKernel(orders.size(), {std::move(t)});
}

SeparableKernel separable_hc_vallee_poussin(int r, std::size_t d) {
  require_hc(r, d, 0);
  std::vector<SeparableKernel::Term> terms;
  if (d == 1) {
    terms.push_back({{vallee_poussin_dyadic(r)}});
    return SeparableKernel(1, std::move(terms));
  }
  for (int level = 0; level <= r; ++level)
    for (const auto& s : compositions(level, d - 1)) {
      SeparableKernel::Term t;
      for (int si : s) t.factors.push_back(block_a(si));
      t.factors.push_back(vallee_poussin_dyadic(r - level));
      terms.push_back(std::move(t));
    }
  return SeparableKernel(d, std::move(terms));
}

SeparableKernel separable_delta_hc_vp(int r, std::size_t d) {
  require_hc(r, d, 1);
  std::vector<SeparableKernel::Term> terms;
  for (const auto& s : compositions(r, d)) {
    SeparableKernel::Term t;
    for (int si : s) t.factors.push_back(block_a(si));
    terms.push_back(std::move(t));
  }
  return SeparableKernel(d, std::move(terms));
}

SeparableKernel build_separable_kernel(const KernelId& id) {
  switch (id.kind) {
    case KernelKind::HCValleePoussin:
    case KernelKind::DeltaHCVP: {
      require(id.params.size() == 2, id.to_string() + ": expected {r, d}");
      const int r = static_cast<int>(id.params[0]);
      const auto d = static_cast<std::size_t>(id.params[1]);
      return id.kind == KernelKind::HCValleePoussin
                 ? separable_hc_vallee_poussin(r, d)
                 : separable_delta_hc_vp(r, d);
    }
    default:
      return separable_tensor(id.kind, id.params);
  }
}

}  // namespace trigdisc
