#include "trigdisc/freqsets.hpp"

#include <algorithm>
#include <limits>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace trigdisc {

FreqIndex::FreqIndex(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim)
    throw std::invalid_argument("FreqIndex: dimension must be in [1, " +
                                std::to_string(kMaxDim) + "]");
  dim_ = static_cast<std::uint8_t>(dim);
}

FreqIndex::FreqIndex(std::initializer_list<std::int64_t> coords)
    : FreqIndex(std::span<const std::int64_t>(coords.begin(), coords.size())) {}

FreqIndex::FreqIndex(std::span<const std::int64_t> coords)
    : FreqIndex(coords.size()) {
  std::copy(coords.begin(), coords.end(), k_.begin());
}

bool FreqIndex::is_zero() const {
  return std::all_of(begin(), end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t FreqIndex::max_abs() const {
  std::int64_t m = 0;
  for (auto v : *this) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::int64_t FreqIndex::cross_weight() const {
  std::int64_t w = 1;
  for (auto v : *this) {
    const std::int64_t a = std::max<std::int64_t>(v < 0 ? -v : v, 1);
    if (__builtin_mul_overflow(w, a, &w))
      return std::numeric_limits<std::int64_t>::max();
  }
  return w;
}

FreqIndex FreqIndex::operator-() const {
  FreqIndex r = *this;
  for (std::size_t i = 0; i < dim_; ++i) r.k_[i] = -k_[i];
  return r;
}

FreqIndex operator+(const FreqIndex& a, const FreqIndex& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("FreqIndex: dim mismatch");
  FreqIndex r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.k_[i] += b.k_[i];
  return r;
}

FreqIndex operator-(const FreqIndex& a, const FreqIndex& b) {
  return a + (-b);
}

bool operator==(const FreqIndex& a, const FreqIndex& b) {
  return a.dim_ == b.dim_ && std::equal(a.begin(), a.end(), b.begin());
}

std::strong_ordering operator<=>(const FreqIndex& a, const FreqIndex& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (auto c = a.k_[i] <=> b.k_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string FreqIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dim_; ++i) os << (i ? "," : "") << k_[i];
  os << ')';
  return os.str();
}

int dyadic_level(std::int64_t k) {
  const auto a = static_cast<std::uint64_t>(k < 0 ? -k : k);
  return static_cast<int>(std::bit_width(a));
}

std::string to_string(FreqSetKind kind) {
  switch (kind) {
    case FreqSetKind::Rectangle: return "rectangle";
    case FreqSetKind::HyperbolicCross: return "hyperbolic_cross";
    case FreqSetKind::DyadicBlock: return "dyadic_block";
    case FreqSetKind::StepHyperbolicCross: return "step_hyperbolic_cross";
    case FreqSetKind::Explicit: return "explicit";
  }
  return "unknown";
}

FreqSet::FreqSet(FreqSetKind kind, std::size_t dim,
                 std::vector<std::int64_t> params,
                 std::vector<FreqIndex> members)
    : kind_(kind),
      dim_(dim),
      params_(std::move(params)),
      members_(std::move(members)) {}

bool FreqSet::contains(const FreqIndex& k) const {
  if (k.dim() != dim_) return false;
  switch (kind_) {
    case FreqSetKind::Rectangle:
      for (std::size_t i = 0; i < dim_; ++i) {
        const auto a = k[i] < 0 ? -k[i] : k[i];
        if (a >= params_[i]) return false;
      }
      return true;
    case FreqSetKind::HyperbolicCross:
      return k.cross_weight() <= params_[0];
    case FreqSetKind::DyadicBlock:
      for (std::size_t i = 0; i < dim_; ++i)
        if (dyadic_level(k[i]) != params_[i]) return false;
      return true;
    case FreqSetKind::StepHyperbolicCross: {
      std::int64_t total = 0;
      for (auto v : k) total += dyadic_level(v);
      return total <= params_[0];
    }
    case FreqSetKind::Explicit:
      return std::binary_search(members_.begin(), members_.end(), k);
  }
  return false;
}

std::vector<std::int64_t> FreqSet::max_abs_per_dim() const {
  std::vector<std::int64_t> m(dim_, 0);
  for (const auto& k : members_)
    for (std::size_t i = 0; i < dim_; ++i)
      m[i] = std::max(m[i], k[i] < 0 ? -k[i] : k[i]);
  return m;
}

nlohmann::json FreqSet::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& k : members_)
    arr.push_back(std::vector<std::int64_t>(k.begin(), k.end()));
  return arr;
}

namespace {

void check_dim(std::size_t d) {
  if (d == 0 || d > kMaxDim)
    throw std::invalid_argument("frequency set dimension must be in [1, " +
                                std::to_string(kMaxDim) + "]");
}

// Lexicographic product of per-coordinate sorted value lists.
std::vector<FreqIndex> cartesian(
    const std::vector<std::vector<std::int64_t>>& axes) {
  std::vector<FreqIndex> out;
  const std::size_t d = axes.size();
  for (const auto& a : axes)
    if (a.empty()) return out;
  std::vector<std::size_t> pos(d, 0);
  FreqIndex k(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) k[i] = axes[i][pos[i]];
    out.push_back(k);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++pos[i] < axes[i].size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace

FreqSet build_rectangle(std::span<const std::int64_t> j) {
  check_dim(j.size());
  std::vector<std::vector<std::int64_t>> axes;
  for (auto ji : j) {
    if (ji < 1)
      throw std::invalid_argument("build_rectangle: every j_i must be >= 1");
    std::vector<std::int64_t> a;
    for (std::int64_t v = -(ji - 1); v <= ji - 1; ++v) a.push_back(v);
    axes.push_back(std::move(a));
  }
  return FreqSet(FreqSetKind::Rectangle, j.size(),
                 std::vector<std::int64_t>(j.begin(), j.end()),
                 cartesian(axes));
}

FreqSet build_rectangle(std::initializer_list<std::int64_t> j) {
  return build_rectangle(std::span<const std::int64_t>(j.begin(), j.size()));
}

FreqSet build_hyperbolic_cross(std::int64_t n, std::size_t d) {
  check_dim(d);
  if (n < 1) throw std::invalid_argument("build_hyperbolic_cross: N must be >= 1");
  std::vector<FreqIndex> out;
  FreqIndex k(d);
  // Each coordinate may only spend what is left of the product budget.
  std::function<void(std::size_t, std::int64_t)> rec =
      [&](std::size_t i, std::int64_t budget) {
        if (i == d) {
          out.push_back(k);
          return;
        }
        for (std::int64_t v = -budget; v <= budget; ++v) {
          const std::int64_t w = std::max<std::int64_t>(v < 0 ? -v : v, 1);
          k[i] = v;
          rec(i + 1, budget / w);
        }
      };
  rec(0, n);
  return FreqSet(FreqSetKind::HyperbolicCross, d, {n}, std::move(out));
}

FreqSet build_dyadic_block(std::span<const std::int64_t> s) {
  check_dim(s.size());
  std::vector<std::vector<std::int64_t>> axes;
  for (auto si : s) {
    if (si < 0 || si > 40)
      throw std::invalid_argument("build_dyadic_block: s_i must be in [0, 40]");
    std::vector<std::int64_t> a;
    if (si == 0) {
      a.push_back(0);
    } else {
      const std::int64_t lo = std::int64_t{1} << (si - 1);
      const std::int64_t hi = (std::int64_t{1} << si) - 1;
      for (std::int64_t v = -hi; v <= -lo; ++v) a.push_back(v);
      for (std::int64_t v = lo; v <= hi; ++v) a.push_back(v);
    }
    axes.push_back(std::move(a));
  }
  return FreqSet(FreqSetKind::DyadicBlock, s.size(),
                 std::vector<std::int64_t>(s.begin(), s.end()),
                 cartesian(axes));
}

FreqSet build_dyadic_block(std::initializer_list<std::int64_t> s) {
  return build_dyadic_block(std::span<const std::int64_t>(s.begin(), s.size()));
}

FreqSet build_step_hyperbolic_cross(std::int64_t r, std::size_t d) {
  check_dim(d);
  if (r < 0 || r > 40)
    throw std::invalid_argument("build_step_hyperbolic_cross: r must be in [0, 40]");
  std::vector<FreqIndex> out;
  FreqIndex k(d);
  std::function<void(std::size_t, std::int64_t)> rec =
      [&](std::size_t i, std::int64_t levels) {
        if (i == d) {
          out.push_back(k);
          return;
        }
        const std::int64_t hi = (std::int64_t{1} << levels) - 1;
        for (std::int64_t v = -hi; v <= hi; ++v) {
          k[i] = v;
          rec(i + 1, levels - dyadic_level(v));
        }
      };
  rec(0, r);
  return FreqSet(FreqSetKind::StepHyperbolicCross, d, {r}, std::move(out));
}

FreqSet make_explicit_set(std::size_t d, std::vector<FreqIndex> ks) {
  check_dim(d);
  for (const auto& k : ks)
    if (k.dim() != d)
      throw std::invalid_argument("make_explicit_set: member of wrong dimension");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return FreqSet(FreqSetKind::Explicit, d, {}, std::move(ks));
}

FreqSet difference_set(const FreqSet& q) {
  std::vector<FreqIndex> diffs;
  diffs.reserve(q.size() * q.size());
  for (const auto& k : q)
    for (const auto& l : q) diffs.push_back(k - l);
  return make_explicit_set(q.dim(), std::move(diffs));
}

FreqSet freq_set_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("frequency set JSON must be a nonempty array");
  const std::size_t d = j.front().size();
  std::vector<FreqIndex> ks;
  for (const auto& row : j) {
    const auto v = row.get<std::vector<std::int64_t>>();
    ks.emplace_back(std::span<const std::int64_t>(v));
  }
  return make_explicit_set(d, std::move(ks));
}

}  // namespace trigdisc
