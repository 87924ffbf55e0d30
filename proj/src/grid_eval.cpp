#include "trigdisc/grid_eval.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace trigdisc {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

Plan backward_plan(std::span<const std::size_t> dims, Complex* data) {
  std::vector<int> n(dims.begin(), dims.end());
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                            as_fftw(data), as_fftw(data), FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED));
}

std::size_t residue(std::int64_t k, std::size_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(((k % mm) + mm) % mm);
}

}  // namespace

void for_each_grid_line(
    const TrigPoly& f, const GridSpec& grid,
    const std::function<void(std::size_t, std::span<const Complex>)>& visit) {
  const std::size_t d = f.dim();
  if (grid.dim() != d)
    throw std::invalid_argument("grid dimension does not match polynomial");
  for (auto m : grid.points)
    if (m == 0) throw std::invalid_argument("grid sizes must be >= 1");

  const std::size_t m0 = grid.points[0];
  std::span<const std::size_t> rest_dims(grid.points.data() + 1, d - 1);
  std::size_t rest = 1;
  for (auto m : rest_dims) rest *= m;

  // Group the spectrum by the residue of k_0; each group becomes a function
  // of the trailing coordinates tabulated on the trailing grid.
  std::map<std::size_t, std::size_t> row_of;
  for (const auto& [k, c] : f.terms()) row_of.emplace(residue(k[0], m0), 0);
  std::size_t nrows = 0;
  for (auto& [r, row] : row_of) row = nrows++;

  std::vector<Complex> table(nrows * rest, Complex{});
  for (const auto& [k, c] : f.terms()) {
    std::size_t idx = 0;
    for (std::size_t i = 1; i < d; ++i)
      idx = idx * grid.points[i] + residue(k[i], grid.points[i]);
    table[row_of[residue(k[0], m0)] * rest + idx] += c;
  }
  if (d > 1 && nrows > 0) {
    auto plan = backward_plan(rest_dims, table.data());
    for (std::size_t row = 0; row < nrows; ++row)
      fftw_execute_dft(plan.get(), as_fftw(table.data() + row * rest),
                       as_fftw(table.data() + row * rest));
  }

  std::vector<Complex> line(m0);
  const std::size_t one = m0;
  auto line_plan = backward_plan(std::span<const std::size_t>(&one, 1),
                                 line.data());
  for (std::size_t r = 0; r < rest; ++r) {
    std::fill(line.begin(), line.end(), Complex{});
    for (const auto& [res, row] : row_of) line[res] += table[row * rest + r];
    fftw_execute_dft(line_plan.get(), as_fftw(line.data()),
                     as_fftw(line.data()));
    visit(r, line);
  }
}

void dft_inplace(std::vector<Complex>& data, std::span<const std::size_t> dims,
                 int sign) {
  std::size_t total = 1;
  for (auto n : dims) total *= n;
  if (dims.empty() || total != data.size())
    throw std::invalid_argument("dft: data size does not match dims");
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +-1");
  std::vector<int> n(dims.begin(), dims.end());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = Plan(fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                              as_fftw(data.data()), as_fftw(data.data()),
                              sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED));
  }
  fftw_execute(plan.get());
}

std::vector<Complex> evaluate_on_grid(const TrigPoly& f,
                                      const GridSpec& grid) {
  std::vector<Complex> out(grid.total());
  const std::size_t m0 = grid.points.at(0);
  for_each_grid_line(f, grid, [&](std::size_t r, std::span<const Complex> v) {
    std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(r * m0));
  });
  return out;
}

std::vector<Complex> evaluate_on_circle(const TrigPoly& f, std::size_t m) {
  if (f.dim() != 1)
    throw std::invalid_argument("evaluate_on_circle needs a univariate polynomial");
  return evaluate_on_grid(f, GridSpec{{m}});
}

double grid_power_mean(const TrigPoly& f, const GridSpec& grid, double p) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for_each_grid_line(f, grid, [&](std::size_t, std::span<const Complex> v) {
      for (auto z : v) mx = std::max(mx, std::abs(z));
    });
    return mx;
  }
  // Neumaier-compensated running sum.
  double sum = 0.0, comp = 0.0;
  const bool even = (p == std::floor(p)) && (static_cast<long>(p) % 2 == 0);
  const double half = p / 2.0;
  for_each_grid_line(f, grid, [&](std::size_t, std::span<const Complex> v) {
    for (auto z : v) {
      const double a = even ? std::pow(std::norm(z), half)
                            : std::pow(std::abs(z), p);
      const double t = sum + a;
      comp += std::abs(sum) >= a ? (sum - t) + a : (a - t) + sum;
      sum = t;
    }
  });
  return (sum + comp) / static_cast<double>(grid.total());
}

}  // namespace trigdisc
