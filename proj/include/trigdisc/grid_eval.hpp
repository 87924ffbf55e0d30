#pragma once

#include <functional>
#include <span>
#include <vector>

#include "trigdisc/trigpoly.hpp"

namespace trigdisc {

/// Evaluates f on a product grid, one line along the first coordinate at a
/// time. `visit(rest, values)` receives f at all M_0 nodes of x_0 for the
/// trailing-coordinate node with row-major index `rest` (last coordinate
/// fastest). Memory is (#distinct k_0) * prod_{i>0} M_i.
void for_each_grid_line(
    const TrigPoly& f, const GridSpec& grid,
    const std::function<void(std::size_t, std::span<const Complex>)>& visit);

/// All grid values, flat index rest * M_0 + i_0.
std::vector<Complex> evaluate_on_grid(const TrigPoly& f, const GridSpec& grid);

/// Values of a univariate polynomial at 2*pi*m/M, m = 0..M-1.
std::vector<Complex> evaluate_on_circle(const TrigPoly& f, std::size_t m);

/// In-place multidimensional DFT, row-major with the last index fastest:
/// out[j] = sum_k in[k] e^{sign * 2 pi i (j, k/n)}, sign = +1 or -1.
void dft_inplace(std::vector<Complex>& data, std::span<const std::size_t> dims,
                 int sign);

/// Mean of |f|^p over the grid, or the max of |f| for p = infinity.
double grid_power_mean(const TrigPoly& f, const GridSpec& grid, double p);

}  // namespace trigdisc
