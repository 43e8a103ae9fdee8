#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cjl::quad {

// Running integral from the first node on a uniform grid of spacing h.
// Fourth order: interior panels use the cubic through four neighbours,
// the two end panels a one-sided cubic. Needs at least 4 nodes.
std::vector<double> cumulative(std::span<const double> g, double h);

// out[k] = integral from node k to the last node, accumulated from the right so
// that small tails keep their relative accuracy.
std::vector<double> reverse_cumulative(std::span<const double> g, double h);

// Adaptive 31-point Gauss-Kronrod on [a, b].
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-14);

}  // namespace cjl::quad
