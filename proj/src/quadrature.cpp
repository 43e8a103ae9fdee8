#include "cjl/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace cjl::quad {

namespace {

std::vector<double> panels(std::span<const double> g, double h) {
    const std::size_t n = g.size();
    if (n < 4) throw std::invalid_argument("cumulative quadrature needs at least 4 nodes");
    std::vector<double> p(n - 1);
    const double c = h / 24.0;
    p[0] = c * (9 * g[0] + 19 * g[1] - 5 * g[2] + g[3]);
    for (std::size_t k = 1; k + 2 < n; ++k) p[k] = c * (-g[k - 1] + 13 * g[k] + 13 * g[k + 1] - g[k + 2]);
    p[n - 2] = c * (g[n - 4] - 5 * g[n - 3] + 19 * g[n - 2] + 9 * g[n - 1]);
    return p;
}

}  // namespace

std::vector<double> cumulative(std::span<const double> g, double h) {
    const auto p = panels(g, h);
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = out[k] + p[k];
    return out;
}

std::vector<double> reverse_cumulative(std::span<const double> g, double h) {
    const auto p = panels(g, h);
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t k = p.size(); k-- > 0;) out[k] = out[k + 1] + p[k];
    return out;
}

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    // The error estimate has an absolute floor near 1e-15, so a small integral
    // never meets a relative target. Map to [0, 1] and normalize by a first
    // pass L1 before the adaptive run.
    const double h = b - a;
    auto g = [&](double t) { return h * f(a + h * t); };
    double err = 0.0, L1 = 0.0;
    gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 0, rel_tol, &err, &L1);
    const double scale = L1 > 0.0 && std::isfinite(L1) ? L1 : 1.0;
    return scale * gauss_kronrod<double, 31>::integrate([&](double t) { return g(t) / scale; }, 0.0, 1.0, 15, rel_tol);
}

}  // namespace cjl::quad
