#include "cjl/plateau.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cjl/kernels.hpp"
#include "cjl/quadrature.hpp"

namespace cjl {

namespace {

constexpr double switch_x = 0.8;

void check_args(int N, double R) {
    if (N < 3) throw std::invalid_argument("plateau: N must be >= 3");
    if (!(R > 0.0)) throw std::invalid_argument("plateau: R must be positive");
}

// int_0^x u^{N-3} (1 - u^{2N-2})^{-1/2} du for x <= switch_x
double J_head(int N, double x) {
    if (x <= 0.0) return 0.0;
    const double p = 2.0 * N - 2.0;
    return quad::gauss_kronrod(
        [N, p](double u) { return std::pow(u, N - 3) / std::sqrt(1.0 - std::pow(u, p)); }, 0.0, x);
}

// int_x^1 of the same integrand, via w^2 = 1 - u^{2N-2}; w2 is w(x)^2
double J_tail_from_w2(int N, double w2) {
    const double e = -static_cast<double>(N) / (2.0 * N - 2.0);
    const double w = std::sqrt(w2);
    return quad::gauss_kronrod([e](double t) { return std::pow(1.0 - t * t, e); }, 0.0, w) / (N - 1);
}

double alpha_unit(int N) {
    const double p = 2.0 * N - 2.0;
    return J_head(N, switch_x) + J_tail_from_w2(N, 1.0 - std::pow(switch_x, p));
}

}  // namespace

double alpha_of_R(int N, double R) {
    check_args(N, R);
    return R * alpha_unit(N);
}

double plateau_height(int N, double R, double r) {
    check_args(N, R);
    if (!(r >= R)) throw std::invalid_argument("plateau: r must be >= R");
    const double x = R / r;
    if (x <= switch_x) return R * J_head(N, x);
    const double w2 = -std::expm1(-(2.0 * N - 2.0) * std::log(r / R));
    return R * (alpha_unit(N) - J_tail_from_w2(N, w2));
}

double plateau_slope(int N, double R, double r) {
    check_args(N, R);
    if (!(r > R)) throw std::invalid_argument("plateau: slope needs r > R");
    const double lr = std::log(r / R);
    const double q = std::exp(-(N - 1) * lr);
    const double one_minus_q2 = -std::expm1(-(2.0 * N - 2.0) * lr);
    return -q / std::sqrt(one_minus_q2);
}

double plateau_zeta0_at(int N, double R, double r) {
    const double lr = std::log(r / R);
    const double q = std::exp(-(N - 1) * lr);
    const double one_minus_q2 = -std::expm1(-(2.0 * N - 2.0) * lr);
    return r * q + plateau_height(N, R, r) * std::sqrt(one_minus_q2);
}

double flux_defect(int N, double R, double r, double dv) {
    return std::abs(std::pow(r, N - 1) * dv / std::sqrt(1.0 + dv * dv) + std::pow(R, N - 1));
}

RadialGraph plateau_profile(int N, double R, double r_max, double samples_per_unit_log) {
    check_args(N, R);
    if (!(r_max > R)) throw std::invalid_argument("plateau: r_max must exceed R");
    RadialGraph g;
    g.N = N;
    g.R = R;
    g.alphaR = alpha_of_R(N, R);

    const double r0 = R * (1.0 + 1e-7);
    if (!(r_max > r0)) throw std::invalid_argument("plateau: r_max too close to R");
    const double t0 = std::log(r0), t1 = std::log(r_max);
    const auto count = static_cast<std::size_t>(std::ceil((t1 - t0) * samples_per_unit_log));
    for (std::size_t k = 0; k <= count; ++k)
        g.r.push_back(k == count ? r_max : std::exp(t0 + (t1 - t0) * static_cast<double>(k) / count));

    g.v.resize(g.r.size());
    kernels::plateau_heights(N, R, g.r, g.v, kernels::Exec::parallel);
    for (std::size_t i = 0; i < g.r.size(); ++i) {
        const double dv = plateau_slope(N, R, g.r[i]);
        const double lr = std::log(g.r[i] / R);
        const double q = std::exp(-(N - 1) * lr);
        g.dv.push_back(dv);
        g.zeta0.push_back(g.r[i] * q + g.v[i] * std::sqrt(-std::expm1(-(2.0 * N - 2.0) * lr)));
        g.flux_residual.push_back(flux_defect(N, R, g.r[i], dv));
    }
    return g;
}

PlateauZeta0 plateau_zeta0(const RadialGraph& g) {
    if (g.r.empty() || g.r.back() < 1e3 * g.R * (1.0 - 1e-12))
        throw std::invalid_argument("plateau_zeta0: graph must reach 1e3 R");
    PlateauZeta0 out;
    out.fit = fit_power_law(g.r, g.zeta0, {1e2 * g.R, 1e3 * g.R});
    std::size_t last = 0;
    for (std::size_t i = 0; i < g.r.size(); ++i)
        if (g.r[i] <= 1e3 * g.R * (1.0 + 1e-12)) last = i;
    out.limit_coeff = std::pow(g.r[last], g.N - 2) * g.zeta0[last];
    out.predicted_coeff = (g.N - 1) * std::pow(g.R, g.N - 1) / (g.N - 2);
    out.degenerate = std::abs(out.fit.exponent - (2.0 - g.N)) <= 0.02;
    return out;
}

double minimal_graph_residual(const RadialGraph& g) {
    double worst = 0.0;
    for (double f : g.flux_residual) worst = std::max(worst, f);
    return worst;
}

}  // namespace cjl
