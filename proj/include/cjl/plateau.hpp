// Radial exterior Plateau problem: the graph of v over {|x| > R} in R^N with
// v = 0 at infinity, vertical at |x| = R, and constant flux
//
//   r^{N-1} v' / sqrt(1 + v'^2) = -R^{N-1}.
//
// Solving for v' gives v'(r) = -q / sqrt(1 - q^2) with q = (R/r)^{N-1}, and
// u = R/rho in the height integral gives
//
//   v(r) = R * J(R/r),   J(x) = int_0^x u^{N-3} (1 - u^{2N-2})^{-1/2} du.
//
// Near x = 1 the integrand has an inverse square root; there we switch to
// w^2 = 1 - u^{2N-2}, under which the tail of J is
//   (1/(N-1)) int_0^{w(x)} (1 - w^2)^{-N/(2N-2)} dw,
// analytic at w = 0 (that is, at rho = R).
//
// The flux constant is R^{N-1}; the large-r coefficient of v is R^{N-1}/(N-2).
#pragma once

#include <vector>

#include "cjl/decay_fit.hpp"

namespace cjl {

struct RadialGraph {
    int N = 0;
    double R = 0.0;
    double alphaR = 0.0;  // v(R+)
    std::vector<double> r;
    std::vector<double> v;
    std::vector<double> dv;
    std::vector<double> zeta0;
    std::vector<double> flux_residual;
};

double alpha_of_R(int N, double R);
double plateau_height(int N, double R, double r);  // r >= R
double plateau_slope(int N, double R, double r);   // r > R
// (-r v' + v) / sqrt(1 + v'^2), written as r q + v sqrt(1 - q^2).
double plateau_zeta0_at(int N, double R, double r);
// |r^{N-1} v' / sqrt(1 + v'^2) + R^{N-1}| for a given slope
double flux_defect(int N, double R, double r, double dv);

// Log-uniform grid on (R, r_max]; the first node sits at R(1 + 1e-7).
RadialGraph plateau_profile(int N, double R, double r_max, double samples_per_unit_log = 200.0);

struct PlateauZeta0 {
    DecayFit fit;                // over [1e2 R, 1e3 R]
    double limit_coeff = 0.0;    // r^{N-2} zeta0 at the last grid point <= 1e3 R
    double predicted_coeff = 0.0;  // (N-1) R^{N-1} / (N-2)
    bool degenerate = false;     // fitted exponent within 0.02 of 2 - N
};
PlateauZeta0 plateau_zeta0(const RadialGraph& graph);

double minimal_graph_residual(const RadialGraph& graph);

}  // namespace cjl
