// Jacobi equation on an O(m) x O(n)-invariant minimal hypersurface for
// functions of the arc length s alone:
//
//   psi_ss + alpha psi_s + beta psi = f,   alpha = (m-1) a'/a + (n-1) b'/b,  beta = |A|^2.
//
// With s = e^t and psi = p u, where p_t / p = -(alpha s - 1)/2, this becomes
//
//   u_tt + V u = f~,   V = -(alpha s - 1)^2/4 - (alpha' s^2 + alpha s)/2 + beta s^2,
//                      f~ = s^2 f / p.
//
// p has a closed form, because alpha s dt = d[(m-1) log a + (n-1) log b]:
//   p(t) = exp(t/2 - [(m-1) log(a/a(1)) + (n-1) log(b/b(1))]/2),  p(0) = 1.
//
// The solve is split at t0 < t1:
//   left   (t_min, t0]  u+ = zeta0/p, u- = -u+ int_t^{t0} u+^{-2}, Wronskian 1,
//                       particular solution u- B - u+ A with A, B integrals of u- f~, u+ f~ from -inf;
//   middle [t0, t1]     fundamental pair v+-(t0) = (1,0), (0,1) and variation of parameters;
//   right  [t1, t_max]  the same with a fresh pair w+- started at t1.
// The middle and right pairs are integrated together with (a, b, phi) in t, so
// V and f~ are exact along the way rather than interpolated.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cjl/decay_fit.hpp"
#include "cjl/errors.hpp"
#include "cjl/profile_ode.hpp"

namespace cjl {

// Right-hand side f as a function of the local geometry.
using Source = std::function<double(const GeometryPoint&)>;

namespace sources {
Source trA3();
Source zero();
Source scaled(Source f, double c);
Source sum(Source f, Source g);
}  // namespace sources

struct SolverConfig {
    double dt = 5e-4;               // t-grid spacing
    int max_refinements = 2;        // dt halvings allowed when the residual misses
    double residual_rel = 1e-6;     // target: residual_rel * (1 + ||f||_inf)
    int fd_stride = 8;              // residual stencil spacing, in grid steps
    Tolerance ivp_tol{1e-12, 1e-14};
    double V_settle = 1e-2;         // t1 rule: |V - V(+inf)| below this from t1 on
    std::optional<double> t0;       // breakpoint overrides
    std::optional<double> t1;
};

struct EmdenFowlerData {
    ConeSpec spec{2, 2};
    int orientation = 1;
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> p;
    std::vector<double> p_quadrature;  // exp(-int_0^t (alpha s - 1)/2), independent check of p
    std::vector<double> V;
    std::vector<double> f;
    std::vector<double> f_tilde;
    std::vector<double> q;             // alpha s - 1
    std::vector<double> beta;
    std::vector<double> zeta0;
    std::vector<double> dzeta0;        // d zeta0 / ds
    double a1 = 0.0, b1 = 0.0;         // a(1), b(1)
    std::size_t i0 = 0, i1 = 0;        // grid indices of t0 and t1
    double t0 = 0.0, t1 = 0.0;
    double V_minus_limit = 0.0;        // -(k-2)^2/4, k the dimension of the sphere that collapses at the axis
    double V_plus_limit = 0.0;         // -(N-2)^2/4 + N - 1
};

double potential_limit_minus(const ConeSpec& spec, int orientation);
double potential_limit_plus(const ConeSpec& spec);

// Requires s_min <= 1 <= s_max on the curve. Throws BreakpointError when a
// requested t0 leaves a sign change of zeta0 inside the left interval.
EmdenFowlerData emden_fowler_transform(const ProfileCurve& curve, const Source& f, const SolverConfig& cfg = {});

// V and p at a single point, from the closed forms.
double potential_at(const GeometryPoint& g);
double weight_p(const ConeSpec& spec, double t, double a, double b, double a1, double b1);

struct FundamentalPair {
    std::vector<double> t;
    std::vector<double> u_plus, du_plus;
    std::vector<double> u_minus, du_minus;
    double wronskian = 0.0;        // value at the left end
    double wronskian_drift = 0.0;  // max |W - wronskian|
};

FundamentalPair left_fundamental_pair(const EmdenFowlerData& ef);

struct DecayWindow {
    int k;          // window [2^k, 2^{k+1}]
    double sup;     // sup of the weighted |psi|
    bool checked;   // 2^k >= 100
};

struct DecayReport {
    std::string weight;  // "s+1", "(s+1)/log(s+2)" or "sqrt(s+1)/log(s+2)"
    std::vector<DecayWindow> windows;
    bool non_increasing = true;  // sup_{k+1} <= 1.1 sup_k over checked windows
    double worst_ratio = 0.0;
    double trend_exponent = 0.0;  // log-log slope of the checked window sups
};

struct JacobiSolution {
    ConeSpec spec{2, 2};
    std::vector<double> s, t;
    std::vector<double> psi, dpsi;  // dpsi = d psi / ds
    std::vector<double> u, du;      // Emden-Fowler unknown and its t-derivative
    std::vector<double> residual;   // pointwise residual, 0 outside the checked range
    double residual_sup = 0.0;      // over s in [2 eps, s_max/2]
    double residual_target = 0.0;
    double f_sup = 0.0;
    double wronskian_drift = 0.0;   // worst over the three pairs
    double ivp_mismatch = 0.0;      // VoP versus direct (u, u') integration, relative
    double left_tail = 0.0;         // size of the tail corrections below t_min, relative to sup|u|
    int refinements = 0;
    EmdenFowlerData ef;
    DecayReport decay;
};

// Throws ResidualError when the target is still missed after max_refinements,
// NumericalError when f~ is not integrable at -inf.
JacobiSolution solve_jacobi(const ProfileCurve& curve, const Source& f, const SolverConfig& cfg = {});

struct NearOrigin {
    DecayFit raw;
    DecayFit with_log;
    double exponent = 0.0;
    double log_coeff = 0.0;
    bool log_detected = false;     // log_coeff >= 0.5
    double leading_coeff = 0.0;    // psi / s^2 at the lower end of the window
    double predicted_coeff = 0.0;  // f(0+) / (2k)
};

// Fits psi over [10 eps, s_hi].
NearOrigin near_origin_behavior(const JacobiSolution& sol, double s_hi = 1e-2);

DecayReport decay_diagnostics(const JacobiSolution& sol);

// max over samples of (s+1)^{-nu} |h(s)|
double weighted_sup_norm(std::span<const double> s, std::span<const double> h, double nu);

}  // namespace cjl
