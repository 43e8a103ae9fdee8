#include "cjl/jacobi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cjl/errors.hpp"
#include "cjl/kernels.hpp"
#include "cjl/quadrature.hpp"

namespace cjl {

namespace sources {

Source trA3() {
    return [](const GeometryPoint& g) { return g.trA3; };
}
Source zero() {
    return [](const GeometryPoint&) { return 0.0; };
}
Source scaled(Source f, double c) {
    return [f = std::move(f), c](const GeometryPoint& g) { return c * f(g); };
}
Source sum(Source f, Source g) {
    return [f = std::move(f), g = std::move(g)](const GeometryPoint& x) { return f(x) + g(x); };
}

}  // namespace sources

double potential_limit_minus(const ConeSpec& spec, int orientation) {
    const double k = orientation == 1 ? spec.n : spec.m;
    return -(k - 2) * (k - 2) / 4.0;
}

double potential_limit_plus(const ConeSpec& spec) {
    const double N = spec.N();
    return -(N - 2) * (N - 2) / 4.0 + (N - 1);
}

double potential_at(const GeometryPoint& g) {
    const double s = g.s;
    const double q = g.alpha * s - 1.0;
    return -0.25 * q * q - 0.5 * (g.dalpha * s * s + g.alpha * s) + g.A2 * s * s;
}

double weight_p(const ConeSpec& spec, double t, double a, double b, double a1, double b1) {
    return std::exp(0.5 * t - 0.5 * ((spec.m - 1) * std::log(a / a1) + (spec.n - 1) * std::log(b / b1)));
}

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

std::size_t index_at_or_below(const std::vector<double>& t, double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x + 1e-12);
    return it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
}

}  // namespace

EmdenFowlerData emden_fowler_transform(const ProfileCurve& curve, const Source& f, const SolverConfig& cfg) {
    const double s_lo = curve.s_min(), s_hi = curve.s_max();
    if (!(s_lo <= 1.0 && s_hi >= 1.0)) throw std::invalid_argument("emden_fowler_transform: curve must cover s = 1");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("emden_fowler_transform: dt must be positive");

    EmdenFowlerData ef;
    ef.spec = curve.spec();
    ef.orientation = curve.orientation();
    const double t_min = std::log(s_lo), t_max = std::log(s_hi);
    const auto n = static_cast<std::size_t>(std::ceil((t_max - t_min) / cfg.dt)) + 1;
    if (n < 64) throw std::invalid_argument("emden_fowler_transform: t-range too short");
    ef.dt = (t_max - t_min) / static_cast<double>(n - 1);
    ef.t.resize(n);
    ef.s.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        ef.t[k] = k + 1 == n ? t_max : t_min + ef.dt * static_cast<double>(k);
        ef.s[k] = std::clamp(std::exp(ef.t[k]), s_lo, s_hi);
    }

    std::vector<GeometryPoint> geo(n);
    kernels::sample_geometry(curve, ef.s, geo, {}, kernels::Exec::parallel);

    const auto one = curve.at(1.0);
    ef.a1 = one.a;
    ef.b1 = one.b;
    const auto& spec = ef.spec;
    ef.p.resize(n);
    ef.V.resize(n);
    ef.f.resize(n);
    ef.f_tilde.resize(n);
    ef.q.resize(n);
    ef.beta.resize(n);
    ef.zeta0.resize(n);
    ef.dzeta0.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = geo[k];
        ef.p[k] = weight_p(spec, ef.t[k], g.a, g.b, ef.a1, ef.b1);
        ef.q[k] = g.alpha * g.s - 1.0;
        ef.V[k] = potential_at(g);
        ef.f[k] = f(g);
        ef.f_tilde[k] = g.s * g.s * ef.f[k] / ef.p[k];
        ef.beta[k] = g.A2;
        ef.zeta0[k] = g.zeta0;
        ef.dzeta0[k] = g.dzeta0;
    }

    // Quadrature route to p, anchored at t = 0.
    std::vector<double> half_q(n);
    for (std::size_t k = 0; k < n; ++k) half_q[k] = 0.5 * ef.q[k];
    const auto C = quad::cumulative(half_q, ef.dt);
    const std::size_t j = index_at_or_below(ef.t, 0.0);
    const double o = curve.orientation();
    const double C0 = C[j] + quad::gauss_kronrod(
                                 [&](double t) {
                                     const auto g = geometry_at(spec, static_cast<int>(o), curve.at(std::exp(t)));
                                     return 0.5 * (g.alpha * g.s - 1.0);
                                 },
                                 ef.t[j], 0.0, 1e-13);
    ef.p_quadrature.resize(n);
    for (std::size_t k = 0; k < n; ++k) ef.p_quadrature[k] = std::exp(-(C[k] - C0));

    ef.V_minus_limit = potential_limit_minus(spec, ef.orientation);
    ef.V_plus_limit = potential_limit_plus(spec);

    // t0: one unit before the first sign change of zeta0, or 0 if there is none.
    const int sg0 = sign_of(ef.zeta0[0]);
    std::optional<std::size_t> change;
    for (std::size_t k = 1; k < n; ++k)
        if (sign_of(ef.zeta0[k]) != sg0) {
            change = k;
            break;
        }
    double t0 = 0.0;
    if (cfg.t0) {
        t0 = *cfg.t0;
        if (change && ef.t[*change] <= t0)
            throw BreakpointError("zeta0 changes sign inside the left interval; choose a smaller t0",
                                  ef.t[*change]);
    } else if (change) {
        t0 = ef.t[*change - 1] - 1.0;
    }
    if (!(t0 >= t_min + 1.0)) throw BreakpointError("left interval too short: zeta0 vanishes near the axis", t0);
    if (!(t0 < t_max)) throw std::invalid_argument("emden_fowler_transform: t0 beyond the curve");
    ef.i0 = index_at_or_below(ef.t, t0);
    ef.t0 = ef.t[ef.i0];

    double t1;
    if (cfg.t1) {
        t1 = *cfg.t1;
    } else {
        std::size_t last_bad = 0;
        for (std::size_t k = n; k-- > 0;)
            if (std::abs(ef.V[k] - ef.V_plus_limit) >= cfg.V_settle) {
                last_bad = k;
                break;
            }
        t1 = std::max(ef.t0 + 2.0, ef.t[std::min(last_bad + 1, n - 1)]);
    }
    t1 = std::min(t1, t_max);
    ef.i1 = std::max(index_at_or_below(ef.t, t1), ef.i0 + 1);
    ef.t1 = ef.t[ef.i1];
    return ef;
}

FundamentalPair left_fundamental_pair(const EmdenFowlerData& ef) {
    const std::size_t n = ef.i0 + 1;
    if (n < 4) throw std::invalid_argument("left_fundamental_pair: left interval too short");
    FundamentalPair fp;
    fp.t.assign(ef.t.begin(), ef.t.begin() + static_cast<std::ptrdiff_t>(n));
    fp.u_plus.resize(n);
    fp.du_plus.resize(n);
    const int sg = sign_of(ef.zeta0[0]);
    std::vector<double> inv_sq(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (sign_of(ef.zeta0[k]) != sg)
            throw BreakpointError("zeta0 changes sign inside the left interval; choose a smaller t0", ef.t[k]);
        fp.u_plus[k] = ef.zeta0[k] / ef.p[k];
        fp.du_plus[k] = ef.s[k] * ef.dzeta0[k] / ef.p[k] + ef.zeta0[k] * ef.q[k] / (2.0 * ef.p[k]);
        inv_sq[k] = 1.0 / (fp.u_plus[k] * fp.u_plus[k]);
    }
    const auto I = quad::reverse_cumulative(inv_sq, ef.dt);
    fp.u_minus.resize(n);
    fp.du_minus.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        fp.u_minus[k] = -fp.u_plus[k] * I[k];
        fp.du_minus[k] = -fp.du_plus[k] * I[k] + 1.0 / fp.u_plus[k];
    }
    fp.wronskian = fp.u_plus[0] * fp.du_minus[0] - fp.du_plus[0] * fp.u_minus[0];
    for (std::size_t k = 0; k < n; ++k) {
        const double W = fp.u_plus[k] * fp.du_minus[k] - fp.du_plus[k] * fp.u_minus[k];
        fp.wronskian_drift = std::max(fp.wronskian_drift, std::abs(W - fp.wronskian));
    }
    return fp;
}

namespace {

// State in t: a, b, phi, v+, v+', v-, v-', J+, J-, u, u'
using Aug = ode::State<11>;

ode::DenseTrajectory<11> run_segment(const EmdenFowlerData& ef, const Source& f, const SolverConfig& cfg,
                                     double t_start, double t_end, double a, double b, double phi, double u0,
                                     double du0) {
    const auto& spec = ef.spec;
    const int o = ef.orientation;
    auto rhs = [&](double t, const Aug& y) {
        const double s = std::exp(t);
        const auto g = geometry_at(spec, o, {s, y[0], y[1], y[2]});
        const double V = potential_at(g);
        const double p = weight_p(spec, t, y[0], y[1], ef.a1, ef.b1);
        const double ft = s * s * f(g) / p;
        return Aug{s * std::cos(y[2]), s * std::sin(y[2]), s * g.dphi, y[4], -V * y[3], y[6], -V * y[5],
                   y[3] * ft, y[5] * ft, y[10], -V * y[9] + ft};
    };
    auto inside = [](const Aug& y) { return y[0] > 0.0 && y[1] > 0.0; };
    ode::StepControl ctl;
    ctl.rtol = cfg.ivp_tol.rtol;
    ctl.atol = cfg.ivp_tol.atol;
    ctl.h_max = 0.1;
    const Aug y0{a, b, phi, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, u0, du0};
    return ode::integrate<11>(rhs, t_start, y0, t_end, ctl, inside);
}

struct VopValue {
    double u, du, W;
};

VopValue vop(const Aug& y, double u0, double du0) {
    const double u = u0 * y[3] + du0 * y[5] + y[5] * y[7] - y[3] * y[8];
    const double du = u0 * y[4] + du0 * y[6] + y[6] * y[7] - y[4] * y[8];
    return {u, du, y[3] * y[6] - y[4] * y[5]};
}

JacobiSolution solve_once(const ProfileCurve& curve, const Source& f, const SolverConfig& cfg) {
    JacobiSolution sol;
    sol.spec = curve.spec();
    sol.ef = emden_fowler_transform(curve, f, cfg);
    const auto& ef = sol.ef;
    const std::size_t n = ef.t.size();
    sol.u.assign(n, 0.0);
    sol.du.assign(n, 0.0);

    // Left interval.
    const auto fp = left_fundamental_pair(ef);
    const std::size_t nl = ef.i0 + 1;
    std::vector<double> gA(nl), gB(nl);
    for (std::size_t k = 0; k < nl; ++k) {
        gA[k] = fp.u_minus[k] * ef.f_tilde[k];
        gB[k] = fp.u_plus[k] * ef.f_tilde[k];
    }
    // Below t_min the integrands behave like exp(kappa t): f tends to f(0+),
    // so d log f~/dt -> 2 + q/2. This keeps the tail linear in f.
    const double lf = 2.0 + 0.5 * ef.q[0];
    const double kA = fp.du_minus[0] / fp.u_minus[0] + lf;
    const double kB = fp.du_plus[0] / fp.u_plus[0] + lf;
    if (kA <= 0.1 || kB <= 0.1) throw NumericalError("f~ is not integrable at -infinity for this geometry");
    const auto& ft = ef.f_tilde;
    if (ft[0] != 0.0 && sign_of(ft[0]) == sign_of(ft[1]) && sign_of(ft[1]) == sign_of(ft[2])) {
        const double dlog = (-3.0 * std::log(std::abs(ft[0])) + 4.0 * std::log(std::abs(ft[1])) -
                             std::log(std::abs(ft[2]))) /
                            (2.0 * ef.dt);
        if (fp.du_minus[0] / fp.u_minus[0] + dlog <= 0.1)
            throw NumericalError("f~ is not integrable at -infinity");
    }
    const double tailA = gA[0] / kA, tailB = gB[0] / kB;
    auto A = quad::cumulative(gA, ef.dt);
    auto B = quad::cumulative(gB, ef.dt);
    double tail_size = 0.0;
    for (std::size_t k = 0; k < nl; ++k) {
        A[k] += tailA;
        B[k] += tailB;
        sol.u[k] = fp.u_minus[k] * B[k] - fp.u_plus[k] * A[k];
        sol.du[k] = fp.du_minus[k] * B[k] - fp.du_plus[k] * A[k];
        tail_size = std::max(tail_size, std::abs(fp.u_minus[k] * tailB) + std::abs(fp.u_plus[k] * tailA));
    }
    sol.wronskian_drift = fp.wronskian_drift;

    // Middle and right intervals.
    double ivp_gap = 0.0;
    auto fill = [&](const ode::DenseTrajectory<11>& tr, std::size_t k_lo, std::size_t k_hi, double u0, double du0) {
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            const auto y = tr(ef.t[k]);
            const auto v = vop(y, u0, du0);
            sol.u[k] = v.u;
            sol.du[k] = v.du;
            sol.wronskian_drift = std::max(sol.wronskian_drift, std::abs(v.W - 1.0));
            ivp_gap = std::max(ivp_gap, std::abs(v.u - y[9]));
        }
    };
    const auto start = curve.at(ef.s[ef.i0]);
    const double u0 = sol.u[ef.i0], du0 = sol.du[ef.i0];
    const auto mid = run_segment(ef, f, cfg, ef.t[ef.i0], ef.t[ef.i1], start.a, start.b, start.phi, u0, du0);
    fill(mid, ef.i0 + 1, ef.i1, u0, du0);
    if (ef.i1 + 1 < n) {
        const auto end = mid(ef.t[ef.i1]);
        const double u1 = sol.u[ef.i1], du1 = sol.du[ef.i1];
        const auto right = run_segment(ef, f, cfg, ef.t[ef.i1], ef.t[n - 1], end[0], end[1], end[2], u1, du1);
        fill(right, ef.i1 + 1, n - 1, u1, du1);
    }

    double u_sup = 0.0;
    for (double x : sol.u) u_sup = std::max(u_sup, std::abs(x));
    sol.ivp_mismatch = ivp_gap / (1.0 + u_sup);
    sol.left_tail = tail_size / (1e-300 + u_sup);

    // Back to s.
    sol.t = ef.t;
    sol.s = ef.s;
    sol.psi.resize(n);
    sol.dpsi.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        sol.psi[k] = ef.p[k] * sol.u[k];
        sol.dpsi[k] = ef.p[k] * (sol.du[k] - 0.5 * ef.q[k] * sol.u[k]) / ef.s[k];
    }

    // Residual of the s-equation, with t-derivatives from five-point stencils.
    sol.residual.assign(n, 0.0);
    const auto H = static_cast<std::size_t>(std::max(1, cfg.fd_stride));
    const double h = static_cast<double>(H) * ef.dt;
    const double s_lo = 2.0 * curve.s_min(), s_hi = 0.5 * curve.s_max();
    for (double x : ef.f) sol.f_sup = std::max(sol.f_sup, std::abs(x));
    for (std::size_t k = 2 * H; k + 2 * H < n; ++k) {
        if (ef.s[k] < s_lo || ef.s[k] > s_hi) continue;
        const auto& y = sol.psi;
        const double ym2 = y[k - 2 * H], ym1 = y[k - H], y0 = y[k], yp1 = y[k + H], yp2 = y[k + 2 * H];
        const double yt = (-yp2 + 8 * yp1 - 8 * ym1 + ym2) / (12 * h);
        const double ytt = (-yp2 + 16 * yp1 - 30 * y0 + 16 * ym1 - ym2) / (12 * h * h);
        const double s2 = ef.s[k] * ef.s[k];
        const double r = (ytt + ef.q[k] * yt + ef.beta[k] * s2 * y0 - s2 * ef.f[k]) / s2;
        sol.residual[k] = r;
        sol.residual_sup = std::max(sol.residual_sup, std::abs(r));
    }
    sol.residual_target = cfg.residual_rel * (1.0 + sol.f_sup);
    return sol;
}

}  // namespace

JacobiSolution solve_jacobi(const ProfileCurve& curve, const Source& f, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    for (int attempt = 0;; ++attempt) {
        auto sol = solve_once(curve, f, c);
        sol.refinements = attempt;
        if (sol.residual_sup <= sol.residual_target) {
            sol.decay = decay_diagnostics(sol);
            return sol;
        }
        if (attempt >= cfg.max_refinements)
            throw ResidualError("Jacobi residual target missed after refinement", sol.residual_sup,
                                sol.residual_target);
        c.dt *= 0.5;
    }
}

NearOrigin near_origin_behavior(const JacobiSolution& sol, double s_hi) {
    if (sol.s.empty()) throw std::invalid_argument("near_origin_behavior: empty solution");
    const double s_lo = 10.0 * sol.s.front();
    NearOrigin out;
    out.raw = fit_power_law(sol.s, sol.psi, {s_lo, s_hi});
    out.with_log = fit_power_law(sol.s, sol.psi, {s_lo, s_hi}, true);
    out.exponent = out.raw.exponent;
    out.log_coeff = out.with_log.log_coeff;
    out.log_detected = out.log_coeff >= 0.5;
    for (std::size_t k = 0; k < sol.s.size(); ++k)
        if (sol.s[k] >= s_lo) {
            out.leading_coeff = sol.psi[k] / (sol.s[k] * sol.s[k]);
            break;
        }
    const double kdim = sol.ef.orientation == 1 ? sol.spec.n : sol.spec.m;
    out.predicted_coeff = sol.ef.f.front() / (2.0 * kdim);
    return out;
}

DecayReport decay_diagnostics(const JacobiSolution& sol) {
    DecayReport rep;
    const int N = sol.spec.N();
    std::function<double(double)> w;
    if (N >= 5) {
        rep.weight = "s+1";
        w = [](double s) { return s + 1.0; };
    } else if (N == 4) {
        rep.weight = "(s+1)/log(s+2)";
        w = [](double s) { return (s + 1.0) / std::log(s + 2.0); };
    } else {
        rep.weight = "sqrt(s+1)/log(s+2)";
        w = [](double s) { return std::sqrt(s + 1.0) / std::log(s + 2.0); };
    }
    if (sol.s.empty()) return rep;
    const double s_max = sol.s.back();
    std::vector<double> xs, ys;
    for (int k = 0; std::ldexp(1.0, k + 1) <= s_max * (1.0 + 1e-12); ++k) {
        const double lo = std::ldexp(1.0, k), hi = std::ldexp(1.0, k + 1);
        double sup = 0.0;
        for (std::size_t i = 0; i < sol.s.size(); ++i)
            if (sol.s[i] >= lo && sol.s[i] <= hi) sup = std::max(sup, std::abs(sol.psi[i]) * w(sol.s[i]));
        const bool checked = lo >= 100.0;
        rep.windows.push_back({k, sup, checked});
        if (checked && sup > 0.0) {
            xs.push_back(lo * std::sqrt(2.0));
            ys.push_back(sup);
        }
    }
    const DecayWindow* prev = nullptr;
    for (const auto& win : rep.windows) {
        if (!win.checked) continue;
        if (prev && prev->sup > 0.0) {
            const double ratio = win.sup / prev->sup;
            rep.worst_ratio = std::max(rep.worst_ratio, ratio);
            if (ratio > 1.1) rep.non_increasing = false;
        }
        prev = &win;
    }
    if (xs.size() >= 2) rep.trend_exponent = loglog_slope(xs, ys);
    return rep;
}

double weighted_sup_norm(std::span<const double> s, std::span<const double> h, double nu) {
    return kernels::weighted_sup(s, h, nu, kernels::Exec::parallel);
}

}  // namespace cjl
