#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cjl/dopri5.hpp"
#include "cjl/jacobi_solver.hpp"

using namespace cjl;

namespace {

ProfileCurve curve_for(int m, int n, double s_max, StartAxis axis = StartAxis::axis_m) {
    ShootingConfig cfg;
    cfg.spec = ConeSpec(m, n);
    cfg.start = axis;
    cfg.s_max = s_max;
    return integrate_profile(cfg);
}

// Oracle: march psi'' = f - alpha psi' - |A|^2 psi in s together with the
// profile, from s0 with psi = c s^2, c = f(0)/(2n). Independent of the
// Emden-Fowler route.
ode::DenseTrajectory<5> direct_ivp(const ProfileCurve& curve, double s0, double s1) {
    const auto& spec = curve.spec();
    const auto p = curve.at(s0);
    const double f0 = geometry_at(spec, 1, curve.samples().front()).trA3;
    const double c = f0 / (2.0 * spec.n);
    auto rhs = [&spec](double s, const ode::State<5>& y) {
        const auto g = geometry_at(spec, 1, {s, y[0], y[1], y[2]});
        return ode::State<5>{std::cos(y[2]), std::sin(y[2]), g.dphi, y[4],
                             g.trA3 - g.alpha * y[4] - g.A2 * y[3]};
    };
    ode::StepControl ctl;
    ctl.rtol = 1e-12;
    ctl.atol = 1e-16;
    return ode::integrate<5>(rhs, s0, ode::State<5>{p.a, p.b, p.phi, c * s0 * s0, 2 * c * s0}, s1, ctl);
}

double value_at(const JacobiSolution& sol, double s) {
    std::size_t k = 0;
    while (sol.s[k] < s) ++k;
    return sol.psi[k];
}

}  // namespace

TEST_CASE("zero source gives zero") {
    const auto sol = solve_jacobi(curve_for(3, 3, 100.0), sources::zero());
    for (double x : sol.psi) CHECK(x == 0.0);
}

TEST_CASE("solution agrees with a direct IVP from the axis") {
    for (auto [m, n] : {std::pair{2, 2}, {3, 3}, {4, 4}}) {
        const auto curve = curve_for(m, n, 100.0);
        const auto sol = solve_jacobi(curve, sources::trA3());
        const auto ivp = direct_ivp(curve, 1e-3, 50.0);
        for (double s : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0}) {
            std::size_t k = 0;
            while (sol.s[k] < s) ++k;
            const double ref = ivp(sol.s[k])[3];
            CHECK(std::abs(sol.psi[k] - ref) <= 1e-7 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("linearity in the source") {
    const auto curve = curve_for(2, 3, 200.0);
    const auto one = solve_jacobi(curve, sources::trA3());
    const auto two = solve_jacobi(curve, sources::scaled(sources::trA3(), 2.0));
    const auto c = solve_jacobi(curve, [](const GeometryPoint&) { return 1.0; });
    const auto sum = solve_jacobi(curve, sources::sum(sources::trA3(), [](const GeometryPoint&) { return 1.0; }));
    double scale = 0.0;
    for (double x : one.psi) scale = std::max(scale, std::abs(x));
    for (std::size_t k = 0; k < one.psi.size(); ++k) {
        CHECK(std::abs(two.psi[k] - 2.0 * one.psi[k]) <= 1e-12 * scale);
        CHECK(std::abs(sum.psi[k] - one.psi[k] - c.psi[k]) <= 1e-9 * (scale + std::abs(c.psi[k])));
    }
}

TEST_CASE("Emden-Fowler data: p two ways, V limits, breakpoints") {
    for (auto [m, n] : {std::pair{2, 2}, {2, 3}, {4, 4}}) {
        const auto curve = curve_for(m, n, 4000.0);
        const auto ef = emden_fowler_transform(curve, sources::trA3());
        for (std::size_t k = 0; k < ef.p.size(); ++k)
            CHECK(ef.p[k] == doctest::Approx(ef.p_quadrature[k]).epsilon(1e-8));
        CHECK(ef.V.front() == doctest::Approx(ef.V_minus_limit).epsilon(1e-6).scale(1.0));
        CHECK(ef.V.back() == doctest::Approx(ef.V_plus_limit).epsilon(1e-2).scale(1.0));
        CHECK(ef.V_minus_limit == doctest::Approx(-(n - 2.0) * (n - 2.0) / 4.0));
        CHECK(ef.V_plus_limit == doctest::Approx(-(m + n - 3.0) * (m + n - 3.0) / 4.0 + m + n - 2));
        CHECK(ef.t0 < ef.t1);
        CHECK(ef.t1 >= ef.t0 + 2.0 - ef.dt);
        for (std::size_t k = 0; k <= ef.i0; ++k) CHECK(ef.zeta0[k] > 0.0);
    }
}

TEST_CASE("left fundamental pair: Wronskian and homogeneous equation") {
    const auto curve = curve_for(2, 2, 200.0);
    const auto ef = emden_fowler_transform(curve, sources::trA3());
    const auto fp = left_fundamental_pair(ef);
    CHECK(fp.wronskian == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fp.wronskian_drift < 1e-8);
    const double h = ef.dt;
    for (std::size_t k = 1; k + 1 < fp.t.size(); k += 97) {
        const double upp = (fp.u_plus[k + 1] - 2 * fp.u_plus[k] + fp.u_plus[k - 1]) / (h * h);
        CHECK(std::abs(upp + ef.V[k] * fp.u_plus[k]) < 1e-5 * (1 + std::abs(fp.u_plus[k])));
        const double dup = (fp.u_plus[k + 1] - fp.u_plus[k - 1]) / (2 * h);
        CHECK(dup == doctest::Approx(fp.du_plus[k]).epsilon(1e-6));
    }
    // u- / u+ = -int_t^{t0} u+^{-2}: zero at t0, growing in size toward the axis.
    CHECK(fp.u_minus.back() == 0.0);
    for (std::size_t k = 1; k < fp.t.size(); ++k)
        CHECK(std::abs(fp.u_minus[k] / fp.u_plus[k]) <= std::abs(fp.u_minus[k - 1] / fp.u_plus[k - 1]));
}

TEST_CASE("solver diagnostics") {
    const auto sol = solve_jacobi(curve_for(3, 3, 500.0), sources::trA3());
    CHECK(sol.residual_sup <= sol.residual_target);
    CHECK(sol.wronskian_drift < 1e-8);
    CHECK(sol.ivp_mismatch < 1e-8);
    CHECK(sol.refinements == 0);
    CHECK(sol.decay.weight == "s+1");
    const auto no = near_origin_behavior(sol);
    CHECK(no.exponent == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_FALSE(no.log_detected);
    CHECK(no.leading_coeff == doctest::Approx(no.predicted_coeff).epsilon(1e-3));
}

TEST_CASE("decay weights follow the dimension") {
    CHECK(solve_jacobi(curve_for(2, 2, 300.0), sources::trA3()).decay.weight == "sqrt(s+1)/log(s+2)");
    CHECK(solve_jacobi(curve_for(2, 3, 300.0), sources::trA3()).decay.weight == "(s+1)/log(s+2)");
    CHECK(solve_jacobi(curve_for(4, 4, 300.0), sources::trA3()).decay.weight == "s+1");
}

TEST_CASE("weighted sup norm") {
    const std::vector<double> s{0.0, 1.0, 3.0};
    const std::vector<double> h{1.0, -4.0, 16.0};
    CHECK(weighted_sup_norm(s, h, 1.0) == doctest::Approx(4.0));
    CHECK(weighted_sup_norm(s, h, 2.0) == doctest::Approx(1.0));
    CHECK(weighted_sup_norm(s, h, 0.0) == doctest::Approx(16.0));
}

TEST_CASE("errors") {
    const auto curve = curve_for(2, 2, 2000.0);
    SolverConfig bad_t0;
    bad_t0.t0 = std::log(1000.0);
    CHECK_THROWS_AS(emden_fowler_transform(curve, sources::trA3(), bad_t0), BreakpointError);

    auto singular = [](const GeometryPoint& g) { return std::pow(g.s, -4.0); };
    CHECK_THROWS_AS(solve_jacobi(curve, singular), NumericalError);

    SolverConfig strict;
    strict.residual_rel = 1e-16;
    strict.max_refinements = 1;
    CHECK_THROWS_AS(solve_jacobi(curve_for(3, 3, 100.0), sources::trA3(), strict), ResidualError);
}
