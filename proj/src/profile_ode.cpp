#include "cjl/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cjl/kernels.hpp"

namespace cjl {

namespace {

std::vector<double> log_grid(double lo, double hi, double per_unit) {
    std::vector<double> out;
    const double tlo = std::log(lo), thi = std::log(hi);
    const auto count = static_cast<std::size_t>(std::floor((thi - tlo) * per_unit));
    out.reserve(count + 2);
    for (std::size_t k = 0; k <= count; ++k) out.push_back(std::exp(tlo + static_cast<double>(k) / per_unit));
    out.front() = lo;
    if (out.back() < hi * (1.0 - 1e-12)) out.push_back(hi);
    else out.back() = hi;
    return out;
}

double cone_function(const ConeSpec& spec, double a, double b) {
    return (spec.n - 1) * a * a - (spec.m - 1) * b * b;
}

int sign_with_band(const ConeSpec& spec, double a, double b) {
    const double c = cone_function(spec, a, b);
    const double band = 1e-12 * (spec.n - 1 + spec.m - 1) * (a * a + b * b);
    if (std::abs(c) <= band) return 0;
    return c > 0 ? 1 : -1;
}

}  // namespace

ProfileCurve::ProfileCurve(ConeSpec spec, int orientation, ode::DenseTrajectory<3> traj,
                           double samples_per_unit_log)
    : spec_(spec), orientation_(orientation), traj_(std::move(traj)) {
    if (orientation_ != 1 && orientation_ != -1) throw std::invalid_argument("orientation must be +-1");
    if (!(samples_per_unit_log > 0.0)) throw std::invalid_argument("samples_per_unit_log must be > 0");
    for (double s : log_grid(traj_.front(), traj_.back(), samples_per_unit_log)) samples_.push_back(at(s));
}

ProfileSample ProfileCurve::at(double s) const {
    const auto y = traj_(s);
    return {s, y[0], y[1], y[2]};
}

ode::State<3> ProfileCurve::interpolant_derivative(double s) const { return traj_.derivative(s); }

std::vector<ProfileSample> ProfileCurve::nodes() const {
    std::vector<ProfileSample> out;
    for (const auto& [s, y] : traj_.nodes()) out.push_back({s, y[0], y[1], y[2]});
    return out;
}

ProfileSample axis_series_start(const ConeSpec& spec, StartAxis start, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double m = spec.m, n = spec.n;
    if (start == StartAxis::axis_m)
        return {eps, 1.0 + (m - 1) * eps * eps / (2 * n), eps, std::numbers::pi / 2 - (m - 1) * eps / n};
    return {eps, eps, 1.0 + (n - 1) * eps * eps / (2 * m), (n - 1) * eps / m};
}

double cone_angle(const ConeSpec& spec) {
    return std::atan(std::sqrt(static_cast<double>(spec.n - 1) / (spec.m - 1)));
}

ode::State<3> profile_rhs(const ConeSpec& spec, const ode::State<3>& y) {
    const double c = std::cos(y[2]), s = std::sin(y[2]);
    return {c, s, (spec.n - 1) * c / y[1] - (spec.m - 1) * s / y[0]};
}

ProfileCurve integrate_from(const ConeSpec& spec, const ProfileSample& start, double s_max,
                            const Tolerance& tol, double samples_per_unit_log, int orientation) {
    if (!(start.a > 0.0 && start.b > 0.0)) throw std::invalid_argument("start must lie in the open quadrant");
    if (!(s_max > start.s)) throw std::invalid_argument("s_max must exceed the start arc length");
    ode::StepControl ctl;
    ctl.rtol = tol.rtol;
    ctl.atol = tol.atol;
    auto rhs = [&spec](double, const ode::State<3>& y) { return profile_rhs(spec, y); };
    auto inside = [](const ode::State<3>& y) { return y[0] > 0.0 && y[1] > 0.0; };
    auto traj = ode::integrate<3>(rhs, start.s, {start.a, start.b, start.phi}, s_max, ctl, inside);
    return ProfileCurve(spec, orientation, std::move(traj), samples_per_unit_log);
}

ProfileCurve integrate_profile(const ShootingConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.1)) throw std::invalid_argument("epsilon must lie in (0, 0.1)");
    if (!(cfg.s_max > cfg.epsilon)) throw std::invalid_argument("s_max must exceed epsilon");
    if (!(cfg.tol.rtol > 0.0 && cfg.tol.atol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    const auto start = axis_series_start(cfg.spec, cfg.start, cfg.epsilon);
    const int orientation = cfg.start == StartAxis::axis_m ? 1 : -1;
    return integrate_from(cfg.spec, start, cfg.s_max, cfg.tol, cfg.samples_per_unit_log, orientation);
}

PrincipalCurvatures principal_curvatures(const ConeSpec& spec, int orientation, double a, double b,
                                         double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double dphi = (spec.n - 1) * c / b - (spec.m - 1) * s / a;
    return {orientation * dphi, orientation * s / a, -orientation * c / b};
}

GeometryPoint geometry_at(const ConeSpec& spec, int orientation, const ProfileSample& p) {
    const double m1 = spec.m - 1, n1 = spec.n - 1;
    const double c = std::cos(p.phi), sn = std::sin(p.phi);
    const double dphi = n1 * c / p.b - m1 * sn / p.a;
    const double dda = -sn * dphi;  // a''
    const double ddb = c * dphi;    // b''

    GeometryPoint g;
    g.s = p.s;
    g.a = p.a;
    g.b = p.b;
    g.phi = p.phi;
    g.dphi = dphi;
    g.alpha = m1 * c / p.a + n1 * sn / p.b;
    g.dalpha = m1 * (dda / p.a - (c / p.a) * (c / p.a)) + n1 * (ddb / p.b - (sn / p.b) * (sn / p.b));
    const double k0 = -dda * sn + c * ddb;
    g.A2 = k0 * k0 + m1 * (sn / p.a) * (sn / p.a) + n1 * (c / p.b) * (c / p.b);
    const double ka = sn / p.a, kb = -c / p.b;
    g.trA3 = orientation * (dphi * dphi * dphi + m1 * ka * ka * ka + n1 * kb * kb * kb);
    g.zeta0 = orientation * (p.a * sn - c * p.b);
    g.dzeta0 = orientation * dphi * (p.a * c + p.b * sn);
    return g;
}

GeometryTrace geometry_trace(const ProfileCurve& curve) {
    const auto samples = curve.samples();
    std::vector<double> s(samples.size());
    std::transform(samples.begin(), samples.end(), s.begin(), [](const ProfileSample& p) { return p.s; });
    std::vector<GeometryPoint> pts(s.size());
    std::vector<double> hres(s.size());
    kernels::sample_geometry(curve, s, pts, hres, kernels::Exec::parallel);

    GeometryTrace tr;
    tr.s = std::move(s);
    tr.Hres = std::move(hres);
    for (const auto& g : pts) {
        tr.alpha.push_back(g.alpha);
        tr.A2.push_back(g.A2);
        tr.trA3.push_back(g.trA3);
        tr.zeta0.push_back(g.zeta0);
    }
    return tr;
}

ProfileDefects profile_defects(const ProfileCurve& curve, double s_lo, double s_hi) {
    ProfileDefects d;
    const auto& spec = curve.spec();
    for (const auto& p : curve.samples()) {
        if (p.s < s_lo || p.s > s_hi) continue;
        const auto dy = curve.interpolant_derivative(p.s);
        const double c = std::cos(p.phi), sn = std::sin(p.phi);
        const double hres = dy[2] + (spec.m - 1) * sn / p.a - (spec.n - 1) * c / p.b;
        d.h_residual = std::max(d.h_residual, std::abs(hres));
        d.arc_length = std::max(d.arc_length, std::abs(std::hypot(dy[0], dy[1]) - 1.0));
        d.unit_tangent = std::max(d.unit_tangent, std::abs(c * c + sn * sn - 1.0));
    }
    return d;
}

std::vector<double> jacobi_field_dilation(const ProfileCurve& curve) {
    std::vector<double> out;
    out.reserve(curve.samples().size());
    const int o = curve.orientation();
    for (const auto& p : curve.samples()) out.push_back(o * (p.a * std::sin(p.phi) - std::cos(p.phi) * p.b));
    return out;
}

TranslationFields jacobi_field_translation(const ProfileCurve& curve) {
    TranslationFields t;
    for (const auto& p : curve.samples()) {
        t.da.push_back(std::cos(p.phi));
        t.db.push_back(std::sin(p.phi));
    }
    return t;
}

std::vector<double> jacobi_field_rotation(const ProfileCurve& curve) {
    std::vector<double> out;
    out.reserve(curve.samples().size());
    for (const auto& p : curve.samples()) out.push_back(p.a * std::cos(p.phi) + p.b * std::sin(p.phi));
    return out;
}

PropagatedField propagate_dilation_field(const ShootingConfig& cfg) {
    const auto start = axis_series_start(cfg.spec, cfg.start, cfg.epsilon);
    if (!(cfg.s_max > cfg.epsilon)) throw std::invalid_argument("s_max must exceed epsilon");
    const ConeSpec spec = cfg.spec;
    const int o = cfg.start == StartAxis::axis_m ? 1 : -1;
    const auto g0 = geometry_at(spec, o, start);

    using Y = ode::State<5>;  // a, b, phi, z, z_t
    auto rhs = [&](double t, const Y& y) {
        const double s = std::exp(t);
        const auto g = geometry_at(spec, o, {s, y[0], y[1], y[2]});
        return Y{s * std::cos(y[2]), s * std::sin(y[2]), s * g.dphi, y[4],
                 -(g.alpha * s - 1.0) * y[4] - g.A2 * s * s * y[3]};
    };
    auto inside = [](const Y& y) { return y[0] > 0.0 && y[1] > 0.0; };
    ode::StepControl ctl;
    ctl.rtol = cfg.tol.rtol;
    ctl.atol = 1e-300;
    const double t0 = std::log(cfg.epsilon), t1 = std::log(cfg.s_max);
    const auto traj = ode::integrate<5>(rhs, t0, Y{start.a, start.b, start.phi, g0.zeta0, start.s * g0.dzeta0},
                                        t1, ctl, inside);

    PropagatedField out;
    for (double s : log_grid(cfg.epsilon, cfg.s_max, cfg.samples_per_unit_log)) {
        const auto y = traj(std::clamp(std::log(s), t0, t1));
        out.s.push_back(s);
        out.zeta0.push_back(y[3]);
        out.zeta0_geometric.push_back(o * (y[0] * std::sin(y[2]) - std::cos(y[2]) * y[1]));
    }
    return out;
}

int cone_crossings(const ProfileCurve& curve, double s_hi) {
    int count = 0, last = 0;
    for (const auto& p : curve.samples()) {
        if (p.s > s_hi) break;
        const int sg = sign_with_band(curve.spec(), p.a, p.b);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++count;
        last = sg;
    }
    return count;
}

int cone_crossings(const ProfileCurve& curve) { return cone_crossings(curve, curve.s_max()); }

ConeSide classify_side(const ProfileCurve& curve) {
    bool plus = false, minus = false;
    for (const auto& p : curve.samples()) {
        const int sg = sign_with_band(curve.spec(), p.a, p.b);
        plus |= sg > 0;
        minus |= sg < 0;
    }
    if (plus && !minus) return ConeSide::e_plus;
    if (minus && !plus) return ConeSide::e_minus;
    return ConeSide::mixed;
}

std::vector<double> sign_change_locations(std::span<const double> s, std::span<const double> y) {
    std::vector<double> out;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if ((y[i - 1] < 0.0 && y[i] > 0.0) || (y[i - 1] > 0.0 && y[i] < 0.0)) {
            const double w = y[i - 1] / (y[i - 1] - y[i]);
            out.push_back(s[i - 1] + w * (s[i] - s[i - 1]));
        }
    }
    return out;
}

}  // namespace cjl
