// Dormand-Prince 5(4) integrator with embedded error control and the
// fourth-order continuous extension of Hairer, Norsett & Wanner. Every
// accepted step is kept, so the returned trajectory can be evaluated (and
// differentiated) anywhere in the integration interval after the fact.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cjl::ode {

template <std::size_t Dim>
using State = std::array<double, Dim>;

struct StepControl {
    double rtol = 1e-12;
    double atol = 1e-14;
    double h_init = 0.0;  // 0 selects the starting step automatically
    double h_max = 0.0;   // 0 means unbounded
    double h_min_rel = 1e-13;
    std::size_t max_steps = 5'000'000;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_x)
        : std::runtime_error(what + " (last valid x = " + std::to_string(last_x) + ")"),
          last_x_(last_x) {}
    double last_x() const noexcept { return last_x_; }

private:
    double last_x_;
};

template <std::size_t Dim>
class DenseTrajectory {
public:
    struct Segment {
        double x0;
        double h;
        std::array<State<Dim>, 5> coeff;
    };

    void push(const Segment& seg) {
        starts_.push_back(seg.x0);
        segs_.push_back(seg);
    }

    bool empty() const noexcept { return segs_.empty(); }
    std::size_t size() const noexcept { return segs_.size(); }
    double front() const { return segs_.front().x0; }
    double back() const { return segs_.back().x0 + segs_.back().h; }
    std::span<const Segment> segments() const noexcept { return segs_; }

    State<Dim> operator()(double x) const {
        const Segment& sg = locate(x);
        const double th = (x - sg.x0) / sg.h;
        const double th1 = 1.0 - th;
        State<Dim> y{};
        const auto& r = sg.coeff;
        for (std::size_t i = 0; i < Dim; ++i)
            y[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        return y;
    }

    // Derivative of the interpolating polynomial (not a fresh right-hand-side call).
    State<Dim> derivative(double x) const {
        const Segment& sg = locate(x);
        const double th = (x - sg.x0) / sg.h;
        const double th1 = 1.0 - th;
        State<Dim> dy{};
        const auto& r = sg.coeff;
        for (std::size_t i = 0; i < Dim; ++i) {
            const double S = r[3][i] + th1 * r[4][i];
            const double dS = -r[4][i];
            const double R = r[2][i] + th * S;
            const double dR = S + th * dS;
            const double Q = r[1][i] + th1 * R;
            const double dQ = -R + th1 * dR;
            dy[i] = (Q + th * dQ) / sg.h;
        }
        return dy;
    }

    // State at the left end of every accepted step plus the final state.
    std::vector<std::pair<double, State<Dim>>> nodes() const {
        std::vector<std::pair<double, State<Dim>>> out;
        out.reserve(segs_.size() + 1);
        for (const auto& sg : segs_) out.emplace_back(sg.x0, sg.coeff[0]);
        if (!segs_.empty()) {
            const auto& last = segs_.back();
            State<Dim> y1{};
            for (std::size_t i = 0; i < Dim; ++i) y1[i] = last.coeff[0][i] + last.coeff[1][i];
            out.emplace_back(last.x0 + last.h, y1);
        }
        return out;
    }

private:
    const Segment& locate(double x) const {
        if (segs_.empty()) throw std::logic_error("empty trajectory");
        auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
        std::size_t idx = (it == starts_.begin()) ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
        return segs_[idx];
    }

    std::vector<double> starts_;
    std::vector<Segment> segs_;
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t Dim>
double scaled_norm(const State<Dim>& v, const State<Dim>& y0, const State<Dim>& y1,
                   const StepControl& ctl) {
    double acc = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
        const double sk = ctl.atol + ctl.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = v[i] / sk;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(Dim));
}

template <std::size_t Dim>
bool all_finite(const State<Dim>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

struct AlwaysAdmissible {
    template <class S>
    bool operator()(const S&) const noexcept { return true; }
};

// Integrates y' = f(x, y) from x0 to x1 > x0. `admissible` rejects states
// outside the domain of f; a rejected step is retried with a smaller h.
template <std::size_t Dim, class Rhs, class Guard = AlwaysAdmissible>
DenseTrajectory<Dim> integrate(Rhs&& f, double x0, State<Dim> y0, double x1,
                               const StepControl& ctl, Guard&& admissible = {}) {
    using namespace detail;
    if (!(x1 > x0)) throw std::invalid_argument("integrate: x1 must exceed x0");

    DenseTrajectory<Dim> traj;
    double x = x0;
    State<Dim> y = y0;
    State<Dim> k1 = f(x, y);
    if (!all_finite(k1)) throw IntegrationError("non-finite derivative at start", x);

    const double span_len = x1 - x0;
    double h = ctl.h_init;
    if (h <= 0.0) {
        // Hairer's starting-step heuristic.
        const double d0 = scaled_norm(y, y, y, ctl);
        const double d1n = scaled_norm(k1, y, y, ctl);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, span_len);
        State<Dim> ye{};
        for (std::size_t i = 0; i < Dim; ++i) ye[i] = y[i] + h0 * k1[i];
        State<Dim> fe = f(x + h0, ye);
        State<Dim> diff{};
        for (std::size_t i = 0; i < Dim; ++i) diff[i] = fe[i] - k1[i];
        const double d2 = all_finite(fe) ? scaled_norm(diff, y, y, ctl) / h0 : 1.0 / h0;
        const double dm = std::max(d1n, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min(100.0 * h0, h1);
    }
    if (ctl.h_max > 0.0) h = std::min(h, ctl.h_max);

    bool last_rejected = false;
    std::size_t steps = 0;
    State<Dim> k2, k3, k4, k5, k6, k7, ys, y5;
    while (x < x1) {
        if (++steps > ctl.max_steps) throw IntegrationError("step budget exhausted", x);
        const double h_floor = ctl.h_min_rel * std::max(1.0, std::abs(x));
        if (x + h >= x1 || x1 - (x + h) < h_floor) h = x1 - x;

        for (std::size_t i = 0; i < Dim; ++i) ys[i] = y[i] + h * a21 * k1[i];
        k2 = f(x + c2 * h, ys);
        for (std::size_t i = 0; i < Dim; ++i) ys[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(x + c3 * h, ys);
        for (std::size_t i = 0; i < Dim; ++i)
            ys[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(x + c4 * h, ys);
        for (std::size_t i = 0; i < Dim; ++i)
            ys[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(x + c5 * h, ys);
        for (std::size_t i = 0; i < Dim; ++i)
            ys[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f(x + h, ys);
        for (std::size_t i = 0; i < Dim; ++i)
            y5[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);

        bool ok = all_finite(y5) && admissible(y5);
        double err = 0.0;
        if (ok) {
            k7 = f(x + h, y5);
            State<Dim> ev{};
            for (std::size_t i = 0; i < Dim; ++i)
                ev[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            ok = all_finite(k7) && all_finite(ev);
            if (ok) err = scaled_norm(ev, y, y5, ctl);
        }
        if (!ok) {
            h *= 0.25;
            last_rejected = true;
            if (h < h_floor) throw IntegrationError("step size underflow (inadmissible state)", x);
            continue;
        }

        if (err <= 1.0) {
            typename DenseTrajectory<Dim>::Segment seg;
            seg.x0 = x;
            seg.h = h;
            for (std::size_t i = 0; i < Dim; ++i) {
                const double ydiff = y5[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                seg.coeff[0][i] = y[i];
                seg.coeff[1][i] = ydiff;
                seg.coeff[2][i] = bspl;
                seg.coeff[3][i] = ydiff - h * k7[i] - bspl;
                seg.coeff[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                                       d7 * k7[i]);
            }
            traj.push(seg);
            x = (x1 - (x + h) < h_floor) ? x1 : x + h;
            y = y5;
            k1 = k7;
            double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 10.0;
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
            h *= fac;
            last_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
            if (h < h_floor) throw IntegrationError("step size underflow", x);
        }
        if (ctl.h_max > 0.0) h = std::min(h, ctl.h_max);
    }
    return traj;
}

}  // namespace cjl::ode
