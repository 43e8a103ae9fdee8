#include "cjl/decay_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cjl {

namespace {

struct Point {
    double x;  // log r
    double y;  // log|y|
    double r;
};

// Vertex of the parabola through three points, if it lies between the outer two.
Point refine_peak(const Point& a, const Point& b, const Point& c) {
    const double d1 = (b.y - a.y) / (b.x - a.x);
    const double d2 = (c.y - b.y) / (c.x - b.x);
    const double curv = (d2 - d1) / (c.x - a.x);
    if (!(curv < 0.0)) return b;
    const double xv = 0.5 * (a.x + b.x) - d1 / (2.0 * curv);
    if (!(xv > a.x && xv < c.x)) return b;
    const double yv = b.y + d1 * (xv - b.x) + curv * (xv - a.x) * (xv - b.x);
    return {xv, yv, std::exp(xv)};
}

}  // namespace

DecayFit fit_power_law(std::span<const double> r, std::span<const double> y, FitWindow window,
                       bool with_log) {
    if (r.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
    if (!(window.lo > 0.0 && window.hi > window.lo)) throw std::invalid_argument("fit_power_law: bad window");

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= window.lo && r[i] <= window.hi) idx.push_back(i);
    if (idx.size() < 20) throw std::invalid_argument("fit_power_law: fewer than 20 samples in window");
    if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return y[i] == 0.0; }))
        throw std::invalid_argument("fit_power_law: all samples are zero");

    std::vector<Point> raw;
    for (std::size_t i : idx)
        if (y[i] != 0.0) raw.push_back({std::log(r[i]), std::log(std::abs(y[i])), r[i]});

    std::vector<Point> peaks;
    for (std::size_t k = 1; k + 1 < raw.size(); ++k)
        if (raw[k].y > raw[k - 1].y && raw[k].y > raw[k + 1].y)
            peaks.push_back(refine_peak(raw[k - 1], raw[k], raw[k + 1]));

    DecayFit out;
    out.window = window;
    out.oscillatory = peaks.size() >= 5;
    const std::vector<Point>& pts = out.oscillatory ? peaks : raw;

    std::vector<Point> rows;
    for (const auto& p : pts)
        if (!with_log || std::abs(p.x) > 1e-12) rows.push_back(p);
    const Eigen::Index cols = with_log ? 3 : 2;
    if (static_cast<Eigen::Index>(rows.size()) <= cols)
        throw std::invalid_argument("fit_power_law: not enough usable points");

    Eigen::MatrixXd A(rows.size(), cols);
    Eigen::VectorXd b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        A(row, 0) = rows[i].x;
        if (with_log) A(row, 1) = std::log(std::abs(rows[i].x));
        A(row, cols - 1) = 1.0;
        b(row) = rows[i].y;
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    out.exponent = coef(0);
    out.log_coeff = with_log ? coef(1) : 0.0;
    out.residual_rms = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(rows.size()));
    out.points = rows.size();
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
    Eigen::MatrixXd A(x.size(), 2);
    Eigen::VectorXd b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("loglog_slope: values must be positive");
        const auto row = static_cast<Eigen::Index>(i);
        A(row, 0) = std::log(x[i]);
        A(row, 1) = 1.0;
        b(row) = std::log(y[i]);
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

RootMatch classify_against_indicial(const DecayFit& fit, const SpectralData& spectral) {
    const auto roots = spectral.root_set();
    if (roots.empty()) throw std::invalid_argument("classify_against_indicial: no indicial roots");
    double best = roots.front();
    for (double r : roots)
        if (std::abs(r - fit.exponent) < std::abs(best - fit.exponent)) best = r;
    return {best, std::abs(best - fit.exponent), fit.exponent > 2.0 - spectral.N + 0.02};
}

}  // namespace cjl
