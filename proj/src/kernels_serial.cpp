#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cjl/kernels.hpp"
#include "cjl/plateau.hpp"

namespace cjl::kernels {

namespace {

void check_sizes(std::size_t n, std::size_t out, std::size_t hres) {
    if (out != n || (hres != 0 && hres != n)) throw std::invalid_argument("kernel: output size mismatch");
}

}  // namespace

namespace serial {

void sample_geometry(const ProfileCurve& curve, std::span<const double> s, std::span<GeometryPoint> out,
                     std::span<double> hres) {
    check_sizes(s.size(), out.size(), hres.size());
    const auto& spec = curve.spec();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto p = curve.at(s[i]);
        out[i] = geometry_at(spec, curve.orientation(), p);
        if (!hres.empty())
            hres[i] = curve.interpolant_derivative(s[i])[2] + (spec.m - 1) * std::sin(p.phi) / p.a -
                      (spec.n - 1) * std::cos(p.phi) / p.b;
    }
}

void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v) {
    check_sizes(r.size(), v.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = plateau_height(N, R, r[i]);
}

double weighted_sup(std::span<const double> s, std::span<const double> h, double nu) {
    if (s.size() != h.size()) throw std::invalid_argument("weighted_sup: size mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) best = std::max(best, std::pow(s[i] + 1.0, -nu) * std::abs(h[i]));
    return best;
}

}  // namespace serial

void sample_geometry(const ProfileCurve& curve, std::span<const double> s, std::span<GeometryPoint> out,
                     std::span<double> hres, Exec exec) {
    exec == Exec::serial ? serial::sample_geometry(curve, s, out, hres) : omp::sample_geometry(curve, s, out, hres);
}

void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v, Exec exec) {
    exec == Exec::serial ? serial::plateau_heights(N, R, r, v) : omp::plateau_heights(N, R, r, v);
}

double weighted_sup(std::span<const double> s, std::span<const double> h, double nu, Exec exec) {
    return exec == Exec::serial ? serial::weighted_sup(s, h, nu) : omp::weighted_sup(s, h, nu);
}

}  // namespace cjl::kernels
