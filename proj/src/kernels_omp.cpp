// OpenMP versions of the per-sample kernels. Without OpenMP the pragmas are
// ignored and these run serially.
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cjl/kernels.hpp"
#include "cjl/plateau.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cjl::kernels::omp {

void sample_geometry(const ProfileCurve& curve, std::span<const double> s, std::span<GeometryPoint> out,
                     std::span<double> hres) {
    if (out.size() != s.size() || (!hres.empty() && hres.size() != s.size()))
        throw std::invalid_argument("kernel: output size mismatch");
    const auto& spec = curve.spec();
    const int o = curve.orientation();
    const bool want_h = !hres.empty();
    const auto n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto p = curve.at(s[i]);
        out[i] = geometry_at(spec, o, p);
        if (want_h)
            hres[i] = curve.interpolant_derivative(s[i])[2] + (spec.m - 1) * std::sin(p.phi) / p.a -
                      (spec.n - 1) * std::cos(p.phi) / p.b;
    }
}

void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v) {
    if (v.size() != r.size()) throw std::invalid_argument("kernel: output size mismatch");
    const auto n = static_cast<std::ptrdiff_t>(r.size());
    // Argument errors are checked up front; exceptions must not escape a parallel region.
    if (n > 0) (void)plateau_height(N, R, *std::min_element(r.begin(), r.end()));
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) v[i] = plateau_height(N, R, r[i]);
}

double weighted_sup(std::span<const double> s, std::span<const double> h, double nu) {
    if (s.size() != h.size()) throw std::invalid_argument("weighted_sup: size mismatch");
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) best = std::max(best, std::pow(s[i] + 1.0, -nu) * std::abs(h[i]));
    return best;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace cjl::kernels::omp
