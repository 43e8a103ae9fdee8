#include "cjl/cone_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cjl {

ConeSpec::ConeSpec(int m_, int n_) : m(m_), n(n_) {
    if (m < 2 || n < 2)
        throw std::invalid_argument("ConeSpec requires m >= 2 and n >= 2 (got m=" + std::to_string(m) +
                                    ", n=" + std::to_string(n) + ")");
}

std::vector<double> SpectralData::root_set() const {
    std::vector<double> out;
    out.reserve(2 * indicial_roots.size());
    for (const auto& r : indicial_roots) {
        out.push_back(r.minus);
        out.push_back(r.plus);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SolvabilityWindow::admits(double nu) const {
    if (!(nu > lower && nu < upper)) return false;
    return std::none_of(excluded_roots.begin(), excluded_roots.end(),
                        [nu](double r) { return std::abs(r - nu) < 1e-12; });
}

std::pair<double, double> link_radii(const ConeSpec& spec) {
    const double Nm1 = spec.N() - 1;
    return {std::sqrt((spec.m - 1) / Nm1), std::sqrt((spec.n - 1) / Nm1)};
}

namespace {

long long binomial(long long a, long long b) {
    if (b < 0 || a < b || a < 0) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

struct Mode {
    double value;
    long long multiplicity;
};

// Collect the `count` smallest values of a ladder indexed by (l, k) that is
// nondecreasing in each index separately. Values with l or k beyond L are
// bounded below by min(value(L+1, 0), value(0, L+1)), so once the count-th
// candidate is strictly below that bound nothing can be missing.
template <class Value, class Mult>
std::vector<double> smallest_modes(int count, Value value, Mult mult, bool two_index) {
    for (int L = 1;; ++L) {
        std::vector<Mode> modes;
        for (int l = 0; l <= L; ++l)
            for (int k = 0; k <= (two_index ? L : 0); ++k) modes.push_back({value(l, k), mult(l, k)});
        std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.value < b.value; });
        std::vector<double> out;
        for (const auto& md : modes) {
            for (long long r = 0; r < md.multiplicity && static_cast<int>(out.size()) < count; ++r)
                out.push_back(md.value);
            if (static_cast<int>(out.size()) >= count) break;
        }
        const double bound = two_index ? std::min(value(L + 1, 0), value(0, L + 1)) : value(L + 1, 0);
        if (static_cast<int>(out.size()) >= count && out.back() < bound) return out;
        if (L > 100000) throw std::runtime_error("eigenvalue enumeration did not terminate");
    }
}

}  // namespace

long long harmonic_dimension(int l, int d) {
    if (l < 0) return 0;
    return binomial(l + d - 1, d - 1) - binomial(l + d - 3, d - 1);
}

std::vector<double> link_eigenvalues(const ConeSpec& spec, int count) {
    if (count < 2) throw std::invalid_argument("link_eigenvalues: count must be >= 2");
    const long long m = spec.m, n = spec.n, Nm1 = spec.N() - 1;
    // Exact rational: numerator over (m-1)(n-1). Integers divide exactly in double
    // whenever the quotient is an integer, which keeps lambda_0 and lambda_1 exact.
    const auto value = [&](int l, int k) {
        const long long num = l * (l + m - 2) * Nm1 * (n - 1) + k * (k + n - 2) * Nm1 * (m - 1) -
                              Nm1 * (m - 1) * (n - 1);
        return static_cast<double>(num) / static_cast<double>((m - 1) * (n - 1));
    };
    const auto mult = [&](int l, int k) {
        return harmonic_dimension(l, spec.m) * harmonic_dimension(k, spec.n);
    };
    return smallest_modes(count, value, mult, true);
}

std::vector<double> equatorial_eigenvalues(int N, int count) {
    if (N < 2) throw std::invalid_argument("equatorial_eigenvalues: N must be >= 2");
    if (count < 1) throw std::invalid_argument("equatorial_eigenvalues: count must be >= 1");
    const auto value = [N](int l, int) { return static_cast<double>(l) * (l + N - 2); };
    const auto mult = [N](int l, int) { return harmonic_dimension(l, N); };
    return smallest_modes(count, value, mult, false);
}

SpectralData indicial_data(int N, std::span<const double> lambdas) {
    if (!std::is_sorted(lambdas.begin(), lambdas.end()))
        throw std::invalid_argument("indicial_data: eigenvalues must be ascending");
    SpectralData out;
    out.N = N;
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    const double half = (N - 2) / 2.0;
    const double centre = -half;
    out.j0 = lambdas.size();
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        const double disc = half * half + lambdas[j];
        double re = 0.0, im = 0.0;
        if (disc >= 0.0) {
            re = std::sqrt(disc);
            if (out.j0 == lambdas.size()) out.j0 = j;
        } else {
            im = std::sqrt(-disc);
        }
        out.Lambda_re.push_back(re);
        out.Lambda_im.push_back(im);
        out.indicial_roots.push_back({centre - re, centre + re});
    }
    out.stable = (out.j0 == 0);
    return out;
}

Regime regime_of(const ConeSpec& spec) noexcept {
    return spec.m + spec.n >= 8 ? Regime::high_dim : Regime::low_dim;
}

bool is_stable(const ConeSpec& spec) {
    const auto lam = link_eigenvalues(spec, 2);
    return indicial_data(spec, lam).stable;
}

double predicted_nu_bar(const ConeSpec& spec, Regime regime) {
    const int mn = spec.m + spec.n;
    if (regime == Regime::high_dim && mn < 8)
        throw std::invalid_argument("predicted_nu_bar: high_dim regime needs m+n >= 8");
    if (regime == Regime::low_dim && (mn < 4 || mn > 7))
        throw std::invalid_argument("predicted_nu_bar: low_dim regime needs 4 <= m+n <= 7");
    const auto sd = indicial_data(spec, link_eigenvalues(spec, 2));
    const double centre = -(spec.N() - 2) / 2.0;
    return regime == Regime::high_dim ? centre + sd.Lambda_re[0] : centre;
}

SolvabilityWindow solvability_window(const ConeSpec& spec, Regime regime) {
    const int N = spec.N();
    const double nu_bar = predicted_nu_bar(spec, regime);
    const auto sd = indicial_data(spec, link_eigenvalues(spec, 64));
    // Lambda_1 belongs to the first eigenvalue above lambda_0.
    std::size_t j1 = 1;
    while (j1 < sd.lambdas.size() && sd.lambdas[j1] == sd.lambdas[0]) ++j1;
    SolvabilityWindow w;
    w.lower = std::max(2.0 - N - nu_bar, nu_bar);
    w.upper = -(N - 2) / 2.0 + sd.Lambda_re[j1];
    for (double r : sd.root_set())
        if (r > w.lower && r < w.upper) w.excluded_roots.push_back(r);
    return w;
}

}  // namespace cjl
