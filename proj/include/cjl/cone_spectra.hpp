// Link spectra, indicial roots and decay predictions for Lawson cones
//
//   C_{m,n} = {(x, y) in R^m x R^n : (n-1)|x|^2 = (m-1)|y|^2},   N = m + n - 1.
//
// The link is the product of round spheres S^{m-1}(r_m) x S^{n-1}(r_n) with
// r_m^2 = (m-1)/(N-1) and r_n^2 = (n-1)/(N-1). Its second fundamental form has
// principal curvatures r_n/r_m (multiplicity m-1) and -r_m/r_n (multiplicity n-1)
// inside S^N, hence the constant squared norm |A|^2 = (n-1) + (m-1) = N - 1.
// The eigenvalues of -J = -(Delta + |A|^2) are therefore the sums of the two
// spherical-harmonic ladders shifted by -(N-1):
//
//   lambda(l, k) = l(l+m-2)/r_m^2 + k(k+n-2)/r_n^2 - (N-1).
//
// lambda(0,0) = -(N-1) and lambda(1,0) = 0 (the translations) fix the two
// lowest values independently of the ladder formula.
#pragma once

#include <span>
#include <utility>
#include <vector>

namespace cjl {

struct ConeSpec {
    int m;
    int n;

    ConeSpec(int m_, int n_);
    int N() const noexcept { return m + n - 1; }
    friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

struct IndicialPair {
    double minus;  // -(N-2)/2 - Re(Lambda_j)
    double plus;   // -(N-2)/2 + Re(Lambda_j)
};

struct SpectralData {
    int N = 0;
    std::vector<double> lambdas;
    std::vector<double> Lambda_re;  // sqrt of the discriminant when it is >= 0, else 0
    std::vector<double> Lambda_im;  // |sqrt| of the discriminant when it is < 0, else 0
    std::vector<IndicialPair> indicial_roots;
    std::size_t j0 = 0;  // first index with nonnegative discriminant
    bool stable = false;

    // All distinct indicial roots, ascending.
    std::vector<double> root_set() const;
};

enum class Regime { high_dim, low_dim };

struct SolvabilityWindow {
    double lower;
    double upper;
    std::vector<double> excluded_roots;  // indicial roots strictly inside (lower, upper)

    bool admits(double nu) const;
};

std::pair<double, double> link_radii(const ConeSpec& spec);

// First `count` eigenvalues of -J on the Lawson link, ascending, with multiplicity.
std::vector<double> link_eigenvalues(const ConeSpec& spec, int count);

// Same for an equatorial sphere S^{N-1} (the link of a hyperplane): lambda = l(l+N-2).
std::vector<double> equatorial_eigenvalues(int N, int count);

// Dimension of the degree-l spherical harmonics on S^{d-1}.
long long harmonic_dimension(int l, int d);

SpectralData indicial_data(int N, std::span<const double> lambdas);
inline SpectralData indicial_data(const ConeSpec& spec, std::span<const double> lambdas) {
    return indicial_data(spec.N(), lambdas);
}

Regime regime_of(const ConeSpec& spec) noexcept;
bool is_stable(const ConeSpec& spec);

// nu_bar = -(N-2)/2 + Lambda_0 (stable, m+n >= 8) or -(N-2)/2 (4 <= m+n <= 7).
// Throws std::invalid_argument when the regime does not match m+n.
double predicted_nu_bar(const ConeSpec& spec, Regime regime);

SolvabilityWindow solvability_window(const ConeSpec& spec, Regime regime);

}  // namespace cjl
