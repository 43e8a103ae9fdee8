#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cjl/cone_spectra.hpp"

using namespace cjl;

namespace {

// Independent oracle: dimension of harmonic polynomials of degree l in d
// variables is C(l+d-1, l) - C(l+d-3, l-2); enumerate a generous box and sort.
double choose(int a, int b) {
    if (b < 0 || a < b) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

std::vector<double> brute_spectrum(int m, int n, int count) {
    const double N1 = m + n - 2;
    std::vector<double> all;
    for (int l = 0; l <= 14; ++l)
        for (int k = 0; k <= 14; ++k) {
            const double lam = l * (l + m - 2) * N1 / (m - 1) + k * (k + n - 2) * N1 / (n - 1) - N1;
            const double mult = (choose(l + m - 1, l) - choose(l + m - 3, l - 2)) *
                                (choose(k + n - 1, k) - choose(k + n - 3, k - 2));
            for (int r = 0; r < static_cast<int>(mult) && r < 200; ++r) all.push_back(lam);
        }
    std::sort(all.begin(), all.end());
    all.resize(static_cast<std::size_t>(count));
    return all;
}

}  // namespace

TEST_CASE("cone spec validation") {
    CHECK_THROWS_AS(ConeSpec(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(ConeSpec(3, 0), std::invalid_argument);
    CHECK(ConeSpec(2, 3).N() == 4);
}

TEST_CASE("link radii") {
    auto [r1, r2] = link_radii(ConeSpec(2, 2));
    CHECK(r1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(r2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    std::tie(r1, r2) = link_radii(ConeSpec(2, 3));
    // N - 1 = 3 here, so the radii are sqrt(1/3) and sqrt(2/3)
    CHECK(r1 == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-15));
    CHECK(r2 == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-15));
    for (int m = 2; m <= 8; ++m)
        for (int n = 2; n <= 8; ++n) {
            std::tie(r1, r2) = link_radii(ConeSpec(m, n));
            CHECK(r1 * r1 + r2 * r2 == doctest::Approx(1.0).epsilon(1e-14));
        }
}

TEST_CASE("link eigenvalues: worked values") {
    CHECK(link_eigenvalues(ConeSpec(2, 2), 6) == std::vector<double>{-2, 0, 0, 0, 0, 2});
    CHECK(link_eigenvalues(ConeSpec(4, 4), 2) == std::vector<double>{-6, 0});
}

TEST_CASE("link eigenvalues match a brute-force enumeration") {
    for (int m = 2; m <= 6; ++m)
        for (int n = 2; n <= 6; ++n) {
            const auto got = link_eigenvalues(ConeSpec(m, n), 40);
            const auto want = brute_spectrum(m, n, 40);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        }
}

TEST_CASE("anchors lambda_0 = -(N-1), lambda_1 = 0 exactly") {
    for (int m = 2; m <= 8; ++m)
        for (int n = 2; n <= 8; ++n) {
            const ConeSpec s(m, n);
            const auto lam = link_eigenvalues(s, 2);
            CHECK(lam[0] == -(s.N() - 1));
            CHECK(lam[1] == 0.0);
        }
}

TEST_CASE("harmonic dimensions") {
    CHECK(harmonic_dimension(0, 2) == 1);
    CHECK(harmonic_dimension(3, 2) == 2);
    CHECK(harmonic_dimension(1, 3) == 3);
    CHECK(harmonic_dimension(2, 3) == 5);
    CHECK(harmonic_dimension(2, 4) == 9);
}

TEST_CASE("equatorial spectrum") {
    CHECK(equatorial_eigenvalues(3, 5) == std::vector<double>{0, 2, 2, 2, 6});
}

TEST_CASE("indicial data") {
    SUBCASE("(4,4) is stable with Lambda_0 = 1/2") {
        const auto sd = indicial_data(ConeSpec(4, 4), link_eigenvalues(ConeSpec(4, 4), 8));
        CHECK(sd.stable);
        CHECK(sd.j0 == 0);
        CHECK(sd.Lambda_re[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(sd.indicial_roots[0].minus == doctest::Approx(-3.0));
        CHECK(sd.indicial_roots[0].plus == doctest::Approx(-2.0));
    }
    SUBCASE("(2,2) is unstable, Lambda_0 imaginary") {
        const auto sd = indicial_data(ConeSpec(2, 2), link_eigenvalues(ConeSpec(2, 2), 8));
        CHECK_FALSE(sd.stable);
        CHECK(sd.j0 >= 1);
        CHECK(sd.Lambda_re[0] == 0.0);
        CHECK(sd.Lambda_im[0] == doctest::Approx(std::sqrt(1.75)));
    }
    SUBCASE("lambda = 0 gives Lambda = (N-2)/2") {
        for (int m = 2; m <= 6; ++m)
            for (int n = 2; n <= 6; ++n) {
                const ConeSpec s(m, n);
                const auto sd = indicial_data(s, link_eigenvalues(s, 2));
                CHECK(sd.Lambda_re[1] == doctest::Approx((s.N() - 2) / 2.0).epsilon(1e-14));
            }
    }
    CHECK_THROWS_AS(indicial_data(3, std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("stability boundary m+n >= 8 and its discriminant form") {
    for (int m = 2; m <= 10; ++m)
        for (int n = 2; n <= 10; ++n) {
            const ConeSpec s(m, n);
            const int N = s.N();
            CHECK(is_stable(s) == (m + n >= 8));
            CHECK(is_stable(s) == ((N - 2) * (N - 2) >= 4 * (N - 1)));
        }
}

TEST_CASE("Lambda monotone past j0, roots symmetric") {
    for (int m = 2; m <= 6; ++m)
        for (int n = 2; n <= 6; ++n) {
            const ConeSpec s(m, n);
            const auto sd = indicial_data(s, link_eigenvalues(s, 30));
            for (std::size_t j = sd.j0 + 1; j < sd.Lambda_re.size(); ++j) CHECK(sd.Lambda_re[j] >= sd.Lambda_re[j - 1]);
            const double c = -(s.N() - 2) / 2.0;
            for (const auto& r : sd.indicial_roots) CHECK(r.minus + r.plus == doctest::Approx(2 * c));
        }
}

TEST_CASE("predicted decay exponents") {
    CHECK(predicted_nu_bar(ConeSpec(4, 4), Regime::high_dim) == doctest::Approx(-2.0));
    CHECK(predicted_nu_bar(ConeSpec(2, 2), Regime::low_dim) == doctest::Approx(-0.5));
    CHECK(predicted_nu_bar(ConeSpec(3, 3), Regime::low_dim) == doctest::Approx(-1.5));
    CHECK_THROWS_AS(predicted_nu_bar(ConeSpec(2, 2), Regime::high_dim), std::invalid_argument);
    CHECK_THROWS_AS(predicted_nu_bar(ConeSpec(4, 4), Regime::low_dim), std::invalid_argument);
}

TEST_CASE("solvability windows") {
    const auto w44 = solvability_window(ConeSpec(4, 4), Regime::high_dim);
    CHECK(w44.admits(-1.0));

    const auto w23 = solvability_window(ConeSpec(2, 3), Regime::low_dim);
    CHECK(w23.lower == doctest::Approx(-1.0));
    CHECK(w23.upper == doctest::Approx(0.0));
    CHECK_FALSE(w23.admits(-1.0));

    const auto w22 = solvability_window(ConeSpec(2, 2), Regime::low_dim);
    CHECK(w22.lower == doctest::Approx(-0.5));
    CHECK(w22.upper == doctest::Approx(0.0));

    for (int m = 2; m <= 6; ++m)
        for (int n = 2; n <= 6; ++n) {
            const ConeSpec s(m, n);
            if (s.N() >= 5) CHECK(solvability_window(s, regime_of(s)).admits(-1.0));
        }
}
