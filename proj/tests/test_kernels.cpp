#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <cstring>
#include <vector>

#include "cjl/kernels.hpp"

using namespace cjl;

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    ShootingConfig cfg;
    cfg.spec = ConeSpec(2, 3);
    cfg.s_max = 500.0;
    const auto curve = integrate_profile(cfg);
    std::vector<double> s;
    for (int i = 0; i < 5000; ++i) s.push_back(1e-3 * std::pow(4.9e5, i / 4999.0));
    std::vector<GeometryPoint> g1(s.size()), g2(s.size());
    std::vector<double> h1(s.size()), h2(s.size());
    kernels::serial::sample_geometry(curve, s, g1, h1);
    kernels::omp::sample_geometry(curve, s, g2, h2);
    CHECK(std::memcmp(g1.data(), g2.data(), g1.size() * sizeof(GeometryPoint)) == 0);
    CHECK(h1 == h2);

    std::vector<double> r, v1(2000), v2(2000);
    for (int i = 0; i < 2000; ++i) r.push_back(1.0001 + i * 0.5);
    kernels::serial::plateau_heights(4, 1.0, r, v1);
    kernels::omp::plateau_heights(4, 1.0, r, v2);
    CHECK(v1 == v2);

    CHECK(kernels::serial::weighted_sup(s, h1, 0.5) == kernels::omp::weighted_sup(s, h1, 0.5));
    CHECK(kernels::weighted_sup(s, h1, 0.5, kernels::Exec::serial) ==
          kernels::weighted_sup(s, h1, 0.5, kernels::Exec::parallel));
    CHECK(kernels::omp::max_threads() >= 1);
}

TEST_CASE("size mismatch is rejected") {
    ShootingConfig cfg;
    const auto curve = integrate_profile(cfg);
    std::vector<double> s{1.0, 2.0};
    std::vector<GeometryPoint> g(1);
    CHECK_THROWS_AS(kernels::serial::sample_geometry(curve, s, g, {}), std::invalid_argument);
    CHECK_THROWS_AS(kernels::omp::sample_geometry(curve, s, g, {}), std::invalid_argument);
}
