#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "cjl/dopri5.hpp"

using namespace cjl::ode;

TEST_CASE("exponential growth to tolerance") {
    StepControl ctl;
    auto tr = integrate<1>([](double, const State<1>& y) { return State<1>{y[0]}; }, 0.0, {1.0}, 2.0, ctl);
    CHECK(tr.back() == 2.0);
    CHECK(tr(2.0)[0] == doctest::Approx(std::exp(2.0)).epsilon(1e-10));
}

TEST_CASE("dense output and its derivative on the harmonic oscillator") {
    StepControl ctl;
    ctl.rtol = 1e-11;
    ctl.atol = 1e-13;
    auto tr = integrate<2>([](double, const State<2>& y) { return State<2>{y[1], -y[0]}; }, 0.0, {0.0, 1.0},
                           10.0, ctl);
    double worst = 0.0, worst_d = 0.0;
    for (int i = 0; i <= 997; ++i) {
        const double x = 10.0 * i / 997.0;
        worst = std::max(worst, std::abs(tr(x)[0] - std::sin(x)));
        worst_d = std::max(worst_d, std::abs(tr.derivative(x)[0] - std::cos(x)));
    }
    CHECK(worst < 1e-9);
    CHECK(worst_d < 1e-7);
}

TEST_CASE("inadmissible region forces an IntegrationError") {
    StepControl ctl;
    // y' = -1/y reaches y = 0 at x = 1/2 and cannot be continued.
    auto f = [](double, const State<1>& y) { return State<1>{-1.0 / y[0]}; };
    auto guard = [](const State<1>& y) { return y[0] > 0.0; };
    try {
        (void)integrate<1>(f, 0.0, {1.0}, 1.0, ctl, guard);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        // the numerical y can stay barely positive a hair past 1/2
        CHECK(e.last_x() < 0.5 + 1e-6);
        CHECK(e.last_x() > 0.4);
    }
}

TEST_CASE("bad interval") {
    StepControl ctl;
    CHECK_THROWS_AS(integrate<1>([](double, const State<1>& y) { return y; }, 1.0, {1.0}, 0.0, ctl),
                    std::invalid_argument);
}
