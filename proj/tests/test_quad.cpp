#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hdisc/quad.hpp"

using namespace hdisc;

TEST_CASE("gk15 panel is exact on polynomials") {
    // Kronrod extension of G7 integrates degree <= 22 exactly
    double v, e;
    gk15_panel([](double x) { return 5 * x * x * x * x - 2 * x + 1; }, -1.0, 3.0, v, e);
    // int = x^5 - x^2 + x
    CHECK(v == doctest::Approx((243.0 - 9 + 3) - (-1 - 1 - 1)).epsilon(1e-14));
    CHECK(e < 1e-12);

    gk15_panel([](double x) { return std::pow(x, 13); }, 0.0, 2.0, v, e);
    CHECK(v == doctest::Approx(std::pow(2.0, 14) / 14.0).epsilon(1e-14));
}

TEST_CASE("gk15 nodes and weights") {
    std::vector<double> nodes, w;
    gk15_nodes(0.5, 2.5, nodes, w);
    REQUIRE(nodes.size() == 15);
    REQUIRE(w.size() == 15);
    double s = 0.0, sx2 = 0.0;
    for (size_t i = 0; i < 15; ++i) {
        CHECK(nodes[i] >= 0.5);
        CHECK(nodes[i] <= 2.5);
        s += w[i];
        sx2 += w[i] * nodes[i] * nodes[i];
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));                    // int 1
    CHECK(sx2 == doctest::Approx((15.625 - 0.125) / 3.0).epsilon(1e-14));  // int x^2
}

TEST_CASE("adaptive integration meets the tolerance") {
    // mildly singular derivative at 0
    auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - 2.0 / 3.0) < 1e-10);

    // oscillatory
    r = integrate_adaptive([](double x) { return std::cos(10.0 * x); }, 0.0, 20.0, 1e-12);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - std::sin(200.0) / 10.0) < 1e-10);
    CHECK(r.evaluations > 15);
}

TEST_CASE("adaptive integration reports non-convergence honestly") {
    // step discontinuity with an absurd tolerance and few panels
    auto r = integrate_adaptive([](double x) { return x < 0.37 ? 0.0 : 1.0; }, 0.0, 1.0,
                                1e-16, 0.0, 8);
    CHECK(!r.converged);
    CHECK(r.error_bound > 0.0);
    // the value is still roughly right
    CHECK(std::fabs(r.value - 0.63) < 1e-2);
}

TEST_CASE("panel-seeded integration handles known breakpoints") {
    // |sin| with kinks at multiples of pi
    std::vector<double> bp = {0.0, M_PI, 2 * M_PI, 3 * M_PI};
    auto r = integrate_adaptive_panels([](double x) { return std::fabs(std::sin(x)); }, bp,
                                       1e-12);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - 6.0) < 1e-10);
}

TEST_CASE("pairwise sum") {
    std::vector<double> v;
    CHECK(pairwise_sum(v) == 0.0);
    v = {1.5};
    CHECK(pairwise_sum(v) == 1.5);
    v.clear();
    // 10^4 copies of 0.1 plus a large head; naive accumulation drifts more
    v.push_back(1e10);
    for (int i = 0; i < 10000; ++i) v.push_back(0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(1e10 + 1000.0).epsilon(1e-15));
}
