#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hdisc/heatkernel.hpp"

using namespace hdisc;

namespace {
HPoint pt(double x, double y, double t) { return HPoint(std::complex<double>(x, y), t); }
}  // namespace

// Reference values from tests/oracles/heatkernel_oracle.py (mpmath, dps=30).

TEST_CASE("vertical slice of the heat kernel") {
    CHECK(q_s_lambda(0.5, 1.3, 0.49, 1) ==
          doctest::Approx(0.112376814434970077).epsilon(1e-13));
    CHECK(q_s_lambda(0.2, -4.0, 1.21, 1) ==
          doctest::Approx(0.0579454086686731535).epsilon(1e-13));
    CHECK(q_s_lambda(0.3, 2.0, 0.25, 2) ==
          doctest::Approx(0.0495165596904984339).epsilon(1e-13));
    // lambda -> 0 limit is the Euclidean Gaussian (1/(4 pi s))^n e^{-|z|^2/4s}
    const double s = 0.4, z2 = 0.6;
    const double gauss = std::exp(-z2 / (4 * s)) / (4 * M_PI * s);
    CHECK(q_s_lambda(s, 0.0, z2, 1) == doctest::Approx(gauss).epsilon(1e-12));
    CHECK(q_s_lambda(s, 1e-9, z2, 1) == doctest::Approx(gauss).epsilon(1e-7));
    // even in lambda
    CHECK(q_s_lambda(0.5, -1.3, 0.49, 1) == doctest::Approx(q_s_lambda(0.5, 1.3, 0.49, 1)));
}

TEST_CASE("pointwise heat kernel by spectral series") {
    // center value has the closed form 1/(16 s^2)
    const auto c = q_s_eval(0.5, pt(0, 0, 0));
    CHECK(std::fabs(c.value - 0.25) <= c.tail_bound + 1e-10);
    CHECK(c.value == doctest::Approx(0.25).epsilon(5e-4));

    const auto a = q_s_eval(0.5, pt(0.5, 0, 0.4));
    CHECK(std::fabs(a.value - 0.0684680804506443299) <= a.tail_bound + 1e-10);
    CHECK(a.value == doctest::Approx(0.0684680804506443299).epsilon(5e-4));
    CHECK(q_s_eval(0.2, pt(1.0, 0, -0.7)).value ==
          doctest::Approx(0.00210908979377998929).epsilon(5e-3));

    // symmetry in t and rotation invariance in z
    CHECK(q_s_eval(0.5, pt(0.5, 0, -0.4)).value ==
          doctest::Approx(q_s_eval(0.5, pt(0.5, 0, 0.4)).value).epsilon(1e-10));
    CHECK(q_s_eval(0.5, pt(0, 0.5, 0.4)).value ==
          doctest::Approx(q_s_eval(0.5, pt(0.5, 0, 0.4)).value).epsilon(1e-10));

    CHECK_THROWS(q_s_eval(0.5, pt(0, 0, 0), 3, 2.0, 1e-12));  // truncated too hard
}

TEST_CASE("vertical cutoff pair") {
    const CutoffPair cp = build_cutoff();
    CHECK(cp.psi_norm_check == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-9));
    CHECK(cp.F_hat_eval(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cp.F_hat_eval(1.05) == 0.0);
    CHECK(cp.F_hat_eval(-1.3) == 0.0);
    for (double l = -1.0; l <= 1.0; l += 0.125) {
        const double fh = cp.F_hat_eval(l);
        CHECK(fh >= 0.0);
        CHECK(fh <= 1.0 + 1e-12);
        CHECK(fh == doctest::Approx(cp.F_hat_eval(-l)).epsilon(1e-12));
    }
    for (double t : {-7.0, -1.2, 0.0, 0.4, 3.0, 20.0}) CHECK(cp.F_eval(t) >= 0.0);
}

TEST_CASE("band-limited coefficients") {
    const CutoffPair cp = build_cutoff();
    const double s = 0.2;
    CHECK(k_s_hat(cp, s, 0.5, 3, 1) ==
          doctest::Approx(cp.F_hat_eval(0.5) * std::exp(-7 * 0.5 * s)).epsilon(1e-12));
    CHECK(k_s_hat(cp, s, 1.2, 0, 1) == 0.0);  // outside the band
}

TEST_CASE("smoothed kernel: two independent evaluation paths agree") {
    const CutoffPair cp = build_cutoff();
    for (auto p : {pt(0, 0, 0), pt(0.6, 0, 0.2), pt(0.2, -0.5, -1.1)}) {
        for (double s : {0.2, 0.05}) {
            const double a = k_s_eval(cp, s, p, 1e-9);
            const double b = k_s_convolution(cp, s, p);
            CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
    }
}
