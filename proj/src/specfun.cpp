#include "hdisc/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_airy.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hdisc/quad.hpp"

namespace hdisc {

namespace {

// GSL error handler must stay off: we map underflow/overflow ourselves.
const bool gsl_handler_disabled = [] {
    gsl_set_error_handler_off();
    return true;
}();

double gsl_value_or(const gsl_sf_result& r, int status, double on_underflow) {
    if (status == GSL_EUNDRFLW) return on_underflow;
    if (status == GSL_EOVRFLW) return HUGE_VAL;
    if (status != GSL_SUCCESS) throw std::runtime_error("gsl special function failure");
    return r.val;
}

}  // namespace

double laguerre_L(int k, double delta, double t) {
    if (k < 0) throw std::invalid_argument("laguerre_L: k must be nonnegative");
    if (k == 0) return 1.0;
    double lm1 = 1.0;
    double l = delta + 1.0 - t;
    for (int j = 1; j < k; ++j) {
        double lp1 = ((2.0 * j + 1.0 + delta - t) * l - (j + delta) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

void laguerre_scaled_all(int k_max, double delta, double t, double* out) {
    // The recurrence is linear, so scaling every term by e^{-t/2} keeps it valid
    // while the iterates stay polynomially bounded in k.
    double w = std::exp(-0.5 * t);
    out[0] = w;
    if (k_max == 0) return;
    out[1] = (delta + 1.0 - t) * w;
    for (int j = 1; j < k_max; ++j) {
        out[j + 1] = ((2.0 * j + 1.0 + delta - t) * out[j] - (j + delta) * out[j - 1]) / (j + 1.0);
    }
}

double laguerre_r(int k, double delta) {
    return std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + delta + 1.0)));
}

double laguerre_Lambda(int k, double delta, double t) {
    if (t < 0.0) throw std::domain_error("laguerre_Lambda: t must be nonnegative");
    if (k < 0) throw std::invalid_argument("laguerre_Lambda: k must be nonnegative");
    // scaled recurrence for ell_k = L_k e^{-t/2}; r_k and t^{delta/2} in log space
    double w = std::exp(-0.5 * t);
    double lm1 = w, l = (delta + 1.0 - t) * w;
    if (k == 0) l = lm1;
    for (int j = 1; j < k; ++j) {
        double lp1 = ((2.0 * j + 1.0 + delta - t) * l - (j + delta) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    if (l == 0.0) return 0.0;
    double log_pref = 0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + delta + 1.0));
    if (delta != 0.0) {
        if (t == 0.0) return 0.0;
        log_pref += 0.5 * delta * std::log(t);
    }
    return std::copysign(std::exp(std::log(std::abs(l)) + log_pref), l);
}

double phi_k_radial(double lambda, int k, int n, double z_abs2) {
    if (lambda == 0.0) throw std::domain_error("phi_k: lambda must be nonzero");
    double al = std::abs(lambda);
    double x = 0.5 * al * z_abs2;
    double pref = std::pow(al / (2.0 * M_PI), n);
    return pref * laguerre_L(k, n - 1.0, x) * std::exp(-0.5 * x);
}

double phi_k(double lambda, int k, int n, const std::vector<std::complex<double>>& z) {
    double z2 = 0.0;
    for (const auto& zj : z) z2 += std::norm(zj);
    return phi_k_radial(lambda, k, n, z2);
}

void phi_k_all(double lambda, int n, double z_abs2, int k_max, double* out) {
    if (lambda == 0.0) throw std::domain_error("phi_k_all: lambda must be nonzero");
    double al = std::abs(lambda);
    double x = 0.5 * al * z_abs2;
    double pref = std::pow(al / (2.0 * M_PI), n);
    laguerre_scaled_all(k_max, n - 1.0, x, out);
    for (int k = 0; k <= k_max; ++k) out[k] *= pref;
}

double hermite_h(int k, double x) {
    double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (k == 0) return h0;
    double hm1 = h0, h = x * std::sqrt(2.0) * h0;
    for (int j = 1; j < k; ++j) {
        double hp1 = x * std::sqrt(2.0 / (j + 1.0)) * h - std::sqrt(j / (j + 1.0)) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double bessel_J(int m, double x) {
    if (m < 0 || x < 0.0) throw std::domain_error("bessel_J: need m >= 0, x >= 0");
    gsl_sf_result r;
    int status = gsl_sf_bessel_Jn_e(m, x, &r);
    return gsl_value_or(r, status, 0.0);
}

double bessel_Y(int m, double x) {
    if (m < 0 || x <= 0.0) throw std::domain_error("bessel_Y: need m >= 0, x > 0");
    gsl_sf_result r;
    int status = gsl_sf_bessel_Yn_e(m, x, &r);
    return gsl_value_or(r, status, 0.0);
}

double j_tilde(int m, double x) {
    if (x <= 0.0) {
        if (x == 0.0 && m == 0) return 1.0;
        if (x == 0.0) return 0.0;
        throw std::domain_error("j_tilde: need x >= 0");
    }
    // below the turning-point scale J_m is positive and carries the envelope;
    // beyond it the Hankel modulus (J^2+Y^2)^{1/2} does
    if (x < m + 1.0) return bessel_J(m, x);
    double j = bessel_J(m, x), y = bessel_Y(m, x);
    return std::hypot(j, y);
}

AiryTriple airy(double u) {
    gsl_sf_result ai, bi, aip;
    int s1 = gsl_sf_airy_Ai_e(u, GSL_MODE_DEFAULT, &ai);
    int s2 = gsl_sf_airy_Bi_e(u, GSL_MODE_DEFAULT, &bi);
    int s3 = gsl_sf_airy_Ai_deriv_e(u, GSL_MODE_DEFAULT, &aip);
    return {gsl_value_or(ai, s1, 0.0), gsl_value_or(bi, s2, 0.0), gsl_value_or(aip, s3, 0.0)};
}

double ai_tilde(double u) {
    AiryTriple a = airy(u);
    if (u >= 0.0) return a.Ai;
    return std::hypot(a.Ai, a.Bi);
}

namespace {

// IAi(u) for u <= -asym_switch via the oscillatory asymptotic of Lemma-stime-IA type
constexpr double iai_asym_switch = 40.0;

double iai_asymptotic(double u) {
    double x = -u;
    double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    return std::pow(M_PI, -0.5) * std::pow(x, -0.75) * std::cos(zeta + 0.25 * M_PI);
}

double iai_quadrature(double u) {
    // 2/3 + int_0^u Ai with panels resolving the sqrt(|u|) oscillation scale
    double hi = std::min(u, 14.0);  // Ai below 1e-14 beyond
    std::vector<double> bps;
    double step = 0.5;
    if (u >= 0.0) {
        for (double x = 0.0; x < hi; x += step) bps.push_back(x);
        bps.push_back(hi);
    } else {
        for (double x = 0.0; x > u; x -= std::min(step, M_PI / std::sqrt(1.0 + std::abs(x))))
            bps.push_back(x);
        bps.push_back(u);
        std::reverse(bps.begin(), bps.end());
    }
    auto f = [](double x) { return airy(x).Ai; };
    QuadResult q = integrate_adaptive_panels(f, bps, 1e-11);
    return 2.0 / 3.0 + (u >= 0.0 ? q.value : -q.value);
}

double iai(double u) {
    if (u < -iai_asym_switch) return iai_asymptotic(u);
    return iai_quadrature(u);
}

double iiai_zero() {
    // int_{-inf}^0 IAi = int_{-X}^0 IAi + tail, tail by asymptotic integration by parts
    static std::once_flag once;
    static double value = 0.0;
    std::call_once(once, [] {
        const double X = iai_asym_switch;
        std::vector<double> bps;
        for (double x = -X; x < 0.0; x += 0.25) bps.push_back(x);
        bps.push_back(0.0);
        QuadResult q = integrate_adaptive_panels([](double x) { return iai(x); }, bps, 1e-9);
        double zeta = (2.0 / 3.0) * std::pow(X, 1.5);
        double tail = -std::pow(M_PI, -0.5) * std::pow(X, -1.25) * std::sin(zeta + 0.25 * M_PI);
        value = q.value + tail;
    });
    return value;
}

}  // namespace

AiryIntegrals airy_IAi(double u) {
    AiryIntegrals out;
    out.IAi = iai(u);
    // IIAi(u) = IIAi(0) + int_0^u IAi; the range used in practice is moderate
    if (u == 0.0) {
        out.IIAi = iiai_zero();
        return out;
    }
    double lo = std::min(0.0, u), hi = std::max(0.0, u);
    std::vector<double> bps;
    for (double x = lo; x < hi; x += std::min(0.5, M_PI / std::sqrt(1.0 + std::abs(x))))
        bps.push_back(x);
    bps.push_back(hi);
    QuadResult q = integrate_adaptive_panels([](double x) { return iai(x); }, bps, 1e-8);
    out.IIAi = iiai_zero() + (u > 0.0 ? q.value : -q.value);
    return out;
}

double fn_A(double t) {
    if (t < 0.0 || t >= 1.0 + 1e-15) throw std::domain_error("fn_A: t must lie in [0,1)");
    t = std::min(t, 1.0);
    return 0.5 * (std::asin(std::sqrt(t)) + std::sqrt(std::max(0.0, t - t * t)));
}

double fn_Theta(double t) {
    if (t < 0.0) throw std::domain_error("fn_Theta: t must be nonnegative");
    double e = t - 1.0;
    if (std::abs(e) < 1e-4) return std::pow(2.0, -2.0 / 3.0) * e * (1.0 - 0.2 * e);
    if (t < 1.0) {
        double g = std::acos(std::sqrt(t)) - std::sqrt(t - t * t);
        return -std::pow(0.75 * g, 2.0 / 3.0);
    }
    double h = std::sqrt(t * t - t) - std::acosh(std::sqrt(t));
    return std::pow(0.75 * h, 2.0 / 3.0);
}

double fn_Theta_prime(double t) {
    if (t < 0.0) throw std::domain_error("fn_Theta_prime: t must be nonnegative");
    double e = t - 1.0;
    if (std::abs(e) < 1e-4) return std::pow(2.0, -2.0 / 3.0) * (1.0 - 0.4 * e);
    if (t < 1.0) {
        double g = std::acos(std::sqrt(t)) - std::sqrt(t - t * t);
        return 0.5 * std::sqrt((1.0 - t) / t) * std::pow(0.75 * g, -1.0 / 3.0);
    }
    double h = std::sqrt(t * t - t) - std::acosh(std::sqrt(t));
    return 0.5 * std::sqrt((t - 1.0) / t) * std::pow(0.75 * h, -1.0 / 3.0);
}

double fw_alpha0(double t, int n) {
    if (t == 0.0) return 1.0;
    double a_over_sqrt = fn_A(t) / std::sqrt(t);
    return std::pow(1.0 - t, -0.25) * std::pow(a_over_sqrt, n - 0.5);
}

double fw_eta0(double t, int n) {
    double e = t - 1.0;
    double ratio = std::abs(e) < 1e-6 ? std::pow(2.0, 4.0 / 3.0) : 4.0 * fn_Theta(t) / e;
    return std::pow(t, 0.25 - 0.5 * n) * std::pow(ratio, 0.25);
}

FWResult fw_bessel(const NuIndex& idx, double x) {
    if (x < 0.0) throw std::domain_error("fw_bessel: x must be nonnegative");
    const int n = idx.n;
    const double nu = idx.nu;
    const double t = x / nu;
    const double rk = idx.r();
    const double pref = std::pow(2.0, 1.0 - n) * rk * std::pow(x, 0.5 * (n - 1));
    FWResult out;
    out.regime = FWRegime::BesselRegime;
    if (t == 0.0) {
        // x = 0: only n=1 has a nonzero limit (J_0(0) = 1)
        out.value = (n == 1) ? 1.0 : 0.0;
        out.envelope = std::pow(nu, 0.5 * (n - 1) - 2.0);
        return out;
    }
    const double A = fn_A(t);
    out.value = pref * fw_alpha0(t, n) * bessel_J(n - 1, nu * A) / std::pow(A, n - 1);
    out.envelope =
        pref * std::pow(nu, -2.0) * std::pow(A, 1.0 - n) * j_tilde(n - 1, nu * A);
    if (!(out.envelope > 0.0)) out.envelope = 1e-300;
    return out;
}

FWResult fw_airy(const NuIndex& idx, double x) {
    if (x < 0.0) throw std::domain_error("fw_airy: x must be nonnegative");
    const int n = idx.n;
    const double nu = idx.nu;
    const double t = x / nu;
    const double rk = idx.r();
    const double pref = std::pow(2.0, 1.0 - n) * rk * std::pow(x, 0.5 * (n - 1));
    const double sign = (idx.k % 2 == 0) ? 1.0 : -1.0;
    const double arg = std::pow(nu, 2.0 / 3.0) * fn_Theta(t);
    FWResult out;
    out.regime = FWRegime::AiryRegime;
    out.value = sign * pref * std::pow(nu, -1.0 / 3.0) * fw_eta0(t, n) * airy(arg).Ai;
    out.envelope = pref * std::pow(nu, -7.0 / 3.0) * ai_tilde(arg);
    if (!(out.envelope > 0.0)) out.envelope = 1e-300;
    return out;
}

FWResult fw_approx(const NuIndex& idx, double x) {
    if (x < 0.0) throw std::domain_error("fw_approx: x must be nonnegative");
    double t = x / idx.nu;
    return (t <= 0.4) ? fw_bessel(idx, x) : fw_airy(idx, x);
}

}  // namespace hdisc
