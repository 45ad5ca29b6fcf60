#include "hdisc/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hdisc/quad.hpp"
#include "hdisc/specfun.hpp"

namespace hdisc {

namespace {

double psi_raw(double lambda) {
    const double d = 0.25 - lambda * lambda;
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

// breakpoints splitting [a,b] into quarter-periods of cos(omega x)
std::vector<double> osc_breakpoints(double a, double b, double omega) {
    const double h = std::min(b - a, 0.5 * M_PI / std::max(std::fabs(omega), 1e-12));
    std::vector<double> bp{a};
    while (bp.back() < b) bp.push_back(std::min(b, bp.back() + h));
    return bp;
}

}  // namespace

CutoffPair build_cutoff() {
    QuadResult norm2 = integrate_adaptive([](double l) { double p = psi_raw(l); return p * p; },
                                          -0.5, 0.5, 1e-14);
    if (!norm2.converged) throw QuadratureError("build_cutoff: norm quadrature", norm2.error_bound);
    const double c = std::sqrt(2.0 * M_PI / norm2.value);  // ||c Psi||_L2 = sqrt(2 pi)

    auto psi = [c](double l) { return c * psi_raw(l); };

    auto F_hat = [psi](double lambda) {
        const double al = std::fabs(lambda);
        if (al > 1.0) return 0.0;
        // (Psi * Psi)(lambda) / (2 pi); integrand supported on the overlap
        const double lo = std::max(-0.5, al - 0.5), hi = 0.5;
        if (lo >= hi) return 0.0;
        QuadResult q = integrate_adaptive(
            [&](double m) { return psi(m) * psi(al - m); }, lo, hi, 1e-12);
        if (!q.converged) throw QuadratureError("build_cutoff: F_hat quadrature", q.error_bound);
        return q.value / (2.0 * M_PI);
    };

    auto F = [psi](double t) {
        QuadResult q = integrate_adaptive_panels(
            [&](double l) { return psi(l) * std::cos(l * t); },
            osc_breakpoints(-0.5, 0.5, t), 1e-8);
        if (!q.converged) throw QuadratureError("build_cutoff: F quadrature", q.error_bound);
        const double root = q.value / (2.0 * M_PI);
        return root * root;
    };

    CutoffPair out;
    out.F_eval = F;
    out.F_hat_eval = F_hat;
    out.psi_norm_check = std::sqrt(norm2.value) * c;
    return out;
}

double k_s_hat(const CutoffPair& cutoff, double s, double lambda, int k, int n) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("k_s_hat: s in (0,1) required");
    const double al = std::fabs(lambda);
    if (al > 1.0) return 0.0;
    return cutoff.F_hat_eval(lambda) * std::exp(-(2.0 * k + n) * al * s);
}

double q_s_lambda(double s, double lambda, double z_abs2, int n) {
    if (!(s > 0.0)) throw std::invalid_argument("q_s_lambda: s > 0 required");
    const double al = std::fabs(lambda);
    const double x = al * s;
    double pref, lcoth;  // pref = al / sinh(x), lcoth = al coth(x)
    if (x < 1e-4) {
        pref = (1.0 / s) / (1.0 + x * x / 6.0);
        lcoth = (1.0 / s) * (1.0 + x * x / 3.0);
    } else {
        pref = al / std::sinh(x);
        lcoth = al * std::cosh(x) / std::sinh(x);
    }
    return std::pow(pref / (4.0 * M_PI), n) * std::exp(-0.25 * z_abs2 * lcoth);
}

namespace {

// precomputed composite GK15 rule for (1/pi) int_0^lmax cos(lambda tau) S(lambda) dlambda,
// with S the k-truncated spectral series at fixed |z|^2; reusable across tau.
// The layout has geometric boundary-layer panels near 0 (the truncated k-sum
// varies on scale 1/(k_max s)) and quarter-period panels of cos elsewhere.
struct QsSeries {
    std::vector<double> node, wt, S;
    double tail = 0.0;

    QsSeries(double s, double z2, int n, int k_max, double lambda_max, double tau_max) {
        std::vector<double> bp{0.0};
        const double h = std::min(1.0, 0.5 * M_PI / std::max(tau_max, 1.0));
        for (double x = 1e-6; x < h; x *= 2.5) bp.push_back(x);
        while (bp.back() < lambda_max) bp.push_back(std::min(lambda_max, bp.back() + h));
        for (std::size_t i = 0; i + 1 < bp.size(); ++i)
            gk15_nodes(bp[i], bp[i + 1], node, wt);

        std::vector<double> phik(k_max + 1);
        S.resize(node.size());
        for (std::size_t i = 0; i < node.size(); ++i) {
            const double lam = node[i];
            phi_k_all(lam, n, z2, k_max, phik.data());
            const double w = std::exp(-2.0 * lam * s);
            double factor = std::exp(-n * lam * s);
            double acc = 0.0;
            for (int k = 0; k <= k_max; ++k) {
                acc += factor * phik[k];
                factor *= w;
            }
            S[i] = acc;
        }

        // k-truncation: |phi_k^lam| <= (lam/2pi)^n C(k+n-1,n-1) and
        // Sum_{k>K} C(k+n-1,n-1) x^k <= C(K+n,n-1) x^{K+1} / (1-x)^n
        double dimK = 1.0;
        for (int j = 1; j < n; ++j) dimK *= static_cast<double>(k_max + 1 + j) / j;
        auto k_tail = [&](double lam) {
            if (lam <= 0.0) return 0.0;
            const double x = std::exp(-2.0 * lam * s);
            return std::pow(lam / (2.0 * M_PI), n) * std::exp(-n * lam * s) * dimK *
                   std::pow(x, k_max + 1) / std::pow(1.0 - x, n);
        };
        for (std::size_t i = 0; i < node.size(); ++i) tail += wt[i] * k_tail(node[i]);
        // lambda-truncation: |q_s^lambda| <= (lam/(4 pi sinh(lam s)))^n
        {
            const int m = 400;
            const double hi = lambda_max + 400.0 / (n * s);
            double acc = 0.0, prev = q_s_lambda(s, lambda_max, 0.0, n), uprev = lambda_max;
            for (int i = 1; i <= m; ++i) {
                const double u = lambda_max + (hi - lambda_max) * i / m;
                const double g = q_s_lambda(s, u, 0.0, n);
                acc += 0.5 * (prev + g) * (u - uprev);
                prev = g;
                uprev = u;
            }
            tail += acc;
        }
        tail /= M_PI;
    }

    double eval(double tau) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < node.size(); ++i)
            acc += wt[i] * std::cos(node[i] * tau) * S[i];
        return acc / M_PI;
    }
};

}  // namespace

QsResult q_s_eval(double s, const HPoint& p, int k_max, double lambda_max, double tol) {
    if (!(s > 0.0)) throw std::invalid_argument("q_s_eval: s > 0 required");
    const int n = p.n();
    if (k_max < 0) k_max = 4000;
    if (lambda_max <= 0.0) lambda_max = 30.0 / s;
    double z2 = 0.0;
    for (const auto& zj : p.z) z2 += std::norm(zj);
    QsSeries series(s, z2, n, k_max, lambda_max, std::fabs(p.t));
    if (series.tail > tol)
        throw std::runtime_error("q_s_eval: truncation bound exceeds tolerance");
    return {series.eval(p.t), series.tail};
}

double k_s_eval(const CutoffPair& cutoff, double s, const HPoint& p, double rel_tol) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("k_s_eval: s in (0,1) required");
    const int n = p.n();
    double z2 = 0.0;
    for (const auto& zj : p.z) z2 += std::norm(zj);
    // scale reference K_s(0,0)
    QuadResult q0 = integrate_adaptive(
        [&](double lam) { return cutoff.F_hat_eval(lam) * q_s_lambda(s, lam, 0.0, n); }, 0.0,
        1.0, 1e-14, 1e-9);
    const double K00 = q0.value / M_PI;
    QuadResult q = integrate_adaptive_panels(
        [&](double lam) {
            return std::cos(lam * p.t) * cutoff.F_hat_eval(lam) * q_s_lambda(s, lam, z2, n);
        },
        osc_breakpoints(0.0, 1.0, p.t), 0.1 * rel_tol * K00);
    if (!q.converged) throw QuadratureError("k_s_eval: quadrature failure", q.error_bound);
    return q.value / M_PI;
}

double k_s_convolution(const CutoffPair& cutoff, double s, const HPoint& p) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("k_s_convolution: s in (0,1)");
    // K_s(z,t) = int F(t - tau) q_s(z,tau) dtau; q_s decays like e^{-c|tau|/s}.
    // q_s here comes from the closed-form vertical slice (complete k-sum), so
    // the only truncations are the quadratures themselves.
    const double R = std::fabs(p.t) + 2.0 + 60.0 * s;
    double z2 = 0.0;
    for (const auto& zj : p.z) z2 += std::norm(zj);
    const double lmax = 30.0 / s;
    auto q_closed = [&](double tau) {
        QuadResult qi = integrate_adaptive_panels(
            [&](double lam) { return std::cos(lam * tau) * q_s_lambda(s, lam, z2, p.n()); },
            osc_breakpoints(0.0, lmax, tau), 1e-12, 1e-8);
        return qi.value / M_PI;
    };
    auto integrand = [&](double tau) {
        return cutoff.F_eval(p.t - tau) * q_closed(tau);
    };
    QuadResult res = integrate_adaptive(integrand, -R, R, 1e-10, 1e-6, 2000);
    if (!res.converged)
        throw QuadratureError("k_s_convolution: quadrature failure", res.error_bound);
    return res.value;
}

}  // namespace hdisc
