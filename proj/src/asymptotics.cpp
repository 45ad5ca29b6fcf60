#include "hdisc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hdisc/gft.hpp"
#include "hdisc/quad.hpp"

namespace hdisc {

RegimeId regime_of(double lambda, int nu) {
    const double v = nu;
    if (lambda <= v) return RegimeId::BesselMain;
    if (lambda <= 2.0 * (v + std::cbrt(v))) return RegimeId::AiryTransition;
    if (lambda <= 3.0 * v) return RegimeId::OscillatoryPlateau;
    return RegimeId::FarTail;
}

AsymptoticValue chihat_asymptotic(double lambda, const NuIndex& idx) {
    if (!(lambda > 0.0)) throw std::invalid_argument("chihat_asymptotic: lambda > 0 required");
    const double nu = idx.nu;
    const int n = idx.n;
    const double r = idx.r();
    const double sgn = (idx.k % 2 == 0) ? 1.0 : -1.0;
    const RegimeId reg = regime_of(lambda, idx.nu);
    const double t = lambda / (2.0 * nu);
    double value = 0.0;
    switch (reg) {
        case RegimeId::BesselMain: {
            const double A = fn_A(t);
            const double omega_a = r * r * std::pow(nu, n - 1) * std::pow(lambda / nu, -0.25) *
                                   std::sqrt(A) * std::pow(1.0 - t, -0.75);
            value = (std::sin(lambda) / lambda) * bessel_J(n, nu * A) /
                    std::pow(lambda * nu, 0.5 * n) * omega_a;
            break;
        }
        case RegimeId::AiryTransition: {
            const double omega_b = r * r * std::pow(nu, n - 1) * std::pow(2.0, 1.5 - n) *
                                   std::pow(t, 0.5 * n - 1.0) * fw_eta0(t, n) /
                                   fn_Theta_prime(t);
            const double iai = airy_IAi(std::pow(nu, 2.0 / 3.0) * fn_Theta(t)).IAi;
            value = sgn * (std::sin(lambda) / lambda) * std::pow(lambda * nu, -0.5 * n) * iai *
                    omega_b;
            break;
        }
        case RegimeId::OscillatoryPlateau:
            value = sgn * std::sin(lambda) / std::pow(lambda, n + 1);
            break;
        case RegimeId::FarTail:
            value = sgn * std::sin(lambda) / std::pow(lambda, n + 1) *
                    std::pow(2.0, 0.5 * (3 * n + 1));
            break;
    }
    return {value, reg};
}

double avg_square(double lambda, const NuIndex& idx) {
    if (!(lambda > 0.0)) throw std::invalid_argument("avg_square: lambda > 0 required");
    const double nu = idx.nu;
    // panel layout in u = rho^2 lambda resolving sin(u) and the Laguerre phase
    std::vector<double> up{0.0};
    while (up.back() < lambda) {
        const double u = up.back();
        const double h = std::max(1e-3, std::min(0.5 * M_PI,
                                                 0.5 * M_PI * std::sqrt(2.0 * std::max(u, 1e-6) / nu)));
        up.push_back(std::min(lambda, u + h));
    }
    std::vector<double> bp(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) bp[i] = std::sqrt(up[i] / lambda);
    auto g = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double c = chihat_box_dilated(std::min(rho, 1.0), lambda, idx.k, idx.n);
        return c * c;
    };
    double peak = 0.0;
    for (double rho : bp) peak = std::max(peak, g(rho));
    QuadResult q = integrate_adaptive_panels(g, bp, std::max(1e-10 * peak, 1e-300));
    if (!q.converged)
        throw QuadratureError("avg_square: tolerance unmet", q.error_bound);
    return q.value;
}

double envelope_lower(double lambda, const NuIndex& idx) {
    if (!(lambda > 0.0)) throw std::invalid_argument("envelope_lower: lambda > 0 required");
    const double nu = idx.nu;
    const double Q = 2.0 * idx.n + 2.0;
    auto ang = [](double x) { return std::sqrt(1.0 + x * x); };
    if (lambda <= nu)
        return std::pow(ang(lambda * nu), -0.5 * Q + 0.5) / (1.0 + lambda * lambda);
    if (lambda <= 2.0 * (nu + std::cbrt(nu)))
        return std::pow(lambda, -Q - 2.0 / 3.0) /
               std::sqrt(ang(std::pow(nu, 2.0 / 3.0) * (1.0 - lambda / (2.0 * nu))));
    return std::pow(lambda, -Q - 1.0) * (lambda - 2.0 * nu);
}

EnvelopeReport verify_envelope(const std::vector<NuIndex>& idxs,
                               const std::vector<double>& lambda_grid) {
    EnvelopeReport rep;
    rep.c_min = HUGE_VAL;
    for (const NuIndex& idx : idxs)
        for (double lam : lambda_grid) {
            RatioRow row;
            row.nu = idx.nu;
            row.k = idx.k;
            row.lambda = lam;
            row.avg_square = avg_square(lam, idx);
            row.envelope = envelope_lower(lam, idx);
            row.ratio = row.avg_square / row.envelope;
            rep.c_min = std::min(rep.c_min, row.ratio);
            rep.rows.push_back(row);
        }
    return rep;
}

void write_ratio_csv(const std::string& path, const std::vector<RatioRow>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_ratio_csv: cannot open " + path);
    os << "nu,k,lambda,avg_square,envelope,ratio\n";
    char buf[192];
    for (const RatioRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", r.nu, r.k, r.lambda,
                      r.avg_square, r.envelope, r.ratio);
        os << buf;
    }
}

double i_term(double Lambda, double s, int n) {
    const double Q = 2.0 * n + 2.0;
    if (!(s > 0.0 && s < 1.0) || !(s * Lambda > Q - 1.0))
        throw std::invalid_argument("i_term: requires 0 < s < 1 and s*Lambda > Q-1");
    const double lambda_min = 1e-3;
    const double feas = Lambda * Lambda - 1.0;
    if (feas <= 0.0) throw std::invalid_argument("i_term: empty feasible region");
    double best = HUGE_VAL;
    bool any = false;
    for (int k = 0;; ++k) {
        const double nu = 4.0 * k + 2.0 * n;
        if (nu > 2.0 * Lambda) break;
        const double lam_hi = std::min(1.0, std::sqrt(feas) / nu);
        if (lam_hi < lambda_min) continue;
        const NuIndex idx(k, n);
        const double r = std::log(lam_hi / lambda_min) / 39.0;
        for (int j = 0; j < 40; ++j) {
            const double lam = lambda_min * std::exp(r * j);
            const double v = std::exp(0.5 * nu * lam * s) * avg_square(lam, idx);
            best = std::min(best, v);
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("i_term: empty feasible region");
    return best;
}

}  // namespace hdisc
