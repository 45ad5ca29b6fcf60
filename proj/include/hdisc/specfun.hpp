#pragma once

// Special functions: Laguerre polynomials/functions, Hermite functions,
// the rescaled Laguerre family phi_k^lambda, Bessel J/Y and the envelope
// J-tilde, Airy Ai/Bi/Ai' with the integrals IAi/IIAi, the auxiliary maps
// A(t) and Theta(t), and the leading-order Frenzen-Wong approximation of
// Lambda_k^{n-1} with Bessel/Airy regime dispatch at t = x/nu = 0.4.

#include <complex>
#include <vector>

namespace hdisc {

// generalized Laguerre polynomial L_k^delta(t), three-term recurrence
double laguerre_L(int k, double delta, double t);

// out[j] = L_j^delta(t) * e^{-t/2} for j = 0..k_max (overflow-free scaled recurrence)
void laguerre_scaled_all(int k_max, double delta, double t, double* out);

// normalization r_k^delta = (k! / Gamma(k+delta+1))^{1/2}
double laguerre_r(int k, double delta);

// Laguerre function Lambda_k^delta(t) = r_k^delta L_k^delta(t) e^{-t/2} t^{delta/2}
double laguerre_Lambda(int k, double delta, double t);

// phi_k^lambda(z) = (|lambda|/2pi)^n L_k^{n-1}(|lambda||z|^2/2) e^{-|lambda||z|^2/4}
double phi_k(double lambda, int k, int n, const std::vector<std::complex<double>>& z);
double phi_k_radial(double lambda, int k, int n, double z_abs2);
// batch: out[j] = phi_j^lambda for j = 0..k_max at fixed |z|^2
void phi_k_all(double lambda, int n, double z_abs2, int k_max, double* out);

// normalized Hermite function h_k(x)
double hermite_h(int k, double x);

// Bessel functions (GSL-backed) and the envelope J-tilde
double bessel_J(int m, double x);
double bessel_Y(int m, double x);
double j_tilde(int m, double x);

struct AiryTriple {
    double Ai, Bi, Aip;
};
AiryTriple airy(double u);
double ai_tilde(double u);  // (Ai^2+Bi^2)^{1/2} for u<0, Ai for u>=0

struct AiryIntegrals {
    double IAi;   // int_{-inf}^u Ai
    double IIAi;  // int_{-inf}^u IAi
};
AiryIntegrals airy_IAi(double u);

// A(t) = (arcsin sqrt(t) + sqrt(t-t^2))/2 on [0,1)
double fn_A(double t);
// Theta(t): -( (3/4)(arccos sqrt t - sqrt(t-t^2)) )^{2/3} for t<1,
//           ( (3/4)(sqrt(t^2-t) - arccosh sqrt t) )^{2/3} for t>=1,
//           series 2^{-2/3}(t-1)(1-(t-1)/5) near t=1
double fn_Theta(double t);
double fn_Theta_prime(double t);

struct NuIndex {
    int k;
    int n;
    int nu;  // nu = 4k + 2n
    NuIndex(int k_, int n_) : k(k_), n(n_), nu(4 * k_ + 2 * n_) {}
    double r() const { return laguerre_r(k, n - 1.0); }
};

enum class FWRegime { BesselRegime, AiryRegime };

struct FWResult {
    double value;      // leading-order approximation to Lambda_k^{n-1}(x)
    FWRegime regime;
    double envelope;   // remainder scale (the eps_2 envelope)
};

double fw_alpha0(double t, int n);  // (1-t)^{-1/4} (A(t)/sqrt t)^{n-1/2}, alpha0(0)=1
double fw_eta0(double t, int n);    // t^{1/4-n/2} (4 Theta(t)/(t-1))^{1/4}, limit 2^{1/3} at t=1

FWResult fw_bessel(const NuIndex& idx, double x);  // valid estimate for t = x/nu < 1
FWResult fw_airy(const NuIndex& idx, double x);    // valid estimate for t bounded away from 0
FWResult fw_approx(const NuIndex& idx, double x);  // dispatch at t = 0.4

}  // namespace hdisc
