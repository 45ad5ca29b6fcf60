#pragma once

// Heat kernel q_s on H^n and the band-limited smoothed kernel K_s = F *_t q_s.
// The vertical cutoff is the standard smooth bump Psi normalized to
// ||Psi||_{L2} = sqrt(2 pi); F(t) = ((1/2pi) int Psi e^{-i l t} dl)^2 and
// F_hat = (Psi * Psi) / (2 pi), so that F_hat(0) = int F = 1.

#include <functional>

#include "hdisc/hgroup.hpp"

namespace hdisc {

struct CutoffPair {
    std::function<double(double)> F_eval;      // F(t) >= 0
    std::function<double(double)> F_hat_eval;  // in [0,1], zero for |lambda| > 1
    double psi_norm_check = 0.0;               // computed L2 norm of the normalized Psi
};

CutoffPair build_cutoff();

// F_hat(lambda) e^{-(2k+n)|lambda| s}
double k_s_hat(const CutoffPair& cutoff, double s, double lambda, int k, int n);

// closed-form vertical slice q_s^lambda(z) = (|l|/(4 pi sinh(|l|s)))^n
//   exp(-(|l||z|^2/4) coth(|l|s)); finite limit at lambda = 0
double q_s_lambda(double s, double lambda, double z_abs2, int n);

struct QsResult {
    double value;
    double tail_bound;
};
// q_s(z,t) by the truncated spectral series (k <= k_max, |lambda| <= lambda_max,
// defaults chosen from s); tail_bound covers both truncations; throws if
// tail_bound exceeds tol
QsResult q_s_eval(double s, const HPoint& p, int k_max = 4000, double lambda_max = 0.0,
                  double tol = HUGE_VAL);

// K_s(z,t) = (1/pi) int_0^1 cos(lambda t) F_hat(lambda) q_s^lambda(z) dlambda
double k_s_eval(const CutoffPair& cutoff, double s, const HPoint& p, double rel_tol = 1e-6);

// independent path: t-convolution of F with the q_s series
double k_s_convolution(const CutoffPair& cutoff, double s, const HPoint& p);

}  // namespace hdisc
