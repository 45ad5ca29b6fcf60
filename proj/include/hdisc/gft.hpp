#pragma once

// Group Fourier transform of cylindrically radial functions on H^n:
// scalar coefficients f_hat(lambda,k), the chi_B specialization and its
// dilations, reconstruction, Plancherel energy, and the n=1 special Hermite
// quadrature check. Also houses ChiTable, the shared fine-grid machinery for
// chi_B-based energy integrals (Plancherel and the rho-averaged squares that
// the discrepancy spectral formula consumes).

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "hdisc/quad.hpp"

namespace hdisc {

struct RadialProfile {
    // vertical Fourier slice f^lambda(r)
    std::function<std::complex<double>(double r, double lambda)> vertical_slice;
    // finite radius for compactly supported profiles, +inf otherwise
    double radial_support = HUGE_VAL;
    enum class Decay { Compact, Exponential, Polynomial } decay = Decay::Compact;
    // Exponential: |f^lambda(r)| <~ e^{-rate r^2} governs the truncation radius
    double decay_rate = 1.0;
};

// f_hat(lambda,k) = r_k int_0^inf f^lambda(r) (|l|r^2)^{(1-n)/2} Lambda_k^{n-1}(|l|r^2/2) r^{2n-1} dr
std::complex<double> gft_radial(const RadialProfile& profile, double lambda, int k, int n,
                                double abs_tol = 1e-9);

// chi_B coefficients via the reduced Laguerre-integral form; even in lambda
double chihat_box(double lambda, int k, int n);

// rho^{2n+2} chihat_box(rho^2 lambda, k, n), rho in (0,1]
double chihat_box_dilated(double rho, double lambda, int k, int n);

// dim(k) = C(k+n-1, n-1), the multiplicity of the eigenvalue index k
double chi_dim(int k, int n);

// c_n = (2 pi)^n 2^{1-n}
double c_n(int n);

struct SpectralTable {
    int n = 1;
    std::vector<double> lambda_grid;  // strictly increasing, nonzero
    int k_max = 0;
    Eigen::MatrixXcd values;  // |lambda_grid| x (k_max+1)
    double tail_bound = 0.0;

    void save_csv(const std::string& path) const;
    static SpectralTable load_csv(const std::string& path);
};

// sample a profile on a lambda grid
SpectralTable build_table(const RadialProfile& profile, const std::vector<double>& lambda_grid,
                          int k_max, int n, double abs_tol = 1e-9);

// symmetric hybrid grid: linear spacing up to lin_cut, geometric up to lmax,
// mirrored to negative lambda (zero excluded)
std::vector<double> hybrid_lambda_grid(double lmax, double lambda_min = 1e-3,
                                       double lin_step = 0.05, double lin_cut = 1.0,
                                       double geo_ratio = 1.04);

// reconstruction f(z,t) = 2^{(1-n)/2} (2pi)^{n-1} int e^{-i t lambda} sum_k f_hat phi_k^lambda(z) dlambda
std::complex<double> reconstruct_c(const SpectralTable& table,
                                   const std::vector<std::complex<double>>& z, double t);
// throws if the table's tail_bound exceeds tol
double reconstruct(const SpectralTable& table, const std::vector<std::complex<double>>& z,
                   double t, double tol = HUGE_VAL);

// (2pi)^{-(n+1)} int sum_k dim(k) |c_n f_hat(lambda,k)|^2 |lambda|^n dlambda, trapezoidal
double plancherel_energy(const SpectralTable& table);

struct HermiteCheck {
    std::complex<double> lhs;
    double rhs;
};
// n=1 only: lhs = <pi_lambda(z) Phi_k, Phi_k> by quadrature, rhs = (2pi/|l|) phi_k^lambda(z)
HermiteCheck special_hermite_check(double lambda, int k, std::complex<double> z);

// Fine-grid table of chi_B(u,k) for all k <= k_max on (0, u_max]; the grid
// resolves both the sin(u) oscillation and the Laguerre oscillation at nu_max,
// so that per-gap Gauss-Kronrod integration with linear interpolation of the
// cumulative Laguerre integral is accurate. Used by plancherel acceptance and
// by the discrepancy spectral evaluator.
class ChiTable {
  public:
    ChiTable(int n, int k_max, double u_max, double refine = 1.0,
             const std::vector<double>& extra_nodes = {});

    int n() const { return n_; }
    int k_max() const { return k_max_; }
    const std::vector<double>& grid() const { return u_; }  // ascending, u_[0] = 0

    double chi(std::size_t i, int k) const { return chi_(i, k); }
    // G(i,k) = int_0^{u_i} u^{Q-1/2} chi(u,k)^2 du
    double G(std::size_t i, int k) const { return G_(i, k); }
    // int_0^1 |chihat_{B_rho}(u_i, k)|^2 drho = G / (2 u^{Q+1/2})
    double avg_square(std::size_t i, int k) const;

    // index of the grid node equal to u (within 1e-12 relative); throws if absent
    std::size_t find(double u) const;

    // Plancherel energy of chi_B over |lambda| <= u_max, k <= k_max
    double energy() const;
    // per-k contributions to energy() (already dim- and prefactor-weighted)
    std::vector<double> energy_per_k() const;

  private:
    int n_, k_max_;
    double u_max_;
    std::vector<double> u_;
    Eigen::MatrixXd C_;    // cumulative Laguerre integral at u_i/2, per k
    Eigen::MatrixXd chi_;  // chi_B(u_i, k)
    Eigen::MatrixXd G_;
};

// calibrated pointwise majorant for |chihat_box| used in truncation bounds
double chihat_majorant(double lambda, int k, int n);

// tail of the chi_B Plancherel energy beyond (k_max, lambda_max)
double energy_tail_bound(int n, int k_max, double lambda_max);

}  // namespace hdisc
