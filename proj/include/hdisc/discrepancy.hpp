#pragma once

// Point sets on the Heisenberg group, the normalized-box measure, local
// discrepancy, and the two independent evaluators of the averaged squared
// discrepancy int_0^1 int |D_N(z,t;rho)|^2 dz dt drho: spatial Monte Carlo
// (l2_direct) and the spectral closed form (l2_spectral). Also the iid and
// jittered generators, the iid variance identity, and the scaling harness.

#include <cstdint>
#include <string>
#include <vector>

#include "hdisc/hgroup.hpp"

namespace hdisc {

// mu = chi_{B_1} / |B_1| (NormalizedBox); the tag exists so future radial
// densities can slot in without changing call sites
struct MeasureModel {
    int n = 1;
};

struct PointSet {
    std::vector<HPoint> points;
    std::string generator = "manual";
    std::uint64_t seed = 0;
    int n = 1;

    int N() const { return static_cast<int>(points.size()); }
    void save_csv(const std::string& path) const;
    static PointSet load_csv(const std::string& path);
};

struct DiscrepancyEstimate {
    double value = 0.0;
    double stat_stderr = 0.0;
    double trunc_bound = 0.0;
};

struct SpectralConfig {
    int k_max = 200;
    double lambda_max = 200.0;
    double outer_panel = 0.35;  // width of the outer lambda panels
    int outer_order = 15;       // 15 (Gauss-Kronrod) or 2 (Gauss) points per panel
    // drop (lambda,k) cells with nu*lambda > x_cut (finite only for large-N
    // scaling runs); the dropped mass is estimated and folded into trunc_bound
    double x_cut = HUGE_VAL;
    double tol = HUGE_VAL;  // signal if trunc_bound exceeds this
};

struct MCConfig {
    long samples = 100000;
    std::uint64_t seed = 1;
};

// mu((center) o B_rho); n=1 via the exact-in-r polar reduction with adaptive
// theta quadrature, n>=2 via deterministic-seed Monte Carlo
double mu_box_mass(const MeasureModel& mu, const HPoint& center, double rho,
                   double tol = 1e-6);

// Monte-Carlo mass of the Koranyi ball of radius r at center
double mu_ball_mass(const MeasureModel& mu, const HPoint& center, double r, long samples,
                    std::uint64_t seed, double* stderr_out = nullptr);

// D_N(center; rho) = #{p_j in (center) o B_rho} - N mu((center) o B_rho)
double local_discrepancy(const PointSet& P, const MeasureModel& mu, const HPoint& center,
                         double rho);

DiscrepancyEstimate l2_direct(const PointSet& P, const MeasureModel& mu, const MCConfig& mc);

// Sum_{|alpha|=k} ||sigma_hat(lambda) Phi_alpha||^2 in closed form;
// suppress_mu drops the measure terms (test mode sigma = delta)
double spectral_weight(const PointSet& P, const MeasureModel& mu, double lambda, int k,
                       bool suppress_mu = false);

DiscrepancyEstimate l2_spectral(const PointSet& P, const MeasureModel& mu,
                                const SpectralConfig& cfg);

PointSet gen_iid(const MeasureModel& mu, int N, std::uint64_t seed);
// anisotropic stratification: z-cells of side delta, t-cells of height delta^2,
// delta = (|B_1|/N_target)^{1/Q}; actual N recorded in the point set
PointSet gen_jittered(const MeasureModel& mu, int N_target, std::uint64_t seed);

// N int_0^1 int mu(box)(1-mu(box)) dz dt drho: the exact expectation of
// l2_direct over iid point sets; returns the MC estimate with stderr
double expected_iid_l2(const MeasureModel& mu, int N, const MCConfig& mc,
                       double* stderr_out = nullptr);

struct ScalingRow {
    std::string generator;
    int N_target = 0;
    int N_actual = 0;
    int rep = 0;
    double l2 = 0.0;
    double stderr_ = 0.0;
    double trunc = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRow> table;
    double slope = 0.0;
    double slope_stderr = 0.0;
};

// generator is "iid" or "jittered"; spectral path per rep, direct-path audit
// rows (generator suffixed "-direct") at the smallest N
ScalingResult scaling_study(const std::string& generator, const std::vector<int>& N_list,
                            int reps, std::uint64_t seed, const SpectralConfig& cfg);

// rows `generator,N_target,N_actual,rep,l2,stderr,trunc` + footer `slope,...`
void write_scaling_csv(const std::string& path, const ScalingResult& res);

}  // namespace hdisc
