#pragma once

// Four-regime pointwise approximations to chihat_box, the rho-averaged
// squares with their three-branch lower envelope, and the exponentially
// weighted infimum ("I-term") over the region <lambda nu> <= Lambda.

#include <string>
#include <vector>

#include "hdisc/specfun.hpp"

namespace hdisc {

enum class RegimeId { BesselMain, AiryTransition, OscillatoryPlateau, FarTail };

// thresholds: nu, 2(nu + nu^{1/3}), 3 nu
RegimeId regime_of(double lambda, int nu);

struct AsymptoticValue {
    double value;
    RegimeId regime;
};
// main term of the matching regime, unknown absolute constants set to 1
AsymptoticValue chihat_asymptotic(double lambda, const NuIndex& idx);

// int_0^1 |chihat_{B_rho}(lambda,k)|^2 drho, adaptive in rho via chihat_box_dilated
double avg_square(double lambda, const NuIndex& idx);

// three-branch lower envelope for avg_square (constants dropped)
double envelope_lower(double lambda, const NuIndex& idx);

struct RatioRow {
    int nu;
    int k;
    double lambda;
    double avg_square;
    double envelope;
    double ratio;
};

struct EnvelopeReport {
    double c_min;
    std::vector<RatioRow> rows;
};
// c_min = min over the (idx, lambda) grid of avg_square / envelope_lower
EnvelopeReport verify_envelope(const std::vector<NuIndex>& idxs,
                               const std::vector<double>& lambda_grid);

// CSV rows `nu,k,lambda,avg_square,envelope,ratio`
void write_ratio_csv(const std::string& path, const std::vector<RatioRow>& rows);

// grid approximation of inf over {<lambda nu> <= Lambda, lambda <= 1} of
// e^{nu lambda s / 2} avg_square(lambda, k); requires s Lambda > Q - 1
double i_term(double Lambda, double s, int n);

}  // namespace hdisc
