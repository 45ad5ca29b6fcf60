#include "hdisc/hgroup.hpp"

#include <cmath>
#include <stdexcept>

namespace hdisc {

HPoint group_mul(const HPoint& a, const HPoint& b) {
    if (a.z.size() != b.z.size()) throw std::invalid_argument("group_mul: dimension mismatch");
    HPoint out;
    out.z.resize(a.z.size());
    double herm_im = 0.0;  // Im of the Hermitian pairing sum_j a_j conj(b_j)
    for (std::size_t j = 0; j < a.z.size(); ++j) {
        out.z[j] = a.z[j] + b.z[j];
        herm_im += std::imag(a.z[j] * std::conj(b.z[j]));
    }
    out.t = a.t + b.t + 0.5 * herm_im;
    return out;
}

HPoint group_inv(const HPoint& a) {
    HPoint out = a;
    for (auto& zj : out.z) zj = -zj;
    out.t = -out.t;
    return out;
}

double koranyi_norm(const HPoint& a) {
    double z2 = 0.0;
    for (const auto& zj : a.z) z2 += std::norm(zj);
    return std::pow(z2 * z2 + a.t * a.t, 0.25);
}

HPoint dilate(double rho, const HPoint& a) {
    if (!(rho > 0.0)) throw std::invalid_argument("dilate: rho must be positive");
    HPoint out = a;
    for (auto& zj : out.z) zj *= rho;
    out.t *= rho * rho;
    return out;
}

bool in_box(double rho, const HPoint& p) {
    if (!(rho > 0.0)) throw std::invalid_argument("in_box: rho must be positive");
    double z2 = 0.0;
    for (const auto& zj : p.z) z2 += std::norm(zj);
    return z2 <= rho * rho && std::abs(p.t) <= rho * rho;
}

bool in_translated_box(const HPoint& center, double rho, const HPoint& p) {
    if (!(rho > 0.0)) throw std::invalid_argument("in_translated_box: rho must be positive");
    // inv(center) o p, written out to avoid allocation in hot loops
    if (center.z.size() != p.z.size())
        throw std::invalid_argument("in_translated_box: dimension mismatch");
    double z2 = 0.0, herm_im = 0.0;
    for (std::size_t j = 0; j < p.z.size(); ++j) {
        z2 += std::norm(p.z[j] - center.z[j]);
        herm_im += std::imag(center.z[j] * std::conj(p.z[j]));
    }
    return z2 <= rho * rho && std::abs(p.t - center.t - 0.5 * herm_im) <= rho * rho;
}

double unit_box_volume(int n) {
    double v = 2.0;
    for (int j = 1; j <= n; ++j) v *= M_PI / j;
    return v;
}

double box_volume(double rho, const GroupContext& ctx) {
    if (!(rho > 0.0)) throw std::invalid_argument("box_volume: rho must be positive");
    return std::pow(rho, ctx.Q) * unit_box_volume(ctx.n);
}

}  // namespace hdisc
