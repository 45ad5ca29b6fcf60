#pragma once

// Group algebra and geometry of the Heisenberg group H^n = C^n x R:
// product, inverse, Koranyi norm, anisotropic dilations, cylindrical boxes.

#include <complex>
#include <vector>

namespace hdisc {

struct HPoint {
    std::vector<std::complex<double>> z;  // z in C^n
    double t = 0.0;

    HPoint() = default;
    HPoint(std::vector<std::complex<double>> z_, double t_) : z(std::move(z_)), t(t_) {}
    // convenience for n=1
    HPoint(std::complex<double> z0, double t_) : z{z0}, t(t_) {}

    int n() const { return static_cast<int>(z.size()); }
};

struct GroupContext {
    int n;
    int Q;  // homogeneous dimension, always 2n+2
    explicit GroupContext(int n_) : n(n_), Q(2 * n_ + 2) {}
};

// (a o b) = (a.z + b.z, a.t + b.t + (1/2) Im(a.z . conj(b.z)))
HPoint group_mul(const HPoint& a, const HPoint& b);

// (z,t)^{-1} = (-z,-t)
HPoint group_inv(const HPoint& a);

// (|z|^4 + t^2)^{1/4}
double koranyi_norm(const HPoint& a);

// D_rho(z,t) = (rho z, rho^2 t)
HPoint dilate(double rho, const HPoint& a);

// closed box B_rho = {|z| <= rho, |t| <= rho^2}
bool in_box(double rho, const HPoint& p);

// p in center o B_rho
bool in_translated_box(const HPoint& center, double rho, const HPoint& p);

// rho^Q |B_1|, |B_1| = 2 pi^n / n!
double box_volume(double rho, const GroupContext& ctx);

// |B_1| for dimension n
double unit_box_volume(int n);

}  // namespace hdisc
