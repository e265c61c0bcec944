#pragma once

#include "torusgreen/lattice.hpp"

namespace torusgreen {

inline constexpr double pole_guard = 1e-9;

// Point of E = C / (Z + tau Z) in lattice coordinates z = r + s tau.
// Coordinates are kept in [-1/2, 1/2).
class TorusPoint {
public:
    TorusPoint() = default;
    TorusPoint(double r, double s);

    static TorusPoint from_complex(cplx z, const LatticeData& L);

    double r() const { return r_; }
    double s() const { return s_; }
    cplx z(const LatticeData& L) const { return cplx(r_, 0.0) + s_ * L.tau; }
    TorusPoint operator-() const { return {-r_, -s_}; }
    TorusPoint operator+(const TorusPoint& o) const { return {r_ + o.r_, s_ + o.s_}; }
    TorusPoint operator-(const TorusPoint& o) const { return {r_ - o.r_, s_ - o.s_}; }

private:
    double r_ = 0.0;
    double s_ = 0.0;
};

double wrap_half(double x);
double wrapped_distance(const TorusPoint& a, const TorusPoint& b);
bool same_point(const TorusPoint& a, const TorusPoint& b, double tol = pole_guard);
// Index k of the half period omega_k/2 within tol of p, or -1.
int half_period_index(const TorusPoint& p, double tol);
TorusPoint half_period_point(int k);

struct WpZeta {
    cplx wp;
    cplx wp_prime;
    cplx zeta;
};

// All of wp, wp', zeta at the given representative z in one pass. Throws PoleError near the lattice.
WpZeta wp_zeta(cplx z, const LatticeData& L);

cplx wp(cplx z, const LatticeData& L);
cplx wp_prime(cplx z, const LatticeData& L);
cplx wp_second(cplx z, const LatticeData& L);
// zeta depends on the representative: zeta(z + m + n tau) = zeta(z) + m eta1 + n eta2.
cplx zeta(cplx z, const LatticeData& L);

cplx wp(const TorusPoint& p, const LatticeData& L);
cplx wp_prime(const TorusPoint& p, const LatticeData& L);
cplx wp_second(const TorusPoint& p, const LatticeData& L);
cplx zeta(const TorusPoint& p, const LatticeData& L);

// log |exp(-eta1 z^2 / 2) sigma(z)|; periodic in z up to the Gaussian factor handled by the Green function.
double log_abs_gauged_sigma(cplx z, const LatticeData& L);

// Edges of the half-period rectangle; wp is real and monotone on each.
enum class Segment {
    zero_half,        // (0, 1/2]          image [e1, +inf)
    half_corner,      // [1/2, (1+tau)/2]  image [e3, e1]
    corner_tauhalf,   // [(1+tau)/2, tau/2] image [e2, e3]
    tauhalf_zero,     // [tau/2, 0)        image (-inf, e2]
};

const char* segment_name(Segment s);

// p on the given edge with wp(p) = c. Throws RangeError when c is outside the edge's image.
TorusPoint inverse_wp_real(double c, Segment seg, const LatticeData& L);
// Edge chosen from the value of c.
Segment segment_for_value(double c, const LatticeData& L);
TorusPoint contour_preimage(double c, const LatticeData& L);
// Some p with wp(p) = w, representative with s >= 0.
TorusPoint wp_preimage(cplx w, const LatticeData& L);

} // namespace torusgreen
