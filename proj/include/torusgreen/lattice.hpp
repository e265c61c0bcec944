#pragma once

#include <complex>

namespace torusgreen {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Series in the nome stop once a term drops below this relative size, or at the hard cap.
inline constexpr double series_rel_tol = 1e-17;
inline constexpr int series_max_terms = 64;

// The series are always summed on a lattice Z + i*b_core*Z with b_core >= 1.
// For b < 1 the lattice is rotated: z_core = z / tau, and wp, wp', zeta pick up
// powers of 1/tau.
struct CoreFrame {
    double b_core = 1.0;
    bool rotated = false;
    cplx scale{1.0, 0.0};   // z_core = z / scale
    double eta1_core = 0.0;
    double nome_core = 0.0; // exp(-2 pi b_core)
};

// Invariants of the rectangular torus C / (Z + i b Z).
struct LatticeData {
    double b = 1.0;
    cplx tau{0.0, 1.0};
    double nome_q = 0.0; // exp(-2 pi b)
    double e1 = 0.0;     // wp(1/2)
    double e2 = 0.0;     // wp(tau/2)
    double e3 = 0.0;     // wp((1+tau)/2)
    double g2 = 0.0;
    double g3 = 0.0;
    double eta1 = 0.0;   // 2 zeta(1/2)
    cplx eta2{};         // 2 zeta(tau/2), purely imaginary
    double two_pi_over_b = 0.0;
    CoreFrame core;

    double e(int k) const;           // e_1, e_2, e_3
    cplx half_period(int k) const;   // omega_k / 2, k = 0..3
};

// Throws DomainError unless b is finite and b > 0.
LatticeData compute_invariants(double b);

double legendre_residual(const LatticeData& L);
// max_k |4 e_k^3 - g2 e_k - g3|, and the two symmetric-function residuals, relative to the invariant size.
double cubic_residual(const LatticeData& L);

} // namespace torusgreen
