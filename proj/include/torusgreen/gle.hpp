#pragma once

#include "torusgreen/elliptic.hpp"
#include "torusgreen/lattice.hpp"

#include <array>
#include <optional>
#include <vector>

namespace torusgreen {

// Potential of the Lame-type equation y'' = I(z) y with singularities at +-p.
cplx potential_I(cplx z, const TorusPoint& p, cplx A, const LatticeData& L);

// Corners A_0..A_3 where the accessory parameter meets a half period.
std::array<cplx, 4> accessory_corners(const TorusPoint& p, const LatticeData& L);

// Even solution of the second symmetric product, Phi = zeta(z+p) - zeta(z-p) - 2A - zeta(2p).
struct PhiDerivs {
    cplx phi;
    cplx d1;
    cplx d2;
};
PhiDerivs phi_even(cplx z, const TorusPoint& p, cplx A, const LatticeData& L);

// Q(A) = Phi'^2 - 2 Phi'' Phi + 4 I Phi^2 at a probe point.
cplx q_quartic_direct(cplx A, const TorusPoint& p, cplx z_probe, const LatticeData& L);
// Q(A) = 16 prod (A - A_k).
cplx q_quartic_product(cplx A, const TorusPoint& p, const LatticeData& L);
// Product form after checking both routes agree to 1e-8 relative; InconsistencyError otherwise.
cplx q_quartic(cplx A, const TorusPoint& p, cplx z_probe, const LatticeData& L);

struct Correspondence {
    TorusPoint a;  // representative with s in [0, 1/2]
    cplx a_z;      // complex representative used for r, s below
    cplx c;        // (zeta(a+p) + zeta(a-p)) / 2
    cplx r;
    cplx s;
    std::array<cplx, 3> tri; // cos 2 pi s, cos 2 pi r, cos 2 pi (2r + s)
};

// a with A = (zeta(p+a) + zeta(p-a) - zeta(2p)) / 2, and the monodromy data it fixes.
// Throws CornerError when A is one of the corners.
Correspondence a_from_A(cplx A, const TorusPoint& p, const LatticeData& L,
                        std::optional<cplx> seed = std::nullopt);

// Monodromy data of the exact point a, without solving for it.
Correspondence correspondence_at(cplx a, const TorusPoint& p, const LatticeData& L);

// Half-trace values at corner k: (1,1,1), (1,-1,1), (-1,1,-1), (-1,-1,-1).
std::array<int, 3> corner_discriminants(int k);

// Corner index within tol of A, or -1.
int corner_index(cplx A, const TorusPoint& p, const LatticeData& L, double rel_tol = 1e-10);

// tri_1..tri_3 at A; corner values when A sits on a corner.
std::array<cplx, 3> discriminants(cplx A, const TorusPoint& p, const LatticeData& L,
                                  std::optional<cplx> seed = std::nullopt, cplx* a_out = nullptr);

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    cplx base{0.0, 0.0}; // 0: use (1 + tau)/4
    bool base_given = false;
};

struct OdeTrace {
    cplx half_trace;      // with the cut-crossing sign applied
    cplx raw_half_trace;  // plain transfer matrix along the straight path
    int cut_crossings = 0;
    cplx base;
    double wronskian_error = 0.0;
    int steps = 0;
};

// tri_j by integrating y'' = I y along [q0, q0 + omega_j], j = 1 (omega = 1) or 2 (omega = tau).
OdeTrace discriminant_ode_detail(cplx A, const TorusPoint& p, int j, const LatticeData& L,
                                 const OdeOptions& opt = {});
cplx discriminant_ode(cplx A, const TorusPoint& p, int j, const LatticeData& L, const OdeOptions& opt = {});

inline constexpr double sigma_tol = 1e-8;

struct SigmaFlags {
    std::array<bool, 3> in_s{};
    std::array<bool, 3> in_star{};
};

SigmaFlags sigma_flags(const std::array<cplx, 3>& tri, double tol = sigma_tol);
SigmaFlags sigma_membership(cplx A, const TorusPoint& p, const LatticeData& L);

// wp(p - omega_k/2) + eta1 equals 0, 2 pi i / tau, 4 pi i / (2 tau - 1) for j = 1, 2, 3.
bool cusp_test(const TorusPoint& p, int k, int j, const LatticeData& L, double tol = 1e-9);
// wp(a+p) + wp(a-p) + 2 eta1 equals 0, 4 pi i / tau, 8 pi i / (2 tau - 1) for j = 1, 2, 3.
bool branch_test(cplx a, const TorusPoint& p, int j, const LatticeData& L, double tol = 1e-9);

enum class Axis { real, imag };
inline cplx axis_point(Axis ax, double t) { return ax == Axis::real ? cplx(t, 0.0) : cplx(0.0, t); }
inline double axis_coord(Axis ax, cplx A) { return ax == Axis::real ? A.real() : A.imag(); }

struct SweepSample {
    double t;
    cplx A;
    std::array<cplx, 3> tri;
    SigmaFlags flags;
};

// Default window: corners padded by five times their spread (at least 5).
std::array<double, 2> default_axis_window(const TorusPoint& p, Axis ax, const LatticeData& L);

std::vector<SweepSample> sweep_axis(const TorusPoint& p, Axis ax, double tmin, double tmax, int n,
                                    const LatticeData& L);

// Places where membership in sigma_j (or sigma_j^*) changes along the sweep, located by bisection to tol.
std::vector<double> membership_transitions(const TorusPoint& p, Axis ax, int j, bool star,
                                           const std::vector<SweepSample>& sweep, const LatticeData& L,
                                           double tol = 1e-10);

// Points of sigma_1 and sigma_2 in common on the axis, corners excluded.
std::vector<double> axis_common_points(const TorusPoint& p, Axis ax, const std::vector<SweepSample>& sweep,
                                       const LatticeData& L);

} // namespace torusgreen
