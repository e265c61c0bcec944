#pragma once

#include "torusgreen/elliptic.hpp"
#include "torusgreen/lattice.hpp"

#include <vector>

namespace torusgreen {

// Green function of the torus, up to an additive constant: -(1/2pi) log|e^{-eta1 z^2/2} sigma(z)| + (Im z)^2 / (2b).
double green_value(const TorusPoint& z, const LatticeData& L);
// G_p(z) = (G(z + p) + G(z - p)) / 2.
double green_p_value(const TorusPoint& z, const TorusPoint& p, const LatticeData& L);

// dG/dz = -(zeta(z) - r eta1 - s eta2) / (4 pi) at z = r + s tau.
cplx grad_G(const TorusPoint& z, const LatticeData& L);
// zeta(a+p) + zeta(a-p) - 2(r eta1 + s eta2); zero exactly at critical points of G_p.
cplx grad_Gp(const TorusPoint& a, const TorusPoint& p, const LatticeData& L);

// det D^2 G_p at a critical point a (not a half period).
double hessian_det_nontrivial(const TorusPoint& a, const TorusPoint& p, const LatticeData& L);
// det D^2 G_p at omega_k / 2, k = 0..3.
double hessian_det_halfperiod(int k, const TorusPoint& p, const LatticeData& L);
// Natural size of the determinant, 1 / (4 b^2).
double hessian_scale(const LatticeData& L);

enum class CriticalKind { saddle, extremum, degenerate };
const char* kind_name(CriticalKind k);

struct CriticalPoint {
    TorusPoint a;
    bool trivial = false;
    int half_index = -1; // 0..3 for half periods
    double hessian_det = 0.0;
    CriticalKind kind = CriticalKind::saddle;
    int degree = 0;
    double residual = 0.0;
};

enum class CensusStatus { complete, degenerate };

struct CensusOptions {
    int grid_n = 48;
    double tol_deg_factor = 1e-8; // degenerate when |det| < factor * hessian_scale
    double dedupe_tol = 1e-7;
    double residual_tol = 1e-10;
    bool refine = true;
    int threads = 0; // 0: hardware concurrency capped by TORUSGREEN_THREADS
};

struct Census {
    std::vector<CriticalPoint> points; // sorted by (r, s)
    CensusStatus status = CensusStatus::complete;
    int grid_used = 0;
    int degree_sum = 0;

    int size() const { return static_cast<int>(points.size()); }
    int nontrivial_pairs() const;
};

// All critical points of G_p. p must not be a half period.
// Throws CensusIncomplete when the degree sum is not -2 even after one refinement.
Census census(const TorusPoint& p, const LatticeData& L, const CensusOptions& opt = {});

int degree_sum(const std::vector<CriticalPoint>& pts);

} // namespace torusgreen
