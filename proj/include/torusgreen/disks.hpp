#pragma once

#include "torusgreen/elliptic.hpp"
#include "torusgreen/lattice.hpp"

#include <array>

namespace torusgreen {

// Open disk in the wp-plane.
struct DiskSpec {
    int k = 0;
    cplx center;
    double radius = 0.0;

    bool contains(cplx w) const { return std::abs(w - center) < radius; }
    // Signed distance to the circle, negative inside.
    double boundary_distance(cplx w) const { return std::abs(w - center) - radius; }
};

// B_0: the half-period Hessian at 0 is positive iff wp(p) lies in B_0.
// B_1, B_2 likewise at omega_1/2, omega_2/2; at omega_3/2 the sign flips (positive iff outside cl B_3).
std::array<DiskSpec, 4> disks(const LatticeData& L);

struct RegionThresholds {
    std::array<double, 8> d{};         // d_1 .. d_8
    std::array<double, 7> landmarks{}; // wp(tau/4), e2, wp(1/4+tau/2), e3, wp(1/2+tau/4), e1, wp(1/4)

    // d1 < wp(tau/4) < d2 < e2 < d3 < ... < d8, fifteen values.
    std::array<double, 15> chain() const;
    double chain_margin() const;
};

// Throws InconsistencyError if the interleaving chain fails.
RegionThresholds thresholds(const LatticeData& L);

// Real points where circle k meets the axis, (left, right).
std::array<double, 2> disk_axis_points(const DiskSpec& d);
// Largest gap between the thresholds and the circle/axis intersections they correspond to.
double threshold_disk_mismatch(const RegionThresholds& t, const std::array<DiskSpec, 4>& B);

// Number of nontrivial critical pairs for real wp(p) off the thresholds: 1 on
// (d1,d2), (d3,d4), (d5,d6), (d7,d8), otherwise 0.
int predicted_pair_count(double wp_value, const LatticeData& L);
int predicted_pair_count(double wp_value, const RegionThresholds& t);

// Axis carrying the nontrivial pair on each yes-interval.
enum class AxisLaw { none, r_half, s_zero, r_zero, s_half };
AxisLaw axis_law(double wp_value, const RegionThresholds& t);
const char* axis_law_name(AxisLaw a);

enum class Region { Xi1, Xi2, Xi3, Xi4, Xi5, Xi6, Xi7, Xi8, Xi9, boundary, excluded };
const char* region_name(Region r);

// Position of wp(p) relative to the four disks. Within tol of a circle: boundary; within tol of e_k: excluded.
Region classify_region(cplx w, const LatticeData& L, double tol = 1e-10);
// Census sizes allowed in a region: exactly 6 on Xi1..Xi4, 4 or 8 on Xi5..Xi8, at least 6 on Xi9.
struct CountRange {
    int lo;
    int hi;
    bool exact;
};
CountRange region_count_range(Region r);

struct BoundaryTest {
    bool on_circle;          // wp(p) on the circle of B_k
    double circle_distance;  // | |wp(p) - c_k| - R_k |
    bool shifted_on_b0;      // wp(p - omega_k/2) on the circle of B_0
    double shifted_distance;
    bool hessian_zero;       // det D^2 G_p(omega_k/2) vanishes
    double hessian;
};

// omega_k/2 is a degenerate critical point of G_p iff wp(p) lies on the circle of B_k.
// The three equivalent tests are run with matched tolerances; a disagreement throws InconsistencyError.
BoundaryTest degeneracy_boundary_detail(const TorusPoint& p, int k, const LatticeData& L, double tol = 1e-9);
bool degeneracy_boundary_test(const TorusPoint& p, int k, const LatticeData& L, double tol = 1e-9);

} // namespace torusgreen
