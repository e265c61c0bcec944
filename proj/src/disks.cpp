#include "torusgreen/disks.hpp"

#include "torusgreen/errors.hpp"
#include "torusgreen/green.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace torusgreen {

namespace {

// (e_k - e_i)(e_k - e_j) = 3 e_k^2 - g2/4.
double product_gap(int k, const LatticeData& L) {
    const double e = L.e(k);
    return 3.0 * e * e - L.g2 / 4.0;
}

} // namespace

std::array<DiskSpec, 4> disks(const LatticeData& L) {
    const double pb = pi / L.b;
    std::array<DiskSpec, 4> B;
    B[0] = {0, cplx(pb - L.eta1, 0.0), pb};
    for (int k = 1; k <= 3; ++k) {
        const double ck = product_gap(k, L);
        const cplx alpha = (pb - (L.eta1 + L.e(k))) / ck;
        const double beta = pi / (std::abs(ck) * L.b);
        if (std::abs(std::abs(alpha) - beta) < 1e-12) throw InconsistencyError("disk B_k degenerates to a half plane");
        const double den = std::norm(alpha) - beta * beta;
        B[k] = {k, L.e(k) + std::conj(alpha) / den, beta / std::abs(den)};
    }
    return B;
}

std::array<double, 15> RegionThresholds::chain() const {
    return {d[0], landmarks[0], d[1], landmarks[1], d[2], landmarks[2], d[3], landmarks[3],
            d[4], landmarks[4], d[5], landmarks[5], d[6], landmarks[6], d[7]};
}

double RegionThresholds::chain_margin() const {
    const auto c = chain();
    double m = INFINITY;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::min(m, c[i + 1] - c[i]);
    return m;
}

RegionThresholds thresholds(const LatticeData& L) {
    const double tpb = L.two_pi_over_b;
    const double e1 = L.e1, e2 = L.e2, e3 = L.e3, h = L.eta1;
    const double c1 = product_gap(1, L), c2 = product_gap(2, L), c3 = product_gap(3, L);
    RegionThresholds t;
    t.d[0] = e1 + c1 / (tpb - (e1 + h));
    t.d[1] = e3 + c3 / (tpb - (e3 + h));
    t.d[2] = -h;
    t.d[3] = e1 - c1 / (e1 + h);
    t.d[4] = e2 + c2 / (tpb - (e2 + h));
    t.d[5] = tpb - h;
    t.d[6] = e3 - c3 / (e3 + h);
    t.d[7] = e2 - c2 / (e2 + h);
    const cplx tau = L.tau;
    t.landmarks = {wp(tau / 4.0, L).real(),
                   e2,
                   wp(0.25 + tau / 2.0, L).real(),
                   e3,
                   wp(0.5 + tau / 4.0, L).real(),
                   e1,
                   wp(cplx(0.25, 0.0), L).real()};
    if (!(t.chain_margin() > 0.0))
        throw InconsistencyError("threshold chain is not strictly increasing");
    return t;
}

std::array<double, 2> disk_axis_points(const DiskSpec& d) {
    return {d.center.real() - d.radius, d.center.real() + d.radius};
}

double threshold_disk_mismatch(const RegionThresholds& t, const std::array<DiskSpec, 4>& B) {
    // d-index (0-based) of the left and right axis points of each circle.
    const int left[4] = {2, 0, 4, 1};
    const int right[4] = {5, 3, 7, 6};
    double m = 0.0;
    for (int k = 0; k < 4; ++k) {
        const auto x = disk_axis_points(B[k]);
        m = std::max(m, std::abs(x[0] - t.d[left[k]]));
        m = std::max(m, std::abs(x[1] - t.d[right[k]]));
        m = std::max(m, std::abs(B[k].center.imag()));
    }
    return m;
}

int predicted_pair_count(double w, const RegionThresholds& t) {
    const auto& d = t.d;
    for (double x : d)
        if (std::abs(w - x) <= 1e-12 * std::max(1.0, std::abs(x))) return 0;
    const bool yes = (w > d[0] && w < d[1]) || (w > d[2] && w < d[3]) || (w > d[4] && w < d[5]) ||
                     (w > d[6] && w < d[7]);
    return yes ? 1 : 0;
}

int predicted_pair_count(double w, const LatticeData& L) {
    for (int k = 1; k <= 3; ++k)
        if (std::abs(w - L.e(k)) <= 1e-12 * std::max(1.0, std::abs(L.e(k))))
            throw DomainError("wp(p) = e_k puts p on a half period");
    return predicted_pair_count(w, thresholds(L));
}

AxisLaw axis_law(double w, const RegionThresholds& t) {
    const auto& d = t.d;
    if (w > d[0] && w < d[1]) return AxisLaw::r_half;
    if (w > d[2] && w < d[3]) return AxisLaw::s_zero;
    if (w > d[4] && w < d[5]) return AxisLaw::r_zero;
    if (w > d[6] && w < d[7]) return AxisLaw::s_half;
    return AxisLaw::none;
}

const char* axis_law_name(AxisLaw a) {
    switch (a) {
    case AxisLaw::none: return "none";
    case AxisLaw::r_half: return "r=1/2";
    case AxisLaw::s_zero: return "s=0";
    case AxisLaw::r_zero: return "r=0";
    case AxisLaw::s_half: return "s=1/2";
    }
    return "?";
}

const char* region_name(Region r) {
    switch (r) {
    case Region::Xi1: return "Xi1";
    case Region::Xi2: return "Xi2";
    case Region::Xi3: return "Xi3";
    case Region::Xi4: return "Xi4";
    case Region::Xi5: return "Xi5";
    case Region::Xi6: return "Xi6";
    case Region::Xi7: return "Xi7";
    case Region::Xi8: return "Xi8";
    case Region::Xi9: return "Xi9";
    case Region::boundary: return "boundary";
    case Region::excluded: return "excluded";
    }
    return "?";
}

Region classify_region(cplx w, const LatticeData& L, double tol) {
    for (int k = 1; k <= 3; ++k)
        if (std::abs(w - L.e(k)) < tol * std::max(1.0, std::abs(L.e(k)))) return Region::excluded;
    const auto B = disks(L);
    bool in[4];
    for (int k = 0; k < 4; ++k) {
        if (std::abs(B[k].boundary_distance(w)) < tol * std::max(1.0, B[k].radius)) return Region::boundary;
        in[k] = B[k].contains(w);
    }
    if (in[1] && !in[3]) return Region::Xi1;
    if (in[0] && in[1]) return Region::Xi2;
    if (in[0] && in[2]) return Region::Xi3;
    if (in[2] && !in[3]) return Region::Xi4;
    if (!in[0] && !in[1] && !in[2] && !in[3]) return Region::Xi5;
    if (in[0] && !in[1] && !in[2]) return Region::Xi6;
    if (in[1] && in[3] && !in[0]) return Region::Xi7;
    if (in[2] && in[3] && !in[0]) return Region::Xi8;
    if (in[3] && !in[0] && !in[1] && !in[2]) return Region::Xi9;
    throw InconsistencyError("disk membership pattern matches no region");
}

CountRange region_count_range(Region r) {
    switch (r) {
    case Region::Xi1:
    case Region::Xi2:
    case Region::Xi3:
    case Region::Xi4: return {6, 6, true};
    case Region::Xi5:
    case Region::Xi6:
    case Region::Xi7:
    case Region::Xi8: return {4, 8, false};
    case Region::Xi9: return {6, 10, false};
    default: return {4, 10, false};
    }
}

BoundaryTest degeneracy_boundary_detail(const TorusPoint& p, int k, const LatticeData& L, double tol) {
    if (k < 0 || k > 3) throw DomainError("half-period index must be 0..3");
    const auto B = disks(L);
    const cplx w = wp(p, L);
    const cplx w0 = wp(p.z(L) - L.half_period(k), L);

    BoundaryTest t;
    t.circle_distance = std::abs(B[k].boundary_distance(w));
    t.shifted_distance = std::abs(B[0].boundary_distance(w0));
    t.hessian = hessian_det_halfperiod(k, p, L);

    // First-order transfer of the tolerance: w0 = e_k + c_k / (w - e_k) for k >= 1.
    double tol0 = tol;
    if (k > 0) tol0 = tol * std::abs(product_gap(k, L)) / std::norm(w - L.e(k));
    // det = -(2 pi / b + delta) delta / (4 pi^2) for signed distance delta to the B_0 circle.
    const double tol_h = tol0 / (2.0 * pi * L.b);

    t.on_circle = t.circle_distance <= tol;
    t.shifted_on_b0 = t.shifted_distance <= tol0;
    t.hessian_zero = std::abs(t.hessian) <= tol_h;

    auto agrees = [&](double dist, double matched) {
        return t.on_circle ? dist <= 2.0 * matched : dist > 0.5 * matched;
    };
    if (!agrees(t.shifted_distance, tol0) || !agrees(std::abs(t.hessian), tol_h))
        throw InconsistencyError("boundary tests disagree for k = " + std::to_string(k));
    return t;
}

bool degeneracy_boundary_test(const TorusPoint& p, int k, const LatticeData& L, double tol) {
    return degeneracy_boundary_detail(p, k, L, tol).on_circle;
}

} // namespace torusgreen
