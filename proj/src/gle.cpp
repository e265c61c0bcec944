#include "torusgreen/gle.hpp"

#include "torusgreen/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace torusgreen {

namespace {

void require_generic(const TorusPoint& p) {
    if (half_period_index(p, pole_guard) >= 0) throw DomainError("p must not be a half period");
}

struct DoubledP {
    cplx wp2;
    cplx zeta2;
};

DoubledP doubled(const TorusPoint& p, const LatticeData& L) {
    const WpZeta v = wp_zeta(2.0 * p.z(L), L);
    return {v.wp, v.zeta};
}

cplx potential_with(cplx z, cplx pz, cplx A, const DoubledP& d, const LatticeData& L) {
    const WpZeta u = wp_zeta(z + pz, L);
    const WpZeta v = wp_zeta(z - pz, L);
    return 0.75 * (u.wp + v.wp - d.wp2) + A * (u.zeta - v.zeta - d.zeta2) + A * A;
}

} // namespace

cplx potential_I(cplx z, const TorusPoint& p, cplx A, const LatticeData& L) {
    require_generic(p);
    return potential_with(z, p.z(L), A, doubled(p, L), L);
}

std::array<cplx, 4> accessory_corners(const TorusPoint& p, const LatticeData& L) {
    require_generic(p);
    const WpZeta v = wp_zeta(p.z(L), L);
    const cplx wpp = 6.0 * v.wp * v.wp - L.g2 / 2.0;
    const cplx A0 = -wpp / (4.0 * v.wp_prime);
    std::array<cplx, 4> A{A0, 0.0, 0.0, 0.0};
    for (int k = 1; k <= 3; ++k) A[k] = A0 + v.wp_prime / (2.0 * (v.wp - L.e(k)));
    return A;
}

PhiDerivs phi_even(cplx z, const TorusPoint& p, cplx A, const LatticeData& L) {
    require_generic(p);
    const cplx pz = p.z(L);
    const WpZeta u = wp_zeta(z + pz, L);
    const WpZeta v = wp_zeta(z - pz, L);
    const DoubledP d = doubled(p, L);
    return {u.zeta - v.zeta - 2.0 * A - d.zeta2, -u.wp + v.wp, -u.wp_prime + v.wp_prime};
}

cplx q_quartic_direct(cplx A, const TorusPoint& p, cplx z_probe, const LatticeData& L) {
    const PhiDerivs f = phi_even(z_probe, p, A, L);
    const cplx I_z = potential_I(z_probe, p, A, L);
    return f.d1 * f.d1 - 2.0 * f.d2 * f.phi + 4.0 * I_z * f.phi * f.phi;
}

cplx q_quartic_product(cplx A, const TorusPoint& p, const LatticeData& L) {
    const auto Ak = accessory_corners(p, L);
    cplx q = 16.0;
    for (const cplx& c : Ak) q *= (A - c);
    return q;
}

cplx q_quartic(cplx A, const TorusPoint& p, cplx z_probe, const LatticeData& L) {
    const cplx d = q_quartic_direct(A, p, z_probe, L);
    const cplx q = q_quartic_product(A, p, L);
    const double scale = std::max({std::abs(q), 16.0 * std::norm(A) * std::norm(A), 1.0});
    if (std::abs(d - q) > 1e-8 * scale)
        throw InconsistencyError("quartic routes disagree");
    return q;
}

int corner_index(cplx A, const TorusPoint& p, const LatticeData& L, double rel_tol) {
    const auto Ak = accessory_corners(p, L);
    cplx q = 16.0;
    for (const cplx& c : Ak) q *= (A - c);
    if (std::abs(q) > rel_tol * std::abs(16.0 * A * A * A * A + 1.0)) return -1;
    int best = 0;
    for (int k = 1; k < 4; ++k)
        if (std::abs(A - Ak[k]) < std::abs(A - Ak[best])) best = k;
    return best;
}

Correspondence correspondence_at(cplx a, const TorusPoint& p, const LatticeData& L) {
    const cplx pz = p.z(L);
    Correspondence out;
    out.a_z = a;
    out.a = TorusPoint::from_complex(a, L);
    out.c = 0.5 * (zeta(a + pz, L) + zeta(a - pz, L));
    const cplx tpi = 2.0 * pi * I;
    out.s = -(out.c - L.eta1 * a) / tpi;
    out.r = (out.c * L.tau - L.eta2 * a) / tpi;
    out.tri = {std::cos(2.0 * pi * out.s), std::cos(2.0 * pi * out.r), std::cos(2.0 * pi * (2.0 * out.r + out.s))};
    return out;
}

Correspondence a_from_A(cplx A, const TorusPoint& p, const LatticeData& L, std::optional<cplx> seed) {
    require_generic(p);
    if (!std::isfinite(A.real()) || !std::isfinite(A.imag())) throw DomainError("non-finite accessory parameter");
    if (corner_index(A, p, L) >= 0) throw CornerError("accessory parameter is a corner value");

    const cplx pz = p.z(L);
    const DoubledP d = doubled(p, L);
    const auto Ak = accessory_corners(p, L);

    std::vector<cplx> seeds;
    if (seed) seeds.push_back(*seed);
    // Nearest corner: A - A_k ~ -wp'(p - omega_k/2) (a - omega_k/2)^2 / 2.
    int kc = 0;
    for (int k = 1; k < 4; ++k)
        if (std::abs(A - Ak[k]) < std::abs(A - Ak[kc])) kc = k;
    const cplx hk = L.half_period(kc);
    const cplx w1 = wp_prime(pz - hk, L);
    const cplx eps = std::sqrt(-2.0 * (A - Ak[kc]) / w1);
    seeds.push_back(hk + eps);
    // Large |A|: a ~ p - 1/(2A).
    if (std::abs(A) > 1.0) seeds.push_back(pz - 1.0 / (2.0 * A));
    const cplx centre = (1.0 + L.tau) / 4.0;
    for (double rad : {0.15, 0.3})
        for (int m = 0; m < 6; ++m) {
            const double th = 2.0 * pi * m / 6.0 + (rad > 0.2 ? pi / 6.0 : 0.0);
            seeds.push_back(centre + rad * std::cos(th) + rad * std::sin(th) * L.tau);
        }

    const double ftol = 1e-13 * std::max(1.0, std::abs(A));
    const double cap = 0.1 * std::min(1.0, L.b);
    for (cplx a : seeds) {
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            WpZeta u, v;
            try {
                u = wp_zeta(pz + a, L);
                v = wp_zeta(pz - a, L);
            } catch (const PoleError&) {
                break;
            }
            const cplx g = 0.5 * (u.zeta + v.zeta - d.zeta2) - A;
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) break;
            if (std::abs(g) < ftol) {
                ok = true;
                break;
            }
            const cplx dg = 0.5 * (v.wp - u.wp);
            if (dg == 0.0) break;
            cplx step = g / dg;
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            a -= step;
        }
        if (!ok) continue;
        TorusPoint at = TorusPoint::from_complex(a, L);
        cplx az = at.z(L);
        if (at.s() < 0.0) az = -az;
        return correspondence_at(az, p, L);
    }
    throw ConvergenceError("no solution a for the given accessory parameter");
}

std::array<int, 3> corner_discriminants(int k) {
    switch (k) {
    case 0: return {1, 1, 1};
    case 1: return {1, -1, 1};
    case 2: return {-1, 1, -1};
    case 3: return {-1, -1, -1};
    default: throw DomainError("corner index must be 0..3");
    }
}

std::array<cplx, 3> discriminants(cplx A, const TorusPoint& p, const LatticeData& L, std::optional<cplx> seed,
                                  cplx* a_out) {
    const int k = corner_index(A, p, L);
    if (k >= 0) {
        const auto e = corner_discriminants(k);
        if (a_out) *a_out = L.half_period(k);
        return {double(e[0]), double(e[1]), double(e[2])};
    }
    const Correspondence c = a_from_A(A, p, L, seed);
    if (a_out) *a_out = c.a_z;
    return c.tri;
}

namespace {

double point_segment_distance(cplx x, cplx a, cplx b) {
    const cplx ab = b - a;
    double t = std::real((x - a) * std::conj(ab)) / std::norm(ab);
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(x - (a + t * ab));
}

double orient(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool segments_cross(double ax, double ay, double bx, double by, double cx, double cy, double dx, double dy) {
    const double o1 = orient(ax, ay, bx, by, cx, cy);
    const double o2 = orient(ax, ay, bx, by, dx, dy);
    const double o3 = orient(cx, cy, dx, dy, ax, ay);
    const double o4 = orient(cx, cy, dx, dy, bx, by);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

using OdeState = std::array<cplx, 4>;

} // namespace

OdeTrace discriminant_ode_detail(cplx A, const TorusPoint& p, int j, const LatticeData& L, const OdeOptions& opt) {
    require_generic(p);
    if (j != 1 && j != 2) throw DomainError("ODE route covers j = 1 and j = 2");
    const cplx omega = j == 1 ? cplx(1.0, 0.0) : L.tau;
    const cplx pz = p.z(L);
    const double clearance = 0.02 * std::min(1.0, L.b);

    auto clear_of_poles = [&](cplx q) {
        for (int m = -3; m <= 3; ++m)
            for (int n = -3; n <= 3; ++n)
                for (double sg : {1.0, -1.0}) {
                    const cplx x = sg * pz + double(m) + double(n) * L.tau;
                    if (point_segment_distance(x, q, q + omega) < clearance) return false;
                }
        return true;
    };

    const cplx q0 = opt.base_given ? opt.base : (1.0 + L.tau) / 4.0;
    const cplx shift = (1.0 + L.tau) / 16.0;
    cplx q = q0;
    bool found = false;
    for (int k = 0; k <= 8; ++k) {
        q = q0 + double(k) * shift;
        if (clear_of_poles(q)) {
            found = true;
            break;
        }
    }
    if (!found) throw DomainError("no integration path clear of the singularities");

    // Cuts join -p to p through 0 inside the fundamental box; crossing one flips the continuation.
    const TorusPoint pc = p;
    const double q_r = q.real(), q_s = q.imag() / L.b;
    const double e_r = q_r + (j == 1 ? 1.0 : 0.0), e_s = q_s + (j == 2 ? 1.0 : 0.0);
    int crossings = 0;
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
            if (segments_cross(q_r, q_s, e_r, e_s, m - pc.r(), n - pc.s(), m + pc.r(), n + pc.s())) ++crossings;

    const DoubledP d = doubled(p, L);
    const cplx w2 = omega * omega;
    auto rhs = [&](const OdeState& y, OdeState& dy, double x) {
        const cplx V = w2 * potential_with(q + x * omega, pz, A, d, L);
        dy[0] = y[1];
        dy[1] = V * y[0];
        dy[2] = y[3];
        dy[3] = V * y[2];
    };
    namespace odeint = boost::numeric::odeint;
    OdeState y{1.0, 0.0, 0.0, 1.0};
    auto stepper = odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<OdeState>());
    int steps = 0;
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, 1.0, 1e-3, [&](const OdeState&, double) { ++steps; });

    OdeTrace out;
    out.raw_half_trace = 0.5 * (y[0] + y[3]);
    out.cut_crossings = crossings;
    out.half_trace = (crossings % 2 ? -1.0 : 1.0) * out.raw_half_trace;
    out.base = q;
    out.wronskian_error = std::abs(y[0] * y[3] - y[1] * y[2] - 1.0);
    out.steps = steps;
    return out;
}

cplx discriminant_ode(cplx A, const TorusPoint& p, int j, const LatticeData& L, const OdeOptions& opt) {
    return discriminant_ode_detail(A, p, j, L, opt).half_trace;
}

SigmaFlags sigma_flags(const std::array<cplx, 3>& tri, double tol) {
    SigmaFlags f;
    for (int j = 0; j < 3; ++j) {
        const cplx t = tri[j];
        f.in_s[j] = std::abs(t.imag()) <= tol && t.real() >= -1.0 - tol && t.real() <= 1.0 + tol;
        f.in_star[j] = t.real() > 1.0 + tol && std::abs(t.imag()) <= tol * std::max(1.0, std::abs(t));
    }
    return f;
}

SigmaFlags sigma_membership(cplx A, const TorusPoint& p, const LatticeData& L) {
    return sigma_flags(discriminants(A, p, L));
}

bool cusp_test(const TorusPoint& p, int k, int j, const LatticeData& L, double tol) {
    if (j < 1 || j > 3) throw DomainError("j must be 1, 2 or 3");
    const cplx v = wp(p.z(L) - L.half_period(k), L) + L.eta1;
    const cplx target = j == 1 ? cplx(0.0) : j == 2 ? 2.0 * pi * I / L.tau : 4.0 * pi * I / (2.0 * L.tau - 1.0);
    return std::abs(v - target) <= tol * std::max(1.0, std::abs(target));
}

bool branch_test(cplx a, const TorusPoint& p, int j, const LatticeData& L, double tol) {
    if (j < 1 || j > 3) throw DomainError("j must be 1, 2 or 3");
    const cplx pz = p.z(L);
    const cplx v = wp(a + pz, L) + wp(a - pz, L) + 2.0 * L.eta1;
    const cplx target = j == 1 ? cplx(0.0) : j == 2 ? 4.0 * pi * I / L.tau : 8.0 * pi * I / (2.0 * L.tau - 1.0);
    return std::abs(v - target) <= tol * std::max(1.0, std::abs(target));
}

std::array<double, 2> default_axis_window(const TorusPoint& p, Axis ax, const LatticeData& L) {
    const auto Ak = accessory_corners(p, L);
    double lo = INFINITY, hi = -INFINITY;
    for (const cplx& c : Ak) {
        lo = std::min(lo, axis_coord(ax, c));
        hi = std::max(hi, axis_coord(ax, c));
    }
    const double pad = 5.0 * std::max(1.0, hi - lo);
    return {lo - pad, hi + pad};
}

std::vector<SweepSample> sweep_axis(const TorusPoint& p, Axis ax, double tmin, double tmax, int n,
                                    const LatticeData& L) {
    if (n < 2 || !(tmax > tmin)) throw DomainError("sweep needs n >= 2 and tmax > tmin");
    std::vector<SweepSample> out;
    out.reserve(n);
    std::optional<cplx> seed;
    for (int i = 0; i < n; ++i) {
        const double t = tmin + (tmax - tmin) * i / (n - 1);
        const cplx A = axis_point(ax, t);
        cplx a;
        const auto tri = discriminants(A, p, L, seed, &a);
        seed = a;
        out.push_back({t, A, tri, sigma_flags(tri)});
    }
    return out;
}

namespace {

bool flag_of(const SigmaFlags& f, int j, bool star) { return star ? f.in_star[j - 1] : f.in_s[j - 1]; }

} // namespace

std::vector<double> membership_transitions(const TorusPoint& p, Axis ax, int j, bool star,
                                           const std::vector<SweepSample>& sweep, const LatticeData& L,
                                           double tol) {
    if (j < 1 || j > 3) throw DomainError("j must be 1, 2 or 3");
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
        const bool f0 = flag_of(sweep[i].flags, j, star);
        if (f0 == flag_of(sweep[i + 1].flags, j, star)) continue;
        double lo = sweep[i].t, hi = sweep[i + 1].t;
        std::optional<cplx> seed;
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            cplx a;
            const auto tri = discriminants(axis_point(ax, mid), p, L, seed, &a);
            seed = a;
            if (flag_of(sigma_flags(tri), j, star) == f0)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> axis_common_points(const TorusPoint& p, Axis ax, const std::vector<SweepSample>& sweep,
                                       const LatticeData& L) {
    // Distance of tri_j from the band [-1, 1]; both vanish exactly on sigma_1 and sigma_2.
    auto band = [](cplx t) { return std::abs(t - std::clamp(t.real(), -1.0, 1.0)); };
    auto m_of = [&](const std::array<cplx, 3>& tri) { return std::max(band(tri[0]), band(tri[1])); };

    const auto Ak = accessory_corners(p, L);
    double spread = 0.0;
    for (const cplx& x : Ak)
        for (const cplx& y : Ak) spread = std::max(spread, std::abs(x - y));
    const double corner_gap = 1e-6 * std::max(1.0, spread);

    std::vector<double> m(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) m[i] = m_of(sweep[i].tri);

    std::vector<double> pts;
    for (std::size_t i = 1; i + 1 < sweep.size(); ++i) {
        if (!(m[i] <= m[i - 1] && m[i] <= m[i + 1])) continue;
        std::optional<cplx> seed;
        auto f = [&](double t) {
            cplx a;
            const auto tri = discriminants(axis_point(ax, t), p, L, seed, &a);
            seed = a;
            return m_of(tri);
        };
        const auto r = boost::math::tools::brent_find_minima(f, sweep[i - 1].t, sweep[i + 1].t, 52);
        if (r.second > sigma_tol) continue;
        const cplx A = axis_point(ax, r.first);
        bool at_corner = false;
        for (const cplx& c : Ak)
            if (std::abs(A - c) < corner_gap) at_corner = true;
        if (at_corner) continue;
        bool dup = false;
        for (double x : pts)
            if (std::abs(x - r.first) < 1e-6 * std::max(1.0, spread)) dup = true;
        if (!dup) pts.push_back(r.first);
    }
    return pts;
}

} // namespace torusgreen
