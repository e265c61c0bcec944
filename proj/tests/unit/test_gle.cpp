#include "doctest.h"

#include "support/check.hpp"
#include "torusgreen/disks.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/errors.hpp"
#include "torusgreen/gle.hpp"
#include "torusgreen/green.hpp"
#include "torusgreen/hitchin.hpp"

#include <algorithm>
#include <cmath>

using namespace torusgreen;
using check::rel;

TEST_CASE("potential: ellipticity, symmetries, pole") {
    const LatticeData L = compute_invariants(1.2);
    check::Gen g(21);
    for (int i = 0; i < 20; ++i) {
        const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
        if (half_period_index(p, 0.03) >= 0) continue;
        const cplx A = g.disk(3.0);
        const cplx z(g.uniform(-0.5, 0.5), g.uniform(-0.6, 0.6));
        if (std::min(std::abs(z - p.z(L)), std::abs(z + p.z(L))) < 0.05) continue;
        const cplx I0 = potential_I(z, p, A, L);
        CHECK(rel(potential_I(z + 1.0, p, A, L), I0) < 1e-10);
        CHECK(rel(potential_I(z + L.tau, p, A, L), I0) < 1e-10);
        CHECK(rel(potential_I(-z, p, A, L), I0) < 1e-10);
        // flipping p flips the sign of the first-order term, not the potential
        CHECK(rel(potential_I(z, -p, A, L), potential_I(z, p, -A, L)) < 1e-10);
    }
    const TorusPoint p(0.21, 0.13);
    const cplx pz = p.z(L);
    for (double eps : {1e-4, 1e-5}) {
        const cplx z = pz + std::polar(eps, 0.4);
        CHECK(std::abs((z - pz) * (z - pz) * potential_I(z, p, 0.7, L) - 0.75) < 100 * eps);
    }
}

TEST_CASE("corners") {
    check::Gen g(8);
    for (double b : {0.7, 1.0, 1.6}) {
        const LatticeData L = compute_invariants(b);
        for (int i = 0; i < 10; ++i) {
            const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
            if (half_period_index(p, 0.03) >= 0) continue;
            const auto A = accessory_corners(p, L);
            const double scale = std::abs(A[0]) + std::abs(A[1]) + std::abs(A[2]) + std::abs(A[3]);
            CHECK(std::abs(A[0] + A[1] + A[2] + A[3]) < 1e-10 * scale);
            for (int k = 0; k < 4; ++k) CHECK(corner_index(A[k], p, L) == k);
        }
        for (double x : {0.1, 0.3, 0.45}) {
            const auto A = accessory_corners(TorusPoint(x, 0.0), L);
            for (const auto& a : A) CHECK(std::abs(a.imag()) < 1e-10 * std::max(1.0, std::abs(a)));
            CHECK(A[1].real() < A[3].real());
            CHECK(A[3].real() < A[2].real());
            CHECK(A[2].real() < A[0].real());
            const auto B = accessory_corners(TorusPoint(0.0, x), L);
            for (const auto& a : B) CHECK(std::abs(a.real()) < 1e-10 * std::max(1.0, std::abs(a)));
            CHECK(B[0].imag() < B[1].imag());
            CHECK(B[1].imag() < B[3].imag());
            CHECK(B[3].imag() < B[2].imag());
        }
        CHECK_THROWS_AS(accessory_corners(TorusPoint(0.5, 0.0), L), DomainError);
    }
}

TEST_CASE("even solution of the symmetric square") {
    const LatticeData L = compute_invariants(1.0);
    const TorusPoint p(0.17, 0.29);
    const cplx A(0.4, -0.9);
    for (cplx z : {cplx(0.31, 0.07), cplx(-0.2, 0.4), cplx(0.05, -0.33)}) {
        const PhiDerivs f = phi_even(z, p, A, L);
        CHECK(rel(phi_even(-z, p, A, L).phi, f.phi) < 1e-11);
        // Richardson-extrapolated central differences
        const double h = 3e-4;
        auto deriv = [&](auto f) {
            return (4.0 * (f(z + h / 2) - f(z - h / 2)) / h - (f(z + h) - f(z - h)) / (2 * h)) / 3.0;
        };
        const cplx d3 = deriv([&](cplx x) { return phi_even(x, p, A, L).d2; });
        const cplx dI = deriv([&](cplx x) { return potential_I(x, p, A, L); });
        const cplx I0 = potential_I(z, p, A, L);
        const cplx res = d3 - 4.0 * I0 * f.d1 - 2.0 * dI * f.phi;
        const double size = std::abs(d3) + std::abs(4.0 * I0 * f.d1) + std::abs(2.0 * dI * f.phi);
        CHECK(std::abs(res) < 1e-9 * size);
    }
}

TEST_CASE("quartic by both routes") {
    const LatticeData L = compute_invariants(1.0);
    check::Gen g(4);
    for (int i = 0; i < 20; ++i) {
        const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
        if (half_period_index(p, 0.03) >= 0) continue;
        const cplx A = g.disk(4.0);
        const cplx probe(0.123, 0.311);
        const cplx q = q_quartic_product(A, p, L);
        CHECK(std::abs(q_quartic_direct(A, p, probe, L) - q) < 1e-8 * std::max(1.0, std::abs(q)));
        CHECK(std::abs(q_quartic_direct(A, p, cplx(-0.27, 0.05), L) - q) < 1e-8 * std::max(1.0, std::abs(q)));
        CHECK_NOTHROW(q_quartic(A, p, probe, L));
        for (const cplx& Ak : accessory_corners(p, L)) CHECK(std::abs(q_quartic_product(Ak, p, L)) < 1e-10);
    }
    const TorusPoint p(0.2, 0.1);
    const cplx A = std::polar(1e3, 0.3);
    CHECK(std::abs(q_quartic(A, p, cplx(0.3, 0.3), L) / std::pow(A, 4) - 16.0) < 1e-3);
}

TEST_CASE("accessory parameter to a and back") {
    check::Gen g(17);
    for (double b : {0.8, 1.0, 1.5}) {
        const LatticeData L = compute_invariants(b);
        for (int i = 0; i < 20; ++i) {
            const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
            const TorusPoint a(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
            if (half_period_index(p, 0.03) >= 0 || half_period_index(a, 0.03) >= 0) continue;
            if (std::min(wrapped_distance(a, p), wrapped_distance(a, -p)) < 0.03) continue;
            const cplx pz = p.z(L), az = a.z(L);
            const cplx A = 0.5 * (zeta(pz + az, L) + zeta(pz - az, L) - zeta(2.0 * pz, L));
            const Correspondence c = a_from_A(A, p, L);
            CHECK(std::min(wrapped_distance(c.a, a), wrapped_distance(c.a, -a)) < 1e-8);
            CHECK(c.a.s() >= 0.0);
            CHECK(std::abs(c.r + c.s * L.tau - c.a_z) < 1e-9);
            CHECK(std::abs(c.r * L.eta1 + c.s * L.eta2 - c.c) < 1e-9 * std::max(1.0, std::abs(c.c)));
            CHECK(std::abs(c.tri[0] - std::cos(2 * pi * c.s)) < 1e-9 * std::max(1.0, std::abs(c.tri[0])));
            CHECK(std::abs(c.tri[1] - std::cos(2 * pi * c.r)) < 1e-9 * std::max(1.0, std::abs(c.tri[1])));
        }
    }
}

TEST_CASE("corner values") {
    const std::array<int, 3> expect[4] = {{1, 1, 1}, {1, -1, 1}, {-1, 1, -1}, {-1, -1, -1}};
    for (int k = 0; k < 4; ++k) CHECK(corner_discriminants(k) == expect[k]);
    CHECK_THROWS_AS(corner_discriminants(4), DomainError);

    const LatticeData L = compute_invariants(1.0);
    const TorusPoint p(0.17, 0.11);
    const auto A = accessory_corners(p, L);
    for (int k = 0; k < 4; ++k) {
        CAPTURE(k);
        CHECK_THROWS_AS(a_from_A(A[k], p, L), CornerError);
        const auto tri = discriminants(A[k], p, L);
        for (int j = 0; j < 3; ++j) CHECK(tri[j] == cplx(expect[k][j], 0.0));
        const auto near = discriminants(A[k] + 1e-4, p, L);
        for (int j = 0; j < 3; ++j) CHECK(std::abs(near[j] - double(expect[k][j])) < 1e-2);
        for (int j = 1; j <= 2; ++j) {
            const OdeTrace t = discriminant_ode_detail(A[k], p, j, L);
            CHECK(std::abs(t.half_trace - double(expect[k][j - 1])) < 1e-6);
            CHECK(t.wronskian_error < 1e-9);
        }
    }
}

TEST_CASE("ODE route against the closed form") {
    check::Gen g(31);
    for (double b : {0.6, 1.0, 2.0}) {
        const LatticeData L = compute_invariants(b);
        for (int i = 0; i < 8; ++i) {
            const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
            if (half_period_index(p, 0.05) >= 0) continue;
            const cplx A = g.disk(2.5);
            const auto tri = discriminants(A, p, L);
            for (int j = 1; j <= 2; ++j) {
                const OdeTrace t = discriminant_ode_detail(A, p, j, L);
                CAPTURE(b);
                CAPTURE(j);
                CHECK(std::abs(t.half_trace - tri[j - 1]) < 1e-6 * std::max(1.0, std::abs(tri[j - 1])));
                CHECK(t.wronskian_error < 1e-9);
                CHECK(std::abs(std::abs(t.raw_half_trace) - std::abs(t.half_trace)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(discriminant_ode(0.3, TorusPoint(0.2, 0.1), 3, compute_invariants(1.0)), DomainError);
}

TEST_CASE("discriminant symmetries on the axes") {
    const LatticeData L = compute_invariants(1.0);
    check::Gen g(2);
    for (int i = 0; i < 10; ++i) {
        const cplx A = g.disk(3.0);
        const TorusPoint pr(0.3, 0.0), pi_(0.0, 0.3);
        const auto t = discriminants(A, pr, L), tc = discriminants(std::conj(A), pr, L);
        const auto u = discriminants(A, pi_, L), uc = discriminants(-std::conj(A), pi_, L);
        for (int j = 0; j < 2; ++j) {
            CAPTURE(j);
            CHECK(std::abs(tc[j] - std::conj(t[j])) < 1e-8 * std::max(1.0, std::abs(t[j])));
            CHECK(std::abs(uc[j] - std::conj(u[j])) < 1e-8 * std::max(1.0, std::abs(u[j])));
        }
        // both reflections send (r, s) to (conj r, -conj s), so tri3 is not self-conjugate
        for (const auto& [c, tri3] : {std::pair{a_from_A(A, pr, L), tc[2]}, std::pair{a_from_A(A, pi_, L), uc[2]}}) {
            const cplx want = std::conj(std::cos(2.0 * pi * (2.0 * c.r - c.s)));
            CHECK(std::abs(tri3 - want) < 1e-8 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("sigma flags") {
    const SigmaFlags a = sigma_flags({cplx(0.5, 0.0), cplx(2.0, 0.0), cplx(-1.0, 1e-6)});
    CHECK(a.in_s[0]);
    CHECK(!a.in_star[0]);
    CHECK(!a.in_s[1]);
    CHECK(a.in_star[1]);
    CHECK(!a.in_s[2]);
    CHECK(!a.in_star[2]);
    const SigmaFlags e = sigma_flags({cplx(1.0 + 5e-9, 0.0), cplx(-1.0 - 5e-9, 0.0), cplx(1.0 + 2e-8, 0.0)});
    CHECK(e.in_s[0]);
    CHECK(e.in_s[1]);
    CHECK(e.in_star[2]);
    CHECK(!e.in_s[2]);
}

TEST_CASE("unitary monodromy at census critical points") {
    for (double b : {1.0, 1.4}) {
        const LatticeData L = compute_invariants(b);
        for (const TorusPoint p : {TorusPoint(0.25, 0.0), TorusPoint(0.0, 0.25), TorusPoint(0.21, 0.17)}) {
            const Census c = census(p, L);
            for (const auto& cp : c.points) {
                if (cp.trivial) continue;
                const Correspondence cc = correspondence_at(cp.a.z(L), p, L);
                CHECK(std::abs(cc.r.imag()) < 1e-8);
                CHECK(std::abs(cc.s.imag()) < 1e-8);
                const cplx A = accessory_from_critical(cp.a, p, L);
                const SigmaFlags f = sigma_membership(A, p, L);
                CHECK(f.in_s[0]);
                CHECK(f.in_s[1]);
                CHECK(corner_index(A, p, L) == -1);
            }
        }
    }
}

TEST_CASE("special accessory parameters") {
    const LatticeData L = compute_invariants(1.0);
    const TorusPoint p(0.25, 0.0), a(0.25, 0.5);
    const cplx A = accessory_from_critical(a, p, L);
    const Correspondence c = a_from_A(A, p, L);
    for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(c.tri[j].imag()) < 1e-9);
        CHECK(std::abs(c.tri[j].real()) <= 1.0 + 1e-9);
    }
    CHECK(std::abs(std::abs(wrap_half(c.r.real())) - 0.25) < 1e-9);
    CHECK(std::abs(std::abs(wrap_half(c.s.real())) - 0.5) < 1e-9);
    CHECK(!branch_test(a.z(L), p, 1, L));

    const TorusPoint q(0.0, 0.25), aq(0.5, 0.25);
    const Correspondence d = correspondence_at(aq.z(L), q, L);
    CHECK(std::abs(std::abs(wrap_half(d.r.real())) - 0.5) < 1e-9);
    CHECK(std::abs(std::abs(wrap_half(d.s.real())) - 0.25) < 1e-9);
}

TEST_CASE("cusps") {
    const LatticeData L = compute_invariants(1.0);
    // wp(p) = -eta1 makes A_0 a cusp of sigma_1; wp(p) = 2 pi / b - eta1 one of sigma_2
    const TorusPoint p1 = contour_preimage(-L.eta1, L);
    CHECK(cusp_test(p1, 0, 1, L));
    CHECK(!cusp_test(p1, 0, 2, L));
    const TorusPoint p2 = contour_preimage(L.two_pi_over_b - L.eta1, L);
    CHECK(cusp_test(p2, 0, 2, L));
    check::Gen g(12);
    for (int i = 0; i < 20; ++i) {
        const TorusPoint p(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
        if (half_period_index(p, 0.03) >= 0) continue;
        for (int k = 0; k < 4; ++k)
            for (int j = 1; j <= 3; ++j) CHECK(!cusp_test(p, k, j, L));
    }
    CHECK_THROWS_AS(cusp_test(TorusPoint(0.5, 0.0), 1, 1, L), PoleError);
}

TEST_CASE("large accessory parameter on the unbounded arcs of sigma_1") {
    const LatticeData L = compute_invariants(1.0);
    for (const TorusPoint p : {TorusPoint(0.3, 0.0), TorusPoint(0.12, 0.0)}) {
        const cplx pz = p.z(L);
        const cplx shift = (2.0 * pz * L.eta1 - zeta(2.0 * pz, L)) / 2.0;
        for (double t : {50.0, -50.0}) {
            const auto tri = discriminants(cplx(0.0, t) - shift, p, L);
            const bool band = std::abs(tri[0].imag()) < 1e-3 * std::abs(tri[0]);
            CHECK(band);
        }
    }
}

TEST_CASE("axis sweeps") {
    const LatticeData L = compute_invariants(1.0);
    const TorusPoint p(0.3, 0.0);
    const auto A = accessory_corners(p, L);
    const auto w = default_axis_window(p, Axis::real, L);
    for (const auto& a : A) {
        CHECK(w[0] < a.real());
        CHECK(a.real() < w[1]);
    }
    const auto sweep = sweep_axis(p, Axis::real, w[0], w[1], 401, L);
    CHECK(sweep.size() == 401);
    CHECK(sweep.front().t == w[0]);
    CHECK(sweep.back().t == w[1]);
    // sigma_2 changes exactly at the four corners
    const auto tr = membership_transitions(p, Axis::real, 2, false, sweep, L);
    REQUIRE(tr.size() == 4);
    std::vector<double> c{A[1].real(), A[3].real(), A[2].real(), A[0].real()};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(tr[i] - c[i]) < 1e-7);
    CHECK_THROWS_AS(sweep_axis(p, Axis::real, 1.0, 0.0, 10, L), DomainError);
}

TEST_CASE("common points of sigma_1 and sigma_2 on the axis") {
    const LatticeData L = compute_invariants(1.0);
    for (const auto& [p, ax] : {std::pair{TorusPoint(0.24, 0.0), Axis::real}, std::pair{TorusPoint(0.0, 0.26), Axis::imag}}) {
        const auto w = default_axis_window(p, ax, L);
        const auto sweep = sweep_axis(p, ax, w[0], w[1], 2001, L);
        const auto cp = axis_common_points(p, ax, sweep, L);
        REQUIRE(cp.size() == 1);
        const Census c = census(p, L);
        REQUIRE(c.nontrivial_pairs() == 1);
        for (const auto& x : c.points) {
            if (x.trivial) continue;
            const cplx A = accessory_from_critical(x.a, p, L);
            CHECK(std::abs(axis_coord(ax, A) - cp[0]) < 1e-6);
        }
    }
}
