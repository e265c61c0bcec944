#include "doctest.h"

#include "support/check.hpp"
#include "torusgreen/disks.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/errors.hpp"
#include "torusgreen/green.hpp"

#include <cmath>

using namespace torusgreen;
using check::rel;

namespace {

double G_at(cplx z, const LatticeData& L) { return green_value(TorusPoint::from_complex(z, L), L); }

double Gp_at(cplx z, const TorusPoint& p, const LatticeData& L) {
    return green_p_value(TorusPoint::from_complex(z, L), p, L);
}

// det of the Euclidean Hessian by central differences.
double fd_hessian_det(cplx z, const TorusPoint& p, const LatticeData& L, double h = 1e-4) {
    auto f = [&](double dx, double dy) { return Gp_at(z + cplx(dx, dy), p, L); };
    const double f0 = f(0, 0);
    const double fxx = (f(h, 0) - 2 * f0 + f(-h, 0)) / (h * h);
    const double fyy = (f(0, h) - 2 * f0 + f(0, -h)) / (h * h);
    const double fxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    return fxx * fyy - fxy * fxy;
}

} // namespace

TEST_CASE("gradient of G against finite differences") {
    for (double b : {1.0, 0.6, 2.2}) {
        const LatticeData L = compute_invariants(b);
        for (cplx z : {cplx(0.3, 0.1), cplx(-0.21, 0.37 * b), cplx(0.44, -0.12 * b)}) {
            const double h = 1e-5;
            const double gx = (G_at(z + h, L) - G_at(z - h, L)) / (2 * h);
            const double gy = (G_at(z + cplx(0, h), L) - G_at(z - cplx(0, h), L)) / (2 * h);
            const cplx fd = 0.5 * cplx(gx, -gy);
            CHECK(std::abs(grad_G(TorusPoint::from_complex(z, L), L) - fd) < 1e-6);
        }
    }
}

TEST_CASE("G is even, conjugation invariant and periodic") {
    const LatticeData L = compute_invariants(1.3);
    check::Gen g(3);
    for (int i = 0; i < 30; ++i) {
        const TorusPoint z(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5));
        if (wrapped_distance(z, TorusPoint(0, 0)) < 0.02) continue;
        CHECK(std::abs(green_value(z, L) - green_value(-z, L)) < 1e-10);
        CHECK(std::abs(green_value(z, L) - green_value(TorusPoint(z.r(), -z.s()), L)) < 1e-10);
        const cplx zc = z.z(L);
        CHECK(std::abs(G_at(zc, L) - G_at(zc + 1.0 + L.tau, L)) < 1e-10);
        const cplx g1 = grad_G(z, L), g2 = grad_G(TorusPoint(z.r() + 1.0, z.s()), L);
        CHECK(std::abs(g1 - g2) < 1e-12);
    }
}

TEST_CASE("half periods are critical points of G and G_p") {
    for (double b : {0.7, 1.0, 1.5}) {
        const LatticeData L = compute_invariants(b);
        for (int k = 1; k <= 3; ++k) CHECK(std::abs(grad_G(half_period_point(k), L)) < 1e-12);
        for (const TorusPoint p : {TorusPoint(0.13, 0.29), TorusPoint(-0.4, 0.05)})
            for (int k = 0; k < 4; ++k) CHECK(std::abs(grad_Gp(half_period_point(k), p, L)) < 1e-11);
    }
    CHECK_THROWS_AS(grad_Gp(TorusPoint(0.2, 0.1), TorusPoint(0.2, 0.1), compute_invariants(1.0)), PoleError);
}

TEST_CASE("stated nontrivial critical points") {
    const LatticeData L13 = compute_invariants(1.3), L08 = compute_invariants(0.8);
    CHECK(std::abs(grad_Gp(TorusPoint(0.25, 0.5), TorusPoint(0.25, 0.0), L13)) < 1e-11);
    CHECK(std::abs(grad_Gp(TorusPoint(0.5, 0.25), TorusPoint(0.0, 0.25), L08)) < 1e-11);

    const LatticeData L = compute_invariants(1.0);
    const double d1 = hessian_det_nontrivial(TorusPoint(0.25, 0.5), TorusPoint(0.25, 0.0), L);
    const double d2 = hessian_det_nontrivial(TorusPoint(0.5, 0.25), TorusPoint(0.0, 0.25), L);
    CHECK(d1 < 0.0);
    CHECK(d2 < 0.0);
    CHECK_THROWS_AS(hessian_det_nontrivial(TorusPoint(0.1, 0.2), TorusPoint(0.25, 0.0), L), DomainError);
}

TEST_CASE("Hessian formulas against finite differences") {
    for (double b : {1.0, 1.7}) {
        CAPTURE(b);
        const LatticeData L = compute_invariants(b);
        const TorusPoint p(0.25, 0.0), a(0.25, 0.5);
        const double fd = fd_hessian_det(a.z(L), p, L);
        CHECK(std::abs(hessian_det_nontrivial(a, p, L) - fd) < 1e-5 * std::abs(fd));

        const TorusPoint q(0.17, 0.23);
        for (int k = 0; k < 4; ++k) {
            CAPTURE(k);
            const double h = hessian_det_halfperiod(k, q, L);
            const double f = fd_hessian_det(L.half_period(k), q, L);
            CHECK(std::abs(h - f) < 1e-5 * std::max(std::abs(f), hessian_scale(L)));
        }
    }
    CHECK_THROWS_AS(hessian_det_halfperiod(1, TorusPoint(0.5, 0.0), compute_invariants(1.0)), PoleError);
}

TEST_CASE("half-period Hessian vanishes on the two critical levels") {
    const LatticeData L = compute_invariants(1.0);
    // wp(p - omega_k/2) + eta1 = 0 at k = 0 means wp(p) = -eta1
    const TorusPoint p = contour_preimage(-L.eta1, L);
    CHECK(std::abs(hessian_det_halfperiod(0, p, L)) < 1e-12);
    const TorusPoint q = contour_preimage(L.two_pi_over_b - L.eta1, L);
    CHECK(std::abs(hessian_det_halfperiod(0, q, L)) < 1e-12);
}

TEST_CASE("census at p = 1/4") {
    const LatticeData L = compute_invariants(1.0);
    const TorusPoint p(0.25, 0.0);
    const Census c = census(p, L);
    REQUIRE(c.size() == 6);
    CHECK(c.status == CensusStatus::complete);
    CHECK(c.degree_sum == -2);
    CHECK(c.nontrivial_pairs() == 1);
    int trivial = 0;
    for (const auto& cp : c.points) {
        CHECK(cp.residual < 1e-10);
        CHECK(cp.kind != CriticalKind::degenerate);
        CHECK(std::abs(cp.degree) == 1);
        if (cp.trivial) {
            ++trivial;
            CHECK(cp.half_index >= 0);
            CHECK(cp.hessian_det == doctest::Approx(hessian_det_halfperiod(cp.half_index, p, L)));
        } else {
            CHECK(std::min(wrapped_distance(cp.a, TorusPoint(0.25, 0.5)),
                           wrapped_distance(cp.a, TorusPoint(-0.25, 0.5))) < 1e-9);
            CHECK(cp.kind == CriticalKind::saddle);
        }
    }
    CHECK(trivial == 4);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const auto& x = c.points[i - 1].a;
        const auto& y = c.points[i].a;
        CHECK((x.r() < y.r() || (x.r() == y.r() && x.s() < y.s())));
    }
    // all four half-period values nonzero, signs adding up with the pair to -2
    int sum = 0;
    for (int k = 0; k < 4; ++k) {
        const double h = hessian_det_halfperiod(k, p, L);
        CHECK(h != 0.0);
        sum += h > 0 ? 1 : -1;
    }
    CHECK(sum - 2 == -2);
}

TEST_CASE("census with no nontrivial points") {
    const LatticeData L = compute_invariants(1.0);
    const RegionThresholds t = thresholds(L);
    // (d2, e2) lies below e2, so its preimage sits on the edge from tau/2 to 0
    const double w = 0.5 * (t.d[1] + L.e2);
    const TorusPoint p = inverse_wp_real(w, Segment::tauhalf_zero, L);
    const Census c = census(p, L);
    CHECK(c.size() == 4);
    CHECK(c.degree_sum == -2);
    CHECK(c.nontrivial_pairs() == 0);
}

TEST_CASE("census with three nontrivial pairs") {
    const Census c = census(TorusPoint(0.25, 0.25), compute_invariants(3.0));
    CHECK(c.size() == 10);
    CHECK(c.degree_sum == -2);
    CHECK(c.nontrivial_pairs() == 3);
}

TEST_CASE("census preconditions and options") {
    const LatticeData L = compute_invariants(1.0);
    CHECK_THROWS_AS(census(TorusPoint(0.5, 0.5), L), DomainError);
    CHECK_THROWS_AS(census(TorusPoint(0.0, 0.0), L), DomainError);
    CensusOptions opt;
    opt.grid_n = 24;
    opt.threads = 1;
    const Census c = census(TorusPoint(0.0, 0.25), L, opt);
    CHECK(c.size() == 6);
    CHECK(c.grid_used >= 24);
}

TEST_CASE("degree sum of synthetic records") {
    std::vector<CriticalPoint> pts(4);
    pts[0].degree = 1;
    pts[1].degree = 1;
    pts[2].degree = -1;
    pts[3].degree = -1;
    CHECK(degree_sum(pts) == 0);
    pts[0].kind = CriticalKind::degenerate;
    CHECK_THROWS_AS(degree_sum(pts), DomainError);
}

TEST_CASE("kind names") {
    CHECK(std::string(kind_name(CriticalKind::saddle)) == "saddle");
    CHECK(std::string(kind_name(CriticalKind::extremum)) == "extremum");
    CHECK(std::string(kind_name(CriticalKind::degenerate)) == "degenerate");
}
