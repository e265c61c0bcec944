#include "torusgreen/hitchin.hpp"

#include "torusgreen/errors.hpp"
#include "torusgreen/gle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace torusgreen {

namespace {

bool on_half_grid(double x) { return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12; }

} // namespace

cplx hitchin_wp(double r, double s, const LatticeData& L) {
    if (!std::isfinite(r) || !std::isfinite(s)) throw DomainError("non-finite (r, s)");
    if (on_half_grid(r) && on_half_grid(s)) throw DomainError("(r, s) must avoid (1/2 Z)^2");
    const cplx a = r + s * L.tau;
    const WpZeta v = wp_zeta(a, L);
    const cplx den = v.zeta - r * L.eta1 - s * L.eta2;
    if (std::abs(den) <= 1e-12) throw PoleError("Hitchin denominator vanishes");
    return v.wp + v.wp_prime / (2.0 * den);
}

cplx accessory_from_critical(const TorusPoint& a, const TorusPoint& p, const LatticeData& L, double tol) {
    const cplx pz = p.z(L), az = a.z(L);
    const cplx A = 0.5 * (zeta(pz + az, L) + zeta(pz - az, L) - zeta(2.0 * pz, L));
    const Correspondence c = correspondence_at(az, p, L);
    if (std::abs(c.r.imag()) > tol || std::abs(c.s.imag()) > tol)
        throw InconsistencyError("monodromy data of a critical point is not real");
    if (on_half_grid(c.r.real()) && on_half_grid(c.s.real()))
        throw InconsistencyError("critical point maps to a half period");
    return A;
}

const char* survey_region_name(SurveyRegion r) {
    switch (r) {
    case SurveyRegion::interior_I: return "interior_I";
    case SurveyRegion::interior_II: return "interior_II";
    case SurveyRegion::boundary: return "boundary_I_II";
    }
    return "?";
}

std::vector<HitchinSample> sign_survey(const LatticeData& L, int n) {
    if (n < 2) throw DomainError("survey size must be at least 2");
    std::vector<HitchinSample> out;
    auto add = [&](double r, double s, SurveyRegion reg) {
        HitchinSample h;
        h.r = r;
        h.s = s;
        h.region = reg;
        try {
            h.wp = hitchin_wp(r, s, L);
        } catch (const std::exception& e) {
            h.ok = false;
            h.note = e.what();
        }
        out.push_back(h);
    };
    std::vector<double> t;
    for (int i = 1; i <= n; ++i) t.push_back(0.5 * i / (n + 1));
    for (double r : t)
        for (double s : t) add(r, s, SurveyRegion::interior_I);
    for (double r : t)
        for (double s : t) add(-r, s, SurveyRegion::interior_II);
    for (double x : t) {
        add(x, 0.0, SurveyRegion::boundary);
        add(-x, 0.0, SurveyRegion::boundary);
        add(x, 0.5, SurveyRegion::boundary);
        add(-x, 0.5, SurveyRegion::boundary);
        add(0.0, x, SurveyRegion::boundary);
        add(0.5, x, SurveyRegion::boundary);
        add(-0.5, x, SurveyRegion::boundary);
    }
    return out;
}

namespace {

void fill_census(DegenerateSample& d, const LatticeData& L, const CensusOptions& opt) {
    const Census c = census(d.p, L, opt);
    d.census_size = c.size();
    double m = std::numeric_limits<double>::infinity();
    for (const auto& cp : c.points)
        if (!cp.trivial) m = std::min(m, std::abs(cp.hessian_det));
    d.min_abs_hessian = m;
}

} // namespace

std::vector<DegenerateSample> degenerate_scan(const LatticeData& L, int grid_n, const CensusOptions& opt) {
    if (grid_n < 8) throw DomainError("scan grid must be at least 8");
    std::vector<DegenerateSample> out;
    const double h = 0.5 / grid_n;

    auto finish = [&](DegenerateSample& d) {
        try {
            d.region = classify_region(d.wp_p, L);
            fill_census(d, L, opt);
        } catch (const std::exception& e) {
            d.ok = false;
            d.note = e.what();
        }
        out.push_back(d);
    };

    auto hitchin_sample = [&](double r, double s, const char* src) {
        DegenerateSample d;
        d.source = src;
        d.r = r;
        d.s = s;
        try {
            d.wp_p = hitchin_wp(d.r, d.s, L);
            d.p = wp_preimage(d.wp_p, L);
        } catch (const std::exception& e) {
            d.ok = false;
            d.note = e.what();
            out.push_back(d);
            return;
        }
        finish(d);
    };

    // Region of the Hitchin image at each grid node; excluded marks nodes that failed.
    std::vector<Region> node((grid_n + 1) * (grid_n + 1), Region::excluded);
    auto at = [&](int i, int j) -> Region& { return node[i * (grid_n + 1) + j]; };
    for (int i = 1; i < grid_n; ++i) {
        for (int j = 1; j < grid_n; ++j) {
            hitchin_sample(i * h, j * h, "hitchin");
            if (out.back().ok) at(i, j) = out.back().region;
        }
    }

    // The preimages of the regions between neighbouring disks are thin strips that a
    // uniform grid steps over. Walk each grid edge whose ends land in different regions
    // and keep the points that fall into a third one.
    constexpr int edge_steps = 32;
    for (int i = 1; i < grid_n; ++i) {
        for (int j = 1; j < grid_n; ++j) {
            for (int dir = 0; dir < 2; ++dir) {
                const int i2 = i + (dir == 0), j2 = j + (dir == 1);
                if (i2 >= grid_n || j2 >= grid_n) continue;
                const Region r0 = at(i, j), r1 = at(i2, j2);
                if (r0 == r1 || r0 == Region::excluded || r1 == Region::excluded) continue;
                for (int k = 1; k < edge_steps; ++k) {
                    const double t = static_cast<double>(k) / edge_steps;
                    const double r = (i + (dir == 0) * t) * h, s = (j + (dir == 1) * t) * h;
                    Region g;
                    try {
                        g = classify_region(hitchin_wp(r, s, L), L);
                    } catch (const std::exception&) {
                        continue;
                    }
                    if (g != r0 && g != r1 && g != Region::boundary && g != Region::excluded)
                        hitchin_sample(r, s, "hitchin_edge");
                }
            }
        }
    }
    for (int i = -(grid_n - 1); i < grid_n; ++i) {
        for (int j = 1; j < grid_n; ++j) {
            DegenerateSample d;
            d.source = "direct";
            d.r = i * h;
            d.s = j * h;
            d.p = TorusPoint(d.r, d.s);
            d.wp_p = wp(d.p, L);
            finish(d);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const DegenerateSample& x, const DegenerateSample& y) {
        if (x.ok != y.ok) return x.ok;
        if (x.min_abs_hessian != y.min_abs_hessian) return x.min_abs_hessian < y.min_abs_hessian;
        return x.r != y.r ? x.r < y.r : x.s < y.s;
    });
    return out;
}

} // namespace torusgreen
