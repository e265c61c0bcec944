#include "torusgreen/elliptic.hpp"

#include "series.hpp"
#include "torusgreen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace torusgreen {

double wrap_half(double x) { return x - std::floor(x + 0.5) + 0.0; }

TorusPoint::TorusPoint(double r, double s) : r_(wrap_half(r)), s_(wrap_half(s)) {}

TorusPoint TorusPoint::from_complex(cplx z, const LatticeData& L) {
    return {z.real(), z.imag() / L.b};
}

double wrapped_distance(const TorusPoint& a, const TorusPoint& b) {
    return std::hypot(wrap_half(a.r() - b.r()), wrap_half(a.s() - b.s()));
}

bool same_point(const TorusPoint& a, const TorusPoint& b, double tol) {
    return wrapped_distance(a, b) < tol;
}

TorusPoint half_period_point(int k) {
    switch (k) {
    case 0: return {0.0, 0.0};
    case 1: return {0.5, 0.0};
    case 2: return {0.0, 0.5};
    case 3: return {0.5, 0.5};
    default: throw DomainError("half-period index must be 0..3");
    }
}

int half_period_index(const TorusPoint& p, double tol) {
    for (int k = 0; k < 4; ++k)
        if (same_point(p, half_period_point(k), tol)) return k;
    return -1;
}

WpZeta wp_zeta(cplx z, const LatticeData& L) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("non-finite argument");
    if (same_point(TorusPoint::from_complex(z, L), TorusPoint(0.0, 0.0), pole_guard))
        throw PoleError("argument within the pole guard of the lattice");
    const CoreFrame& f = L.core;
    WpZeta v = detail::core_eval(z / f.scale, f);
    if (f.rotated) {
        const cplx t = f.scale;
        v.wp /= t * t;
        v.wp_prime /= t * t * t;
        v.zeta /= t;
    }
    return v;
}

cplx wp(cplx z, const LatticeData& L) { return wp_zeta(z, L).wp; }
cplx wp_prime(cplx z, const LatticeData& L) { return wp_zeta(z, L).wp_prime; }
cplx zeta(cplx z, const LatticeData& L) { return wp_zeta(z, L).zeta; }

cplx wp_second(cplx z, const LatticeData& L) {
    const cplx w = wp(z, L);
    return 6.0 * w * w - L.g2 / 2.0;
}

cplx wp(const TorusPoint& p, const LatticeData& L) { return wp(p.z(L), L); }
cplx wp_prime(const TorusPoint& p, const LatticeData& L) { return wp_prime(p.z(L), L); }
cplx wp_second(const TorusPoint& p, const LatticeData& L) { return wp_second(p.z(L), L); }
cplx zeta(const TorusPoint& p, const LatticeData& L) { return zeta(p.z(L), L); }

double log_abs_gauged_sigma(cplx z, const LatticeData& L) {
    if (same_point(TorusPoint::from_complex(z, L), TorusPoint(0.0, 0.0), pole_guard))
        throw PoleError("argument within the pole guard of the lattice");
    const CoreFrame& f = L.core;
    double ls = detail::core_log_abs_sigma(z / f.scale, f);
    if (f.rotated) ls += std::log(L.b);
    return ls - std::real(L.eta1 * z * z / 2.0);
}

const char* segment_name(Segment s) {
    switch (s) {
    case Segment::zero_half: return "seg_0_half";
    case Segment::half_corner: return "seg_half_corner";
    case Segment::corner_tauhalf: return "seg_corner_tauhalf";
    case Segment::tauhalf_zero: return "seg_tauhalf_0";
    }
    return "?";
}

namespace {

struct EdgeParam {
    cplx origin;
    cplx dir;
    double t_lo;
    double t_hi;
    bool increasing;
};

EdgeParam edge(Segment seg, const LatticeData& L) {
    const double t_min = 2.0 * pole_guard;
    switch (seg) {
    case Segment::zero_half: return {0.0, 1.0, t_min, 0.5, false};
    case Segment::half_corner: return {0.5, L.tau, 0.0, 0.5, false};
    case Segment::corner_tauhalf: return {L.tau / 2.0, 1.0, 0.0, 0.5, true};
    case Segment::tauhalf_zero: return {0.0, L.tau, t_min, 0.5, true};
    }
    throw DomainError("unknown segment");
}

} // namespace

TorusPoint inverse_wp_real(double c, Segment seg, const LatticeData& L) {
    if (!std::isfinite(c)) throw DomainError("non-finite target value");
    const EdgeParam e = edge(seg, L);
    auto f = [&](double t) { return wp(e.origin + t * e.dir, L).real() - c; };

    double flo = f(e.t_lo);
    double fhi = f(e.t_hi);
    const double tol = 1e-12 * std::max(1.0, std::abs(c));
    const bool pole_end = seg == Segment::zero_half || seg == Segment::tauhalf_zero;
    // Image is [min(flo,fhi), max(flo,fhi)] shifted by c.
    const double lo_val = std::min(flo, fhi);
    const double hi_val = std::max(flo, fhi);
    if (lo_val > tol || hi_val < -tol) {
        if (pole_end && ((seg == Segment::zero_half && lo_val < 0.0) ||
                         (seg == Segment::tauhalf_zero && hi_val > 0.0)))
            throw PoleError("preimage falls inside the pole guard");
        throw RangeError(std::string("value outside the image of ") + segment_name(seg));
    }
    if (std::abs(flo) <= tol && !pole_end) return TorusPoint::from_complex(e.origin + e.t_lo * e.dir, L);
    if (std::abs(fhi) <= tol) return TorusPoint::from_complex(e.origin + e.t_hi * e.dir, L);

    double a = e.t_lo, bnd = e.t_hi;
    double fa = flo;
    for (int it = 0; it < 200 && bnd - a > 1e-16; ++it) {
        const double m = 0.5 * (a + bnd);
        const double fm = f(m);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            bnd = m;
        }
    }
    double t = 0.5 * (a + bnd);
    for (int it = 0; it < 3; ++it) {
        const cplx z = e.origin + t * e.dir;
        const WpZeta v = wp_zeta(z, L);
        const double d = (v.wp_prime * e.dir).real();
        if (d == 0.0) break;
        const double tn = t - (v.wp.real() - c) / d;
        if (!(tn >= e.t_lo && tn <= e.t_hi)) break;
        if (std::abs(f(tn)) > std::abs(f(t))) break;
        t = tn;
    }
    return TorusPoint::from_complex(e.origin + t * e.dir, L);
}

Segment segment_for_value(double c, const LatticeData& L) {
    if (c > L.e1) return Segment::zero_half;
    if (c >= L.e3) return Segment::half_corner;
    if (c >= L.e2) return Segment::corner_tauhalf;
    return Segment::tauhalf_zero;
}

TorusPoint contour_preimage(double c, const LatticeData& L) {
    return inverse_wp_real(c, segment_for_value(c, L), L);
}

TorusPoint wp_preimage(cplx w, const LatticeData& L) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw DomainError("non-finite target value");
    const double scale = std::max(1.0, std::abs(w));
    if (std::abs(w.imag()) <= 1e-14 * scale) return contour_preimage(w.real(), L);

    struct Seed {
        double err;
        cplx z;
    };
    std::vector<Seed> seeds;
    const int nr = 32, ns = 16;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j <= ns; ++j) {
            const double r = -0.5 + (i + 0.5) / nr;
            const double s = 0.5 * j / ns;
            if (std::hypot(r, s) < 1e-3) continue;
            const cplx z = r + s * L.tau;
            seeds.push_back({std::abs(wp(z, L) - w), z});
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.err < y.err; });

    const int tries = std::min<int>(8, static_cast<int>(seeds.size()));
    for (int k = 0; k < tries; ++k) {
        cplx z = seeds[k].z;
        for (int it = 0; it < 80; ++it) {
            WpZeta v;
            try {
                v = wp_zeta(z, L);
            } catch (const PoleError&) {
                break;
            }
            const cplx err = v.wp - w;
            if (std::abs(err) < 1e-13 * scale) {
                TorusPoint p = TorusPoint::from_complex(z, L);
                if (p.s() < 0.0) p = -p;
                return p;
            }
            if (v.wp_prime == 0.0) break;
            cplx step = err / v.wp_prime;
            const double cap = 0.1 * std::min(1.0, L.b);
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            z -= step;
        }
    }
    throw ConvergenceError("no preimage of the given wp value found");
}

} // namespace torusgreen
