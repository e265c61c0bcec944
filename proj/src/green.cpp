#include "torusgreen/green.hpp"

#include "torusgreen/errors.hpp"
#include "torusgreen/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace torusgreen {

double green_value(const TorusPoint& z, const LatticeData& L) {
    const cplx zc = z.z(L);
    return -log_abs_gauged_sigma(zc, L) / (2.0 * pi) + zc.imag() * zc.imag() / (2.0 * L.b);
}

double green_p_value(const TorusPoint& z, const TorusPoint& p, const LatticeData& L) {
    return 0.5 * (green_value(z + p, L) + green_value(z - p, L));
}

cplx grad_G(const TorusPoint& z, const LatticeData& L) {
    return -(zeta(z.z(L), L) - z.r() * L.eta1 - z.s() * L.eta2) / (4.0 * pi);
}

namespace {

struct GpEval {
    cplx F;
    cplx S; // wp(a+p) + wp(a-p)
};

GpEval eval_Gp(double r, double s, cplx pz, const LatticeData& L) {
    const cplx a = r + s * L.tau;
    const WpZeta u = wp_zeta(a + pz, L);
    const WpZeta v = wp_zeta(a - pz, L);
    return {u.zeta + v.zeta - 2.0 * (r * L.eta1 + s * L.eta2), u.wp + v.wp};
}

double det_from_alpha(cplx alpha, const LatticeData& L) {
    const double pb = pi / L.b;
    return (pb * pb - std::norm(alpha - pb)) / (4.0 * pi * pi);
}

} // namespace

cplx grad_Gp(const TorusPoint& a, const TorusPoint& p, const LatticeData& L) {
    return eval_Gp(a.r(), a.s(), p.z(L), L).F;
}

double hessian_det_nontrivial(const TorusPoint& a, const TorusPoint& p, const LatticeData& L) {
    const GpEval e = eval_Gp(a.r(), a.s(), p.z(L), L);
    if (!(std::abs(e.F) < 1e-8)) throw DomainError("a is not a critical point of G_p");
    return det_from_alpha(e.S / 2.0 + L.eta1, L);
}

double hessian_det_halfperiod(int k, const TorusPoint& p, const LatticeData& L) {
    const cplx w = wp(p.z(L) - L.half_period(k), L);
    return det_from_alpha(w + L.eta1, L);
}

double hessian_scale(const LatticeData& L) { return 1.0 / (4.0 * L.b * L.b); }

const char* kind_name(CriticalKind k) {
    switch (k) {
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::extremum: return "extremum";
    case CriticalKind::degenerate: return "degenerate";
    }
    return "?";
}

int Census::nontrivial_pairs() const {
    int n = 0;
    for (const auto& c : points)
        if (!c.trivial) ++n;
    return n / 2;
}

int degree_sum(const std::vector<CriticalPoint>& pts) {
    int d = 0;
    for (const auto& c : pts) {
        if (c.kind == CriticalKind::degenerate) throw DomainError("degree of a degenerate critical point");
        d += c.degree;
    }
    return d;
}

namespace {

struct Root {
    double r;
    double s;
    double residual;
};

// Damped Newton on (r, s) for the real 2x2 system Re/Im F = 0.
std::optional<Root> newton_seed(double r, double s, const TorusPoint& p, cplx pz, const LatticeData& L) {
    const double guard = 1e-6;
    auto near_pole = [&](double rr, double ss) {
        const TorusPoint a(rr, ss);
        return same_point(a, p, guard) || same_point(a, -p, guard);
    };
    if (near_pole(r, s)) return std::nullopt;
    GpEval e;
    try {
        e = eval_Gp(r, s, pz, L);
    } catch (const PoleError&) {
        return std::nullopt;
    }
    double fnorm = std::abs(e.F);
    for (int it = 0; it < 80; ++it) {
        if (fnorm < 1e-13) break;
        const cplx Fr = -e.S - 2.0 * L.eta1;
        const cplx Fs = -e.S * L.tau - 2.0 * L.eta2;
        const double det = Fr.real() * Fs.imag() - Fs.real() * Fr.imag();
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        double dr = -(Fs.imag() * e.F.real() - Fs.real() * e.F.imag()) / det;
        double ds = -(-Fr.imag() * e.F.real() + Fr.real() * e.F.imag()) / det;
        const double len = std::max(std::abs(dr), std::abs(ds));
        if (len > 0.1) {
            dr *= 0.1 / len;
            ds *= 0.1 / len;
        }
        bool accepted = false;
        for (int h = 0; h <= 8; ++h) {
            const double rn = r + dr, sn = s + ds;
            if (!near_pole(rn, sn)) {
                try {
                    const GpEval en = eval_Gp(rn, sn, pz, L);
                    const double nn = std::abs(en.F);
                    if (nn < fnorm) {
                        r = wrap_half(rn);
                        s = wrap_half(sn);
                        e = eval_Gp(r, s, pz, L);
                        fnorm = std::abs(e.F);
                        accepted = true;
                        break;
                    }
                } catch (const PoleError&) {
                }
            }
            dr *= 0.5;
            ds *= 0.5;
        }
        if (!accepted) break;
        if (std::max(std::abs(dr), std::abs(ds)) < 1e-15) break;
    }
    return Root{r, s, fnorm};
}

struct Attempt {
    Census result;
    bool consistent = false;
};

Attempt run_census(const TorusPoint& p, const LatticeData& L, const CensusOptions& opt, int n) {
    const cplx pz = p.z(L);
    const double tol_deg = opt.tol_deg_factor * hessian_scale(L);

    std::vector<std::optional<Root>> found(static_cast<std::size_t>(n) * n);
    parallel_for(found.size(), worker_count(opt.threads), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / n, j = static_cast<int>(idx) % n;
        const double r0 = -0.5 + (i + 0.5) / n;
        const double s0 = -0.5 + (j + 0.5) / n;
        found[idx] = newton_seed(r0, s0, p, pz, L);
    });

    Attempt out;
    Census& c = out.result;
    c.grid_used = n;

    for (int k = 0; k < 4; ++k) {
        CriticalPoint cp;
        cp.a = half_period_point(k);
        cp.trivial = true;
        cp.half_index = k;
        cp.residual = std::abs(eval_Gp(cp.a.r(), cp.a.s(), pz, L).F);
        cp.hessian_det = hessian_det_halfperiod(k, p, L);
        c.points.push_back(cp);
    }

    auto known = [&](const TorusPoint& a) {
        for (const auto& q : c.points)
            if (same_point(q.a, a, opt.dedupe_tol)) return true;
        return false;
    };
    for (const auto& f : found) {
        if (!f || f->residual >= opt.residual_tol) continue;
        const TorusPoint a(f->r, f->s);
        if (half_period_index(a, 1e-5) >= 0) continue;
        if (known(a)) continue;
        for (const TorusPoint& x : {a, -a}) {
            if (known(x)) continue;
            CriticalPoint cp;
            cp.a = x;
            cp.residual = std::abs(eval_Gp(x.r(), x.s(), pz, L).F);
            cp.hessian_det = hessian_det_nontrivial(x, p, L);
            c.points.push_back(cp);
        }
    }

    bool degenerate = false;
    for (auto& cp : c.points) {
        if (std::abs(cp.hessian_det) < tol_deg) {
            cp.kind = CriticalKind::degenerate;
            cp.degree = 0;
            degenerate = true;
        } else if (cp.hessian_det < 0.0) {
            cp.kind = CriticalKind::saddle;
            cp.degree = -1;
        } else {
            cp.kind = CriticalKind::extremum;
            cp.degree = 1;
        }
    }
    std::sort(c.points.begin(), c.points.end(), [](const CriticalPoint& x, const CriticalPoint& y) {
        return x.a.r() != y.a.r() ? x.a.r() < y.a.r() : x.a.s() < y.a.s();
    });
    // degenerate records carry degree 0 and drop out of the sum
    c.degree_sum = 0;
    for (const auto& cp : c.points) c.degree_sum += cp.degree;
    c.status = degenerate ? CensusStatus::degenerate : CensusStatus::complete;
    const int sz = c.size();
    const bool size_ok = sz == 4 || sz == 6 || sz == 8 || sz == 10;
    out.consistent = degenerate || (c.degree_sum == -2 && size_ok);
    return out;
}

} // namespace

Census census(const TorusPoint& p, const LatticeData& L, const CensusOptions& opt) {
    if (opt.grid_n < 2) throw DomainError("census grid must be at least 2");
    if (half_period_index(p, pole_guard) >= 0)
        throw DomainError("p must not be a half period");
    Attempt a = run_census(p, L, opt, opt.grid_n);
    if (!a.consistent && opt.refine) a = run_census(p, L, opt, 2 * opt.grid_n);
    if (!a.consistent)
        throw CensusIncomplete("critical point census inconsistent: " + std::to_string(a.result.size()) +
                               " points, degree sum " + std::to_string(a.result.degree_sum));
    return a.result;
}

} // namespace torusgreen
