#include "series.hpp"

#include <cmath>

namespace torusgreen::detail {

namespace {

// Integer shift that brings x into [-1/2, 1/2]; points already on the edge stay put.
double edge_round(double x) {
    if (std::abs(x) <= 0.5) return 0.0;
    return std::floor(x + 0.5);
}

bool small(cplx term, cplx acc) {
    return std::abs(term) <= series_rel_tol * (std::abs(acc) + 1e-300);
}

} // namespace

double lambert_sum(double q, int k) {
    double acc = 0.0;
    double qn = 1.0;
    for (int n = 1; n <= series_max_terms; ++n) {
        qn *= q;
        const double term = std::pow(static_cast<double>(n), k) * qn / (1.0 - qn);
        acc += term;
        if (term <= series_rel_tol * std::abs(acc)) break;
    }
    return acc;
}

WpZeta core_eval(cplx zc, const CoreFrame& f) {
    const double bc = f.b_core;
    const cplx tc(0.0, bc);
    const double eta1 = f.eta1_core;
    const cplx eta2 = tc * eta1 - 2.0 * pi * I;

    const double m = edge_round(zc.real());
    const double n = edge_round(zc.imag() / bc);
    const cplx z0 = zc - m - n * tc;

    // n = 0 term. Far from the real axis sin overflows, so go through exp there.
    cplx cot0, csc2_0;
    if (std::abs(z0.imag()) > 1.0) {
        const double sg = z0.imag() > 0.0 ? 1.0 : -1.0;
        const cplx u = std::exp(sg * 2.0 * pi * I * z0);
        cot0 = -sg * I * (1.0 + u) / (1.0 - u);
        csc2_0 = -4.0 * u / ((1.0 - u) * (1.0 - u));
    } else {
        const cplx sn = std::sin(pi * z0);
        cot0 = std::cos(pi * z0) / sn;
        csc2_0 = 1.0 / (sn * sn);
    }

    cplx sum_csc2 = csc2_0;
    cplx sum_csc2cot = csc2_0 * cot0;
    cplx sum_cot = cot0;

    for (int k = 1; k <= series_max_terms; ++k) {
        // z0 + k tau lies in the upper half plane, z0 - k tau in the lower one.
        const cplx u = std::exp(2.0 * pi * I * (z0 + double(k) * tc));
        const cplx v = std::exp(-2.0 * pi * I * (z0 - double(k) * tc));
        const cplx cotp = -I * (1.0 + u) / (1.0 - u);
        const cplx cotm = I * (1.0 + v) / (1.0 - v);
        const cplx csc2p = -4.0 * u / ((1.0 - u) * (1.0 - u));
        const cplx csc2m = -4.0 * v / ((1.0 - v) * (1.0 - v));
        // cotp + cotm without the +-i cancellation.
        const cplx dcot = -2.0 * I * u / (1.0 - u) + 2.0 * I * v / (1.0 - v);
        const cplx t1 = csc2p + csc2m;
        const cplx t2 = csc2p * cotp + csc2m * cotm;
        sum_csc2 += t1;
        sum_csc2cot += t2;
        sum_cot += dcot;
        if (small(t1, sum_csc2) && small(t2, sum_csc2cot) && small(dcot, sum_cot)) break;
    }

    WpZeta out;
    out.wp = -eta1 + pi * pi * sum_csc2;
    out.wp_prime = -2.0 * pi * pi * pi * sum_csc2cot;
    out.zeta = eta1 * z0 + pi * sum_cot + m * eta1 + n * eta2;
    return out;
}

double core_log_abs_sigma(cplx zc, const CoreFrame& f) {
    const double bc = f.b_core;
    const cplx tc(0.0, bc);
    const double eta1 = f.eta1_core;
    const cplx eta2 = tc * eta1 - 2.0 * pi * I;

    const double m = edge_round(zc.real());
    const double n = edge_round(zc.imag() / bc);
    const cplx w = m + n * tc;
    const cplx z0 = zc - w;

    const double q = f.nome_core;
    const cplx e = std::exp(2.0 * pi * I * z0);
    const cplx einv = std::exp(-2.0 * pi * I * z0);
    // log|sin(pi z0)| = pi |Im z0| - log 2 + log|1 - exp(2 pi i z0 sign)|, safe for large Im z0
    const double sg = z0.imag() >= 0.0 ? 1.0 : -1.0;
    const double log_sin = pi * std::abs(z0.imag()) - std::log(2.0)
                           + std::log(std::abs(1.0 - std::exp(sg * 2.0 * pi * I * z0)));
    double acc = std::real(eta1 * z0 * z0 / 2.0) + log_sin - std::log(pi);
    double qn = 1.0;
    for (int k = 1; k <= series_max_terms; ++k) {
        qn *= q;
        const cplx x1 = qn * e;
        const cplx x2 = qn * einv;
        const double t = 0.5 * std::log1p(std::norm(x1) - 2.0 * x1.real())
                         + 0.5 * std::log1p(std::norm(x2) - 2.0 * x2.real())
                         - 2.0 * std::log1p(-qn);
        acc += t;
        if (std::abs(t) <= series_rel_tol * (std::abs(acc) + 1e-300)) break;
    }
    // sigma(z0 + w) = +-sigma(z0) exp(eta_w (z0 + w/2)).
    const cplx eta_w = m * eta1 + n * eta2;
    return acc + std::real(eta_w * (z0 + w / 2.0));
}

} // namespace torusgreen::detail
