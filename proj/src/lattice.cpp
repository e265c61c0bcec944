#include "torusgreen/lattice.hpp"

#include "series.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace torusgreen {

double LatticeData::e(int k) const {
    switch (k) {
    case 1: return e1;
    case 2: return e2;
    case 3: return e3;
    default: throw DomainError("e_k index must be 1, 2 or 3, got " + std::to_string(k));
    }
}

cplx LatticeData::half_period(int k) const {
    switch (k) {
    case 0: return {0.0, 0.0};
    case 1: return {0.5, 0.0};
    case 2: return tau / 2.0;
    case 3: return (1.0 + tau) / 2.0;
    default: throw DomainError("half-period index must be 0..3, got " + std::to_string(k));
    }
}

LatticeData compute_invariants(double b) {
    if (!std::isfinite(b) || b <= 0.0)
        throw DomainError("b must be finite and positive");
    if (b < 1e-3 || b > 1e3)
        throw DomainError("b outside the supported range [1e-3, 1e3]");

    LatticeData L;
    L.b = b;
    L.tau = cplx(0.0, b);
    L.nome_q = std::exp(-2.0 * pi * b);
    L.two_pi_over_b = 2.0 * pi / b;

    CoreFrame& f = L.core;
    f.rotated = b < 1.0;
    f.b_core = f.rotated ? 1.0 / b : b;
    f.scale = f.rotated ? L.tau : cplx(1.0, 0.0);
    f.nome_core = std::exp(-2.0 * pi * f.b_core);
    const double q = f.nome_core;
    f.eta1_core = pi * pi / 3.0 * (1.0 - 24.0 * detail::lambert_sum(q, 1));

    const double g2c = 4.0 * std::pow(pi, 4) / 3.0 * (1.0 + 240.0 * detail::lambert_sum(q, 3));
    const double g3c = 8.0 * std::pow(pi, 6) / 27.0 * (1.0 - 504.0 * detail::lambert_sum(q, 5));
    if (f.rotated) {
        // g2 has weight 4 and g3 weight 6 under z -> z / tau, with tau^4 = b^4, tau^6 = -b^6.
        L.g2 = g2c / std::pow(b, 4);
        L.g3 = -g3c / std::pow(b, 6);
    } else {
        L.g2 = g2c;
        L.g3 = g3c;
    }

    L.eta1 = 2.0 * zeta(cplx(0.5, 0.0), L).real();
    L.eta2 = cplx(0.0, (2.0 * zeta(L.tau / 2.0, L)).imag());
    L.e1 = wp(cplx(0.5, 0.0), L).real();
    L.e2 = wp(L.tau / 2.0, L).real();
    L.e3 = wp((1.0 + L.tau) / 2.0, L).real();
    return L;
}

double legendre_residual(const LatticeData& L) {
    return std::abs(L.tau * L.eta1 - L.eta2 - 2.0 * pi * I);
}

double cubic_residual(const LatticeData& L) {
    const double scale = std::max({std::abs(L.g2), std::abs(L.g3), 1.0});
    double res = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double e = L.e(k);
        res = std::max(res, std::abs(4.0 * e * e * e - L.g2 * e - L.g3));
    }
    const double s1 = L.e1 + L.e2 + L.e3;
    const double s2 = L.e1 * L.e2 + L.e2 * L.e3 + L.e3 * L.e1 + L.g2 / 4.0;
    const double s3 = L.e1 * L.e2 * L.e3 - L.g3 / 4.0;
    res = std::max({res, std::abs(s1), std::abs(s2), std::abs(s3)});
    return res / scale;
}

} // namespace torusgreen
