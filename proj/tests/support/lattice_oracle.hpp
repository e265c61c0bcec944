#pragma once

// Direct lattice sums over |m|, |n| <= N for several N, extrapolated in 1/N.
// Independent of the nome series used by the library.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

struct Sums {
    cplx wp;
    cplx zeta;
    cplx g2;
    cplx g3;
};

// Shell-by-shell partial sums at truncation levels in `levels` (increasing).
inline std::vector<Sums> partial_sums(cplx z, double b, const std::vector<int>& levels) {
    const cplx tau(0.0, b);
    std::vector<Sums> out;
    Sums acc{1.0 / (z * z), 1.0 / z, 0.0, 0.0};
    auto add = [&](int m, int n) {
        const cplx w = double(m) + double(n) * tau;
        const cplx w2 = w * w;
        const cplx d = z - w;
        acc.wp += 1.0 / (d * d) - 1.0 / w2;
        acc.zeta += 1.0 / d + 1.0 / w + z / w2;
        acc.g2 += 60.0 / (w2 * w2);
        acc.g3 += 140.0 / (w2 * w2 * w2);
    };
    int done = 0;
    for (int N : levels) {
        for (int k = done + 1; k <= N; ++k) {
            for (int m = -k; m <= k; ++m) {
                add(m, k);
                add(m, -k);
            }
            for (int n = -k + 1; n <= k - 1; ++n) {
                add(k, n);
                add(-k, n);
            }
        }
        done = N;
        out.push_back(acc);
    }
    return out;
}

// Fit S(N) = S + sum_{j=2}^{J} c_j N^{-j} through the levels and return S.
inline cplx extrapolate(const std::vector<int>& levels, const std::vector<cplx>& vals) {
    const int k = static_cast<int>(levels.size());
    Eigen::MatrixXcd A(k, k);
    Eigen::VectorXcd y(k);
    for (int i = 0; i < k; ++i) {
        A(i, 0) = 1.0;
        for (int j = 1; j < k; ++j) A(i, j) = std::pow(double(levels[i]), -double(j + 1));
        y(i) = vals[i];
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(y);
    return c(0);
}

inline Sums lattice_values(cplx z, double b) {
    const std::vector<int> levels{50, 100, 150, 200, 300, 400};
    const auto ps = partial_sums(z, b, levels);
    std::vector<cplx> wp, ze, g2, g3;
    for (const auto& s : ps) {
        wp.push_back(s.wp);
        ze.push_back(s.zeta);
        g2.push_back(s.g2);
        g3.push_back(s.g3);
    }
    return {extrapolate(levels, wp), extrapolate(levels, ze), extrapolate(levels, g2), extrapolate(levels, g3)};
}

} // namespace oracle
