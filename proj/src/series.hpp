#pragma once

// Nome series on the core lattice Z + i b_core Z, b_core >= 1.

#include "torusgreen/elliptic.hpp"
#include "torusgreen/lattice.hpp"

namespace torusgreen::detail {

// Lambert sum  sum_{n>=1} n^k q^n / (1 - q^n).
double lambert_sum(double q, int k);

// wp, wp', zeta of the core lattice at an arbitrary representative zc.
WpZeta core_eval(cplx zc, const CoreFrame& f);

// log |sigma| of the core lattice.
double core_log_abs_sigma(cplx zc, const CoreFrame& f);

} // namespace torusgreen::detail
