#pragma once

#include "torusgreen/disks.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/green.hpp"
#include "torusgreen/lattice.hpp"

#include <string>
#include <vector>

namespace torusgreen {

// wp(p) for the p whose G_p has a critical point at a = r + s tau:
// wp(a) + wp'(a) / (2 (zeta(a) - r eta1 - s eta2)). (r, s) must avoid (1/2 Z)^2.
cplx hitchin_wp(double r, double s, const LatticeData& L);

// A = (zeta(p+a) + zeta(p-a) - zeta(2p)) / 2 for a nontrivial critical point a of G_p.
// Checks that the monodromy data (r(A), s(A)) comes out real and off (1/2 Z)^2.
cplx accessory_from_critical(const TorusPoint& a, const TorusPoint& p, const LatticeData& L, double tol = 1e-8);

enum class SurveyRegion { interior_I, interior_II, boundary };
const char* survey_region_name(SurveyRegion r);

struct HitchinSample {
    double r = 0.0;
    double s = 0.0;
    cplx wp;
    SurveyRegion region = SurveyRegion::interior_I;
    bool ok = true;
    std::string note;
};

// n x n interior grids of (0,1/2)^2 and (-1/2,0) x (0,1/2), plus n points on each boundary edge.
std::vector<HitchinSample> sign_survey(const LatticeData& L, int n);

struct DegenerateSample {
    // "hitchin": wp(p) from the Hitchin formula on the grid; "hitchin_edge": same formula at
    // points between grid nodes of different regions; "direct": p on a grid
    std::string source;
    double r = 0.0;
    double s = 0.0;
    cplx wp_p;
    TorusPoint p;
    Region region = Region::Xi5;
    int census_size = 0;
    double min_abs_hessian = 0.0; // over the nontrivial points; +inf when there are none
    bool ok = true;
    std::string note;
};

// Candidates for degenerate critical points, most degenerate first.
// The uniform grids are nested: refining grid_n -> 2 grid_n keeps every earlier grid sample.
// Edges between grid nodes of different regions are walked at 1/32 steps to catch thin regions.
std::vector<DegenerateSample> degenerate_scan(const LatticeData& L, int grid_n, const CensusOptions& opt = {});

} // namespace torusgreen
