#pragma once

#include <functional>
#include <string>
#include <vector>

namespace torusgreen {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int acceptance_count = 12;

// Runs the listed criteria (all when empty) in order. Exceptions inside a criterion count as FAIL.
// on_done sees each result as soon as it is available.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

// "PASS  3  thresholds ...  (0.4 s)  detail"
std::string format_result(const CriterionResult& r);

} // namespace torusgreen
