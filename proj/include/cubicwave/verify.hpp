#pragma once

#include <string>
#include <vector>

#include "cubicwave/operators.hpp"

namespace cubicwave {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measure = 0.0; ///< the quantity compared against the tolerance
    double tolerance = 0.0;
};

/// Exact-identity suites: coordinate transforms, family identities, operator
/// identities on a small grid.  Deterministic given the seed.
std::vector<CheckResult> run_verify_suites(std::uint64_t seed, int n_r = 24, int n_z = 12);

bool all_pass(const std::vector<CheckResult>& results);

} // namespace cubicwave
