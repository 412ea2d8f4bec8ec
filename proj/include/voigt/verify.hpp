#pragma once

#include <string>
#include <vector>

namespace voigt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Built-in property suites behind `voigt verify`. Suites: "spectral"
/// (transform and projector identities), "conservation" (alpha-energy and
/// Euler energy equalities), "shear" (exact steady state), "convergence"
/// (alpha-convergence order and RK4 order). An empty name runs all.
std::vector<CheckResult> run_verify_suite(const std::string& suite);

const std::vector<std::string>& verify_suite_names();

}  // namespace voigt
