#ifndef HECKE_VERIFY_HPP
#define HECKE_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "hecke/config.hpp"

namespace hecke {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance-grade verification suites. Each returns one result per check;
// the CLI `verify` subcommand and the acceptance binary both run these.
std::vector<CheckResult> verify_symfunc_identities();
std::vector<CheckResult> verify_rank2_graph();            // three one-point curves, full family match
std::vector<CheckResult> verify_sum_rules(Session& s);    // configured curve and window
std::vector<CheckResult> verify_rank3_constants();        // q = 2, five structure constants
std::vector<CheckResult> verify_stable_theorem();
std::vector<CheckResult> verify_decomposable_theorem();
std::vector<CheckResult> verify_property_suites();
std::vector<CheckResult> verify_integrality();

// named standard configurations used by the suites
RunConfig one_point_curve_config(unsigned long q);
RunConfig three_point_curve_config(); // y^2 + y = x^3 over F_2

} // namespace hecke

#endif
