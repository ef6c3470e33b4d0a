// Acceptance gate: runs every advertised guarantee and prints one PASS/FAIL
// line per criterion. Exit status reflects the gating criteria only.

#include <cstring>
#include <iostream>

#include "eqc/acceptance.hpp"

int main(int argc, char** argv) {
    eqc::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--skip-deep") == 0) opt.skip_deep = true;
        if (std::strcmp(argv[i], "--route-apexN") == 0)
            opt.route = eqc::LiftRoute::ApexTop;
        if (std::strcmp(argv[i], "--route-solver") == 0)
            opt.route = eqc::LiftRoute::Solver;
    }
    std::vector<eqc::CriterionResult> rs = eqc::run_acceptance(opt, std::cout);
    const bool ok = eqc::all_gating_passed(rs);
    std::cout << (ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
    return ok ? 0 : 1;
}
