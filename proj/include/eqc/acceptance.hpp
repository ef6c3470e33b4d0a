#pragma once

// The acceptance suite: one entry per advertised guarantee, each reported as
// a single PASS/FAIL line with check counts, honest skip notes for anything
// outside the trusted truncation range, and a wall-clock budget.  Used by
// both the dedicated test binary and the CLI `selftest` command.

#include <iosfwd>
#include <string>
#include <vector>

#include "eqc/phi.hpp"

namespace eqc {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    bool gating = true;  // criterion 9 (p = 2) is informative only
    int checked = 0;
    int skipped = 0;
    double seconds = 0.0;
    double budget = 0.0;  // seconds; 0 = no budget
    std::vector<std::string> notes;
};

struct AcceptanceOptions {
    int deep_truncation = 14;
    unsigned seed = 20260825;
    // Base route for criteria 1-6, 8, 9; criterion 7 always compares all
    // three lift routes against this one.
    LiftRoute route = LiftRoute::ApexZero;
    bool skip_deep = false;  // drop the truncation-14 fixture (quick mode)
};

// Runs every criterion in order, streaming one result line per criterion to
// `log` as it completes.  Returns all results; overall success is the
// conjunction of the gating results.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream& log);

bool all_gating_passed(const std::vector<CriterionResult>& rs);
std::string format_result_line(const CriterionResult& r);

}  // namespace eqc
