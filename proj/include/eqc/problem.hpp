#pragma once

// Problem-file I/O and report serialization.
//
// A problem file is a JSON document describing the prime, the acting group,
// the G-simplicial set (explicit face tables or a builder directive), and
// the coefficient system (explicit tables or a builder directive).  See
// README.md for the full schema.  Parsing is deterministic; emitting a
// parsed problem in explicit form and re-parsing it reproduces the same
// problem exactly.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqc/coeff.hpp"
#include "eqc/simplicial.hpp"

namespace eqc {

using OrderedJson = nlohmann::ordered_json;

// JSON that is not valid JSON at all.
struct ProblemSyntaxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// JSON that does not match the problem schema (missing/ill-typed fields,
// out-of-range indices, unknown builders).  Messages carry a JSON path.
struct ProblemSchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Structurally well-formed input whose mathematical content fails a
// consistency check (group axioms, simplicial identities, coefficient
// axioms).
struct ProblemValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    std::string name;  // optional label, "" when absent
    int p = 3;
    // Kept when the space came from a nerve builder, enabling nerve-aware
    // coefficient builders and precise reporting.
    std::optional<NerveData> nerve;
    GSimplicialSet x;
    OrbitStructure orbit;
    CoefficientSystem sys;
    bool from_builders = false;
};

// Parse / load.  Throws one of the three error classes above.  The returned
// problem is fully materialized (orbit structure built, builders resolved)
// and has passed all validators.
ProblemFile parse_problem(const OrderedJson& j);
ProblemFile load_problem(const std::string& path);

// Canonical explicit (builder-free) JSON form.  parse_problem(emit_problem(p))
// reproduces p exactly, and emission is byte-deterministic.
OrderedJson emit_problem(const ProblemFile& pf);

// Fresh evaluation context for a parsed problem.
std::unique_ptr<EqContext> make_context(const ProblemFile& pf);

// Canonical report serialization: stable key order (callers build
// nlohmann::ordered_json), two-space indent, trailing newline.  Identical
// report objects serialize to identical bytes.
std::string dump_report(const OrderedJson& report);

inline constexpr const char* kProblemSchema = "eqcohom-problem-v1";
inline constexpr const char* kReportSchema = "eqcohom-report-v1";

}  // namespace eqc
