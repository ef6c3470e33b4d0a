#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "eqc/bredon.hpp"
#include "eqc/fixtures.hpp"
#include "eqc/problem.hpp"

using namespace eqc;

namespace {

ProblemFile from_fixture(const std::string& name, int trunc) {
    Fixture fx = make_fixture(name, trunc);
    ProblemFile pf;
    pf.name = fx.name;
    pf.p = fx.p;
    pf.nerve = fx.nerve;
    pf.x = fx.ctx->x;
    pf.orbit = fx.ctx->orbit;
    pf.sys = fx.ctx->sys;
    return pf;
}

OrderedJson builder_doc() {
    OrderedJson j;
    j["schema"] = kProblemSchema;
    j["p"] = 3;
    j["space"] = {{"builder", "nerve"}, {"order", 3}, {"truncation", 4}};
    j["coefficients"] = {{"builder", "constant"}};
    return j;
}

}  // namespace

TEST_CASE("builder documents parse into working contexts") {
    ProblemFile pf = parse_problem(builder_doc());
    CHECK(pf.from_builders);
    auto ctx = make_context(pf);
    EqModel model(*ctx, DiffKind::Orbit);
    CHECK(model.betti(3) == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("builder documents support actions and twisted coefficients") {
    OrderedJson j;
    j["schema"] = kProblemSchema;
    j["p"] = 3;
    OrderedJson g;
    g["mult"] = {{0, 1}, {1, 0}};
    j["group"] = g;
    j["space"] = {{"builder", "nerve"},
                  {"order", 3},
                  {"truncation", 4},
                  {"automorphisms", {{0, 1, 2}, {0, 2, 1}}}};
    j["coefficients"] = {{"builder", "inversion"}};
    ProblemFile pf = parse_problem(j);
    auto ctx = make_context(pf);
    CHECK(ctx->nsubs() == 2);
    CHECK(validate_coefficients(ctx->x, ctx->orbit, ctx->sys).empty());
}

TEST_CASE("normalize round trip: emit, parse, emit is byte-stable") {
    for (const char* name : {"bz3", "f27", "z2-twisted", "bz2"}) {
        ProblemFile pf = from_fixture(name, 3);
        OrderedJson once = emit_problem(pf);
        ProblemFile back = parse_problem(once);
        CHECK_FALSE(back.from_builders);
        OrderedJson twice = emit_problem(back);
        CHECK(dump_report(once) == dump_report(twice));

        // The round-tripped problem computes the same cohomology.
        auto c1 = make_context(pf);
        auto c2 = make_context(back);
        EqModel m1(*c1, DiffKind::Orbit), m2(*c2, DiffKind::Orbit);
        CHECK(m1.betti(2) == m2.betti(2));
    }
}

TEST_CASE("report serialization is deterministic with a trailing newline") {
    OrderedJson rep;
    rep["schema"] = kReportSchema;
    rep["command"] = "test";
    rep["rows"] = {1, 2, 3};
    std::string a = dump_report(rep);
    std::string b = dump_report(rep);
    CHECK(a == b);
    REQUIRE_FALSE(a.empty());
    CHECK(a.back() == '\n');
    // Key order is insertion order, not alphabetical.
    CHECK(a.find("schema") < a.find("command"));
    CHECK(a.find("command") < a.find("rows"));
}

TEST_CASE("schema violations carry JSON paths") {
    auto expect_schema = [](OrderedJson j, const char* needle) {
        try {
            parse_problem(j);
            FAIL_CHECK("expected a schema error mentioning " << needle);
        } catch (const ProblemSchemaError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    OrderedJson j = builder_doc();
    j.erase("p");
    expect_schema(j, "missing field 'p'");

    j = builder_doc();
    j["schema"] = "something-else";
    expect_schema(j, "$.schema");

    j = builder_doc();
    j["space"]["builder"] = "moebius";
    expect_schema(j, "unknown builder");

    j = builder_doc();
    j["space"]["truncation"] = -2;
    expect_schema(j, "$.space.truncation");
}

TEST_CASE("validation failures are distinguished from schema failures") {
    // A prime that is not prime.
    OrderedJson j = builder_doc();
    j["p"] = 9;
    CHECK_THROWS_AS((void)parse_problem(j), ProblemValidationError);

    // Multi-vertex spaces violate the one-vertex requirement.
    j = builder_doc();
    j["space"] = {{"builder", "standard_simplex"}, {"n", 2}};
    CHECK_THROWS_AS((void)parse_problem(j), ProblemValidationError);

    // A corrupted explicit transfer matrix fails the coefficient validator.
    ProblemFile pf = from_fixture("z2-twisted", 3);
    OrderedJson doc = emit_problem(pf);
    bool corrupted = false;
    for (auto& tr : doc["coefficients"]["transfers"]) {
        // Make some transfer non-unital.
        if (!tr.empty()) {
            tr[0] = (tr[0].get<int>() + 1) % 3;
            corrupted = true;
            break;
        }
    }
    REQUIRE(corrupted);
    CHECK_THROWS_AS((void)parse_problem(doc), ProblemValidationError);

    // A broken group multiplication table.
    doc = emit_problem(pf);
    doc["group"]["mult"][1][1] = 1;
    CHECK_THROWS_AS((void)parse_problem(doc), ProblemValidationError);
}

TEST_CASE("load_problem distinguishes unreadable, unparsable and invalid files") {
    CHECK_THROWS_AS((void)load_problem("/nonexistent/path.json"), ProblemSyntaxError);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "eqc-problem-io-test";
    fs::create_directories(dir);
    auto at = [&](const char* f) { return (dir / f).string(); };

    std::ofstream(at("bad-syntax.json")) << "{ not json";
    CHECK_THROWS_AS((void)load_problem(at("bad-syntax.json")), ProblemSyntaxError);

    std::ofstream(at("bad-schema.json")) << "{\"schema\": \"eqcohom-problem-v1\"}";
    CHECK_THROWS_AS((void)load_problem(at("bad-schema.json")), ProblemSchemaError);

    OrderedJson good = emit_problem(from_fixture("bz3", 3));
    std::ofstream(at("good.json")) << good.dump(2) << "\n";
    ProblemFile pf = load_problem(at("good.json"));
    auto ctx = make_context(pf);
    EqModel model(*ctx, DiffKind::Orbit);
    CHECK(model.betti(2) == std::vector<int>{1, 1, 1});
    fs::remove_all(dir);
}
