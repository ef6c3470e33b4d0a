#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "eqc/chains.hpp"
#include "eqc/phi.hpp"

using namespace eqc;

namespace {

PhiTable make_table(int p, LiftRoute route) {
    return PhiTable(PhiOptions{p, route, /*check_max_total=*/6, /*solver_max_total=*/6});
}

bool is_vertex_power(const PhiEntry& e, int i, int p) {
    // e_i tensor (vertex 0)^p with unit coefficient.
    if (e.size() != 1) return false;
    const PhiTerm& t = e[0];
    if (t.c != 1 || t.a != 0 || (int)t.k != i) return false;
    for (int l = 0; l < p; ++l)
        if (t.m[l] != 1u) return false;
    return true;
}

}  // namespace

TEST_CASE("column j = 0 consists of W generators on the vertex") {
    for (int p : {2, 3}) {
        PhiTable tab = make_table(p, LiftRoute::ApexZero);
        for (int i = 0; i <= 4; ++i) CHECK(is_vertex_power(tab.entry(i, 0), i, p));
    }
}

TEST_CASE("row i = 0 is the iterated Alexander-Whitney diagonal") {
    for (int p : {2, 3}) {
        PhiTable tab = make_table(p, LiftRoute::ApexZero);
        for (int j = 0; j <= 3; ++j) {
            PhiEntry want;
            for (const MaskWord& w : aw_iterated_masks(j, p)) {
                PhiTerm t;
                t.c = 1;
                t.a = 0;
                t.k = 0;
                for (int l = 0; l < p; ++l) t.m[l] = w[l];
                want.push_back(t);
            }
            want = phi_normalize(std::move(want), PrimeField(p));
            CHECK(tab.entry(0, j) == want);
        }
    }
}

TEST_CASE("entries are homogeneous of total degree i + j") {
    for (int p : {2, 3}) {
        PhiTable tab = make_table(p, LiftRoute::ApexZero);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                for (const PhiTerm& t : tab.entry(i, j))
                    CHECK(phi_tensor_degree(t, p) + (int)t.k == i + j);
    }
}

TEST_CASE("defining recursion holds under every lift route") {
    for (int p : {2, 3}) {
        PrimeField f(p);
        for (LiftRoute r : {LiftRoute::ApexZero, LiftRoute::ApexTop, LiftRoute::Solver}) {
            PhiTable tab = make_table(p, r);
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j + i <= 5; ++j) {
                    PhiEntry lhs =
                        phi_normalize(phi_koszul_boundary(tab.entry(i, j), f, p), f);
                    PhiEntry rhs = phi_normalize(tab.rhs_of(i, j), f);
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("rhs of the recursion is a cycle") {
    PrimeField f(3);
    PhiTable tab = make_table(3, LiftRoute::ApexZero);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            PhiEntry rhs = tab.rhs_of(i, j);
            CHECK(phi_normalize(phi_koszul_boundary(rhs, f, 3), f).empty());
        }
}

TEST_CASE("alpha action rotates the last factor to the front") {
    PrimeField f(3);
    PhiTerm t;
    t.c = 1;
    t.a = 0;
    t.k = 0;
    t.m = {0b01u, 0b10u, 0b11u, 0, 0};  // degrees 0, 0, 1 on Delta[1]
    PhiEntry e{t};
    PhiEntry rot = phi_alpha(e, f, 3);
    REQUIRE(rot.size() == 1);
    CHECK(rot[0].a == 1);
    CHECK(rot[0].m[0] == 0b11u);
    CHECK(rot[0].m[1] == 0b01u);
    CHECK(rot[0].m[2] == 0b10u);
    // Rotating a degree-1 factor past two degree-0 factors needs no sign.
    CHECK(rot[0].c == 1);
    // p applications restore the term with alpha-power reset.
    PhiEntry full = phi_alpha(phi_alpha(rot, f, 3), f, 3);
    REQUIRE(full.size() == 1);
    CHECK(full[0].a == 0);
    CHECK(full[0].m == t.m);
    CHECK(full[0].c == 1);
}

TEST_CASE("w0_size counts the augmentation-degree slice") {
    PhiTable tab = make_table(3, LiftRoute::ApexZero);
    const PhiEntry& e = tab.entry(1, 1);
    size_t manual = 0;
    for (const PhiTerm& t : e)
        if (t.k == 0) ++manual;
    CHECK(PhiTable::w0_size(e) == manual);
    CHECK(manual > 0);
    // Sorted with the k = 0 slice first.
    for (size_t idx = 0; idx < e.size(); ++idx)
        CHECK((idx < manual) == (e[idx].k == 0));
}

TEST_CASE("disk cache round trip reproduces entries exactly") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "eqc-phi-cache-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("EQC_PHI_CACHE_DIR", dir.string().c_str(), 1);

    PhiEntry first, second;
    {
        PhiTable tab = make_table(3, LiftRoute::ApexZero);
        first = tab.entry(2, 2);
    }
    CHECK_FALSE(fs::is_empty(dir));
    {
        PhiTable tab = make_table(3, LiftRoute::ApexZero);
        second = tab.entry(2, 2);
    }
    unsetenv("EQC_PHI_CACHE_DIR");
    CHECK(first == second);

    // A table built with no cache agrees with the cached value.
    PhiTable fresh = make_table(3, LiftRoute::ApexZero);
    CHECK(fresh.entry(2, 2) == first);
    fs::remove_all(dir);
}
