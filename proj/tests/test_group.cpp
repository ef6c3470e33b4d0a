#include "doctest.h"

#include <algorithm>

#include "eqc/group.hpp"

using namespace eqc;

TEST_CASE("cyclic groups validate and invert") {
    for (int m : {1, 2, 3, 4, 6}) {
        FiniteGroup g = FiniteGroup::cyclic(m);
        CHECK(g.n == m);
        g.validate();
        for (int a = 0; a < m; ++a) {
            CHECK(g.mul(a, g.inv(a)) == 0);
            CHECK(g.mul(g.inv(a), a) == 0);
        }
    }
    FiniteGroup t = FiniteGroup::trivial();
    CHECK(t.n == 1);
    t.validate();
}

TEST_CASE("validate rejects a broken multiplication table") {
    FiniteGroup g = FiniteGroup::cyclic(3);
    g.mult[1 * 3 + 1] = 1;  // 1*1 = 1 breaks inverses/associativity
    CHECK_THROWS(g.validate());
}

TEST_CASE("subgroup lattice of small cyclic groups") {
    auto sizes = [](const FiniteGroup& g) {
        std::vector<int> out;
        for (const Subgroup& s : subgroups(g)) out.push_back((int)s.elems.size());
        return out;
    };
    CHECK(sizes(FiniteGroup::cyclic(2)) == std::vector<int>{1, 2});
    CHECK(sizes(FiniteGroup::cyclic(3)) == std::vector<int>{1, 3});
    CHECK(sizes(FiniteGroup::cyclic(6)) == std::vector<int>{1, 2, 3, 6});

    // Order: trivial first, full group last.
    auto subs = subgroups(FiniteGroup::cyclic(6));
    CHECK(subs.front().elems == std::vector<int>{0});
    CHECK((int)subs.back().elems.size() == 6);
}

TEST_CASE("orbit morphism counts for Z/2 and Z/3") {
    // For cyclic G of prime order q the orbit category of {1, G} has
    // q + 2 morphisms: q maps G/1 -> G/1, one G/1 -> G/G, one identity
    // of G/G, and none G/G -> G/1.
    for (int q : {2, 3}) {
        FiniteGroup g = FiniteGroup::cyclic(q);
        auto subs = subgroups(g);
        auto ms = orbit_morphisms(g, subs);
        CHECK((int)ms.size() == q + 2);
        int to_small = 0;
        for (const auto& m : ms) {
            CHECK(m.src <= m.dst);  // no maps from G/G to G/1
            if (m.src == 0 && m.dst == 0) ++to_small;
        }
        CHECK(to_small == q);
    }
}

TEST_CASE("morphism composition: identity laws and closure") {
    FiniteGroup g = FiniteGroup::cyclic(6);
    auto subs = subgroups(g);
    auto ms = orbit_morphisms(g, subs);

    auto find_id = [&](int h) {
        for (const auto& m : ms)
            if (m.src == h && m.dst == h && m.rep == 0) return m;
        FAIL("identity morphism missing");
        return OrbitMorphism{};
    };

    for (const auto& m : ms) {
        OrbitMorphism ids = find_id(m.src), idd = find_id(m.dst);
        CHECK(compose_morphisms(g, subs, ids, m) == m);
        CHECK(compose_morphisms(g, subs, m, idd) == m);
    }
    // Closure: every composable pair lands back in the enumerated list.
    for (const auto& a : ms)
        for (const auto& b : ms) {
            if (a.dst != b.src) continue;
            OrbitMorphism c = compose_morphisms(g, subs, a, b);
            CHECK(std::find(ms.begin(), ms.end(), c) != ms.end());
        }
}
