#include "doctest.h"

#include "eqc/simplicial.hpp"

using namespace eqc;

TEST_CASE("degeneracy words stay in canonical decreasing form") {
    SimplexInstance v{0, 0, {}};
    SimplexInstance s0 = apply_degeneracy(v, 0);
    CHECK(s0.word == std::vector<int>{0});
    // s_0 s_0 = s_1 s_0 in canonical form.
    SimplexInstance s00 = apply_degeneracy(s0, 0);
    CHECK(s00.word == std::vector<int>{1, 0});
    CHECK(s00.dim() == 2);

    // s_2 s_0 is already canonical; s_0 then s_1 normalizes to it.
    SimplexInstance e{1, 0, {}};
    SimplexInstance a = apply_degeneracy(apply_degeneracy(e, 1), 0);
    SimplexInstance b = apply_degeneracy(apply_degeneracy(e, 0), 2);
    CHECK(a.word == b.word);
}

TEST_CASE("standard simplex: counts, faces and subset indexing") {
    PresentedSimplicialSet d3 = standard_simplex(3);
    CHECK(d3.top_dim() == 3);
    CHECK(d3.count(0) == 4);
    CHECK(d3.count(1) == 6);
    CHECK(d3.count(2) == 4);
    CHECK(d3.count(3) == 1);
    d3.validate();

    // The i-th face of the top simplex drops vertex i.
    for (int i = 0; i <= 3; ++i) {
        const SimplexInstance& f = d3.face(3, 0, i);
        CHECK_FALSE(f.degenerate());
        uint32_t want = 0xFu & ~(1u << i);
        CHECK(simplex_subset_mask(3, 2, f.base) == want);
    }

    // face_subset keeps exactly the selected vertices.
    SimplexInstance top{3, 0, {}};
    SimplexInstance f = d3.face_subset(top, 0b1011u);
    CHECK(f.dim() == 2);
    CHECK(simplex_subset_mask(3, 2, f.base) == 0b1011u);
    CHECK(simplex_subset_index(3, simplex_subset_mask(3, 2, f.base)) == f.base);
}

TEST_CASE("nerve of Z/3: counts, tuples and face formulas") {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), 4);
    nv.space.validate();
    for (int n = 0; n <= 4; ++n) CHECK(nv.space.count(n) == (n == 0 ? 1 : 1 << n));

    // Tuple indexing round trip.
    for (int idx = 0; idx < nv.space.count(3); ++idx)
        CHECK(nv.index_of(nv.tuple_of(3, idx)) == idx);

    // d_0 drops the first entry, d_n the last, inner faces multiply.
    std::vector<int> t{1, 1};
    int idx = nv.index_of(t);
    const FiniteGroup& g = nv.gamma;
    auto face_tuple = [&](int i) {
        const SimplexInstance& f = nv.space.face(2, idx, i);
        REQUIRE_FALSE(f.degenerate());
        return nv.tuple_of(1, f.base);
    };
    CHECK(face_tuple(0) == std::vector<int>{1});
    CHECK(face_tuple(1) == std::vector<int>{g.mul(1, 1)});
    CHECK(face_tuple(2) == std::vector<int>{1});

    // The middle face of (g, g^{-1}) passes through the identity, hence is
    // degenerate.
    std::vector<int> w{1, 2};
    REQUIRE(g.mul(1, 2) == 0);
    CHECK(nv.space.face(2, nv.index_of(w), 1).degenerate());
}

TEST_CASE("one-vertex validation rejects multi-vertex spaces") {
    GSimplicialSet bad = with_trivial_action(standard_simplex(2), FiniteGroup::trivial());
    CHECK_THROWS(bad.validate());

    GSimplicialSet good = with_trivial_action(build_nerve(FiniteGroup::cyclic(3), 3).space,
                                              FiniteGroup::trivial());
    good.validate();
}

TEST_CASE("inversion action on the nerve of Z/3") {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), 4);
    GSimplicialSet x = nerve_with_action(nv, FiniteGroup::cyclic(2),
                                         {{0, 1, 2}, {0, 2, 1}});
    x.validate();

    // The involution inverts every tuple entry.
    std::vector<int> t{1, 2, 1};
    int moved = x.act(1, 3, nv.index_of(t));
    CHECK(nv.tuple_of(3, moved) == std::vector<int>{2, 1, 2});

    // Automorphism check: a non-homomorphism permutation is rejected.
    CHECK_THROWS((void)nerve_with_action(nv, FiniteGroup::cyclic(2),
                                         {{0, 1, 2}, {1, 0, 2}}));
}

TEST_CASE("fixed points of the inversion action") {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), 4);
    GSimplicialSet x = nerve_with_action(nv, FiniteGroup::cyclic(2),
                                         {{0, 1, 2}, {0, 2, 1}});
    auto subs = subgroups(x.group);
    REQUIRE(subs.size() == 2);

    FixedPointSet triv = fixed_points(x, subs[0]);
    FixedPointSet full = fixed_points(x, subs[1]);
    for (int n = 0; n <= 4; ++n) CHECK(triv.count(n) == x.space.count(n));
    // Only the vertex survives inversion: no tuple over {g, g^2} is
    // entrywise fixed by g <-> g^2.
    CHECK(full.count(0) == 1);
    for (int n = 1; n <= 4; ++n) CHECK(full.count(n) == 0);

    PresentedSimplicialSet sub = materialize(x, full);
    CHECK(sub.top_dim() == 4);
    CHECK(sub.count(0) == 1);
    CHECK(sub.count(1) == 0);
}
