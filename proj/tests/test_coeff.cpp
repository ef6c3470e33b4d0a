#include "doctest.h"

#include "eqc/coeff.hpp"
#include "eqc/fixtures.hpp"

using namespace eqc;

namespace {

struct Setup {
    GSimplicialSet x;
    OrbitStructure orbit;
};

Setup inversion_setup(int trunc) {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), trunc);
    GSimplicialSet x = nerve_with_action(nv, FiniteGroup::cyclic(2), {{0, 1, 2}, {0, 2, 1}});
    OrbitStructure orbit = OrbitStructure::build(x);
    return {std::move(x), std::move(orbit)};
}

}  // namespace

TEST_CASE("constant system validates; corrupted tables are reported") {
    Setup s = inversion_setup(3);
    CoefficientSystem sys = constant_system(s.x, s.orbit, 3);
    CHECK(validate_coefficients(s.x, s.orbit, sys).empty());

    SUBCASE("broken transfer") {
        // Send 1 to 2 along some non-identity morphism: no longer unital.
        for (size_t m = 0; m < sys.transfer.size(); ++m)
            if ((int)m != s.orbit.id_morphism[s.orbit.morphisms[m].src]) {
                sys.transfer[m].at(0, 0) = 2;
                break;
            }
        CHECK_FALSE(validate_coefficients(s.x, s.orbit, sys).empty());
    }
    SUBCASE("broken edge action") {
        REQUIRE_FALSE(sys.edge_action[0].empty());
        sys.edge_action[0][0].at(0, 0) = 2;  // not unital
        sys.cache_inverses();
        CHECK_FALSE(validate_coefficients(s.x, s.orbit, sys).empty());
    }
}

TEST_CASE("Galois coefficient system on the nerve of Z/3") {
    Fixture fx = make_fixture("f27", 4);
    const EqContext& ctx = *fx.ctx;
    CHECK(validate_coefficients(ctx.x, ctx.orbit, ctx.sys).empty());

    // One subgroup (trivial group acting), algebra of dimension 3.
    REQUIRE(ctx.nsubs() == 1);
    const CoefficientAlgebra& alg = ctx.sys.alg[0];
    REQUIRE(alg.dim == 3);
    PrimeField f(3);

    // Basis 1, t, t^2 with t^3 = t + 1.
    FpVec t{0, 1, 0}, t2{0, 0, 1};
    CHECK(alg.mul(t, t, f) == t2);
    CHECK(alg.mul(t, t2, f) == FpVec{1, 1, 0});
    // Associativity on a spot check: t^2 * t^2 = t * (t + 1) = t^2 + t.
    CHECK(alg.mul(t2, t2, f) == FpVec{0, 1, 1});

    // The edge labelled by the generator acts by the Frobenius x -> x^3:
    // fixes 1, sends t to t + 1.
    REQUIRE(fx.nerve.has_value());
    int edge = fx.nerve->index_of({1});
    const Matrix& frob = ctx.psi(0, edge);
    CHECK(matvec(frob, FpVec{1, 0, 0}) == FpVec{1, 0, 0});
    CHECK(matvec(frob, t) == FpVec{1, 1, 0});
    // The edge of the squared generator acts by Frobenius squared.
    int edge2 = fx.nerve->index_of({2});
    CHECK(ctx.psi(0, edge2) == matmul(frob, frob));

    // Cached inverses really invert.
    CHECK(matmul(ctx.psi(0, edge), ctx.psi_inv(0, edge)) == Matrix::identity(3, 3));
}

TEST_CASE("twisted inversion system on the Z/2 action") {
    Setup s = inversion_setup(4);
    CoefficientSystem sys = inversion_system(s.x, s.orbit);
    CHECK(validate_coefficients(s.x, s.orbit, sys).empty());

    PrimeField f(3);
    // Free level: truncated polynomials on u, u^3 = 0.
    const CoefficientAlgebra& alg = sys.alg[0];
    REQUIRE(alg.dim == 3);
    FpVec u{0, 1, 0}, u2{0, 0, 1};
    CHECK(alg.mul(u, u, f) == u2);
    CHECK(alg.mul(u, u2, f) == FpVec{0, 0, 0});

    // Monodromy u -> u + u^2 along some edge; it must be an algebra map.
    bool found_nontrivial = false;
    for (const Matrix& m : sys.edge_action[0])
        if (!(m == Matrix::identity(3, 3))) found_nontrivial = true;
    CHECK(found_nontrivial);
}

TEST_CASE("cochain layout: slots, offsets and value windows") {
    Fixture fx = make_fixture("z2-twisted", 4);
    const EqContext& ctx = *fx.ctx;
    for (int n = 0; n <= ctx.top_dim(); ++n) {
        int total = 0;
        for (int h = 0; h < ctx.nsubs(); ++h)
            total += ctx.orbit.fps[h].count(n) * ctx.adim(h);
        CHECK(ctx.raw_dim(n) == total);
    }
    // value() reads back exactly what slot() addresses.
    FpVec raw(ctx.raw_dim(1), 0);
    if (ctx.orbit.fps[0].count(1) > 0) {
        raw[ctx.slot(0, 1, 0, 1)] = 2;
        FpVec v = ctx.value(raw, 0, 1, 0);
        REQUIRE((int)v.size() == ctx.adim(0));
        CHECK(v[1] == 2);
    }
}
