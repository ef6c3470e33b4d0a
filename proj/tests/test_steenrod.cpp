#include "doctest.h"

#include <random>

#include "eqc/fixtures.hpp"
#include "eqc/steenrod.hpp"

using namespace eqc;

namespace {

bool is_zero(const FpVec& v) {
    for (uint8_t e : v)
        if (e) return false;
    return true;
}

PhiTable table_for(int p) {
    return PhiTable(PhiOptions{p, LiftRoute::ApexZero, 6, 6});
}

}  // namespace

TEST_CASE("normalization scalars match hand computations") {
    PrimeField f3(3), f5(5);
    // p = 3, m = 1: scalar = (-1)^{s + q(q+1)/2}.
    CHECK(power_scalar(f3, 1, 0) == 2);  // r = 1
    CHECK(power_scalar(f3, 2, 1) == 1);  // r = 4
    CHECK(power_scalar(f3, 3, 1) == 2);  // r = 7
    CHECK(power_scalar(f3, 4, 2) == 1);  // r = 12
    // p = 5, m = 2: (m!)^q = 2^q times (-1)^{s + 2 q(q+1)/2}.
    CHECK(power_scalar(f5, 1, 0) == 2);  // (+1) * 2
    CHECK(power_scalar(f5, 2, 0) == 4);  // r = 6 even, 2^2
    // p = 2 has no scalar.
    PrimeField f2(2);
    CHECK(power_scalar(f2, 3, 1) == 1);
}

TEST_CASE("index bookkeeping for the table-driven operations") {
    Fixture fx = make_fixture("bz3", 5);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(*fx.ctx, tab);
    // P^s on degree q lands in q + 2s(p-1); beta adds one.
    CHECK(eng.target_degree(0, 1, false) == 1);
    CHECK(eng.target_degree(1, 2, false) == 6);
    CHECK(eng.target_degree(1, 2, true) == 7);
    // d-index: (q - 2s)(p - 1) - [beta].
    CHECK(eng.d_index(0, 1, false) == 2);
    CHECK(eng.d_index(1, 2, false) == 0);
    CHECK(eng.d_index(0, 2, true) == 3);
    CHECK(eng.d_index(2, 2, false) == -4);
}

TEST_CASE("P^0 is the identity on classes of the classifying space") {
    Fixture fx = make_fixture("bz3", 5);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(ctx, tab);
    for (int q = 1; q <= 1; ++q) {
        FpVec rep = model.rep_of(q, FpVec{1});
        TwistedCochain u = mu(ctx, {q, rep});
        TwistedCochain pu = eng.power(0, u);
        FpVec back = mu_inv(ctx, pu).v;
        CHECK(model.classes_equal(q, rep, back));
    }
}

TEST_CASE("P^1 on the degree-2 generator is its third cup power") {
    Fixture fx = make_fixture("bz3", 7);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(ctx, tab);

    FpVec y = model.rep_of(2, FpVec{1});
    TwistedCochain u = mu(ctx, {2, y});
    TwistedCochain pu = eng.power(1, u);
    REQUIRE(pu.degree == 6);

    EquivariantCochain y2 = bi_cup(ctx, {2, y}, {2, y});
    EquivariantCochain y3 = bi_cup(ctx, y2, {2, y});
    CHECK(model.classes_equal(6, mu_inv(ctx, pu).v, y3.v));
}

TEST_CASE("Bockstein relations: beta P^0 kills the image of the Bockstein") {
    Fixture fx = make_fixture("bz3", 5);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(ctx, tab);

    // y = beta x in degree 2, so beta P^0 y = beta y = 0.
    FpVec y = model.rep_of(2, FpVec{1});
    TwistedCochain bu = eng.beta_power(0, mu(ctx, {2, y}));
    REQUIRE(bu.degree == 3);
    FpVec cls = model.class_of(3, mu_inv(ctx, bu).v);
    CHECK(cls == FpVec{0});

    // On the degree-1 generator, beta P^0 x = y generates H^2.
    FpVec x = model.rep_of(1, FpVec{1});
    TwistedCochain bx = eng.beta_power(0, mu(ctx, {1, x}));
    REQUIRE(bx.degree == 2);
    CHECK_FALSE(model.class_of(2, mu_inv(ctx, bx).v) == FpVec{0});
}

TEST_CASE("structural zeros return sized zero cochains in range") {
    Fixture fx = make_fixture("bz3", 5);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(ctx, tab);
    std::mt19937 rng(43);

    FpVec x = model.rep_of(1, FpVec{1});
    TwistedCochain u = mu(ctx, {1, x});

    // Negative index: d_op is zero by convention, with a value table as long
    // as the target degree survives the truncation.
    TwistedCochain z = eng.d_op(-1, u);
    REQUIRE(z.degree == 4);
    REQUIRE((int)z.v.size() == ctx.raw_dim(4));
    CHECK(is_zero(z.v));

    // 2s > q at p = 3 forces a negative index.
    TwistedCochain p1 = eng.power(1, u);
    CHECK(is_zero(p1.v));
    (void)rng;
}

TEST_CASE("serial and parallel operation kernels agree byte for byte") {
    Fixture fx = make_fixture("z2-twisted", 5);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    PhiTable tab = table_for(3);
    SteenrodEngine eng(ctx, tab);

    FpVec rep;
    int q = 0;
    for (int n = 1; n <= 2 && rep.empty(); ++n)
        if (model.presentation(n).dim > 0) {
            FpVec c(model.presentation(n).dim, 0);
            c[0] = 1;
            rep = model.rep_of(n, c);
            q = n;
        }
    REQUIRE_FALSE(rep.empty());
    TwistedCochain u = mu(ctx, {q, rep});
    for (int i = 0; i <= 3 * q; ++i) {
        int n = 3 * q - i;
        if (n + 1 > ctx.top_dim()) continue;
        TwistedCochain a = eng.d_op(i, u, /*verify=*/false, /*parallel=*/false);
        TwistedCochain b = eng.d_op(i, u, /*verify=*/false, /*parallel=*/true);
        CHECK(a.v == b.v);
    }
}

TEST_CASE("mod-2 squares on the classifying space of Z/2") {
    Fixture fx = make_fixture("bz2", 4);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    CHECK(model.betti(3) == std::vector<int>{1, 1, 1, 1});

    PhiTable tab = table_for(2);
    SteenrodEngine eng(ctx, tab);
    FpVec x = model.rep_of(1, FpVec{1});
    TwistedCochain u = mu(ctx, {1, x});

    // Sq^0 = id, Sq^1 x = x^2, Sq^i x = 0 above the degree.
    CHECK(model.classes_equal(1, mu_inv(ctx, eng.power(0, u)).v, x));
    EquivariantCochain xx = bi_cup(ctx, {1, x}, {1, x});
    CHECK(model.classes_equal(2, mu_inv(ctx, eng.power(1, u)).v, xx.v));
    TwistedCochain hi = eng.power(2, u);
    CHECK(is_zero(hi.v));
}
