#include "doctest.h"

#include <random>

#include "eqc/bredon.hpp"
#include "eqc/fixtures.hpp"

using namespace eqc;

namespace {

bool is_zero(const FpVec& v) {
    for (uint8_t e : v)
        if (e) return false;
    return true;
}

}  // namespace

TEST_CASE("Bredon cohomology of the classifying space of Z/3") {
    Fixture fx = make_fixture("bz3", 5);
    EqModel model(*fx.ctx, DiffKind::Orbit);
    CHECK(model.max_degree() == 4);
    CHECK(model.betti(4) == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("Galois coefficients are cohomologically trivial above degree zero") {
    Fixture fx = make_fixture("f27", 4);
    EqModel model(*fx.ctx, DiffKind::Orbit);
    CHECK(model.betti(3) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("coboundary squares to zero and preserves compatibility") {
    std::mt19937 rng(7);
    for (const char* name : {"z2-const", "z2-twisted"}) {
        Fixture fx = make_fixture(name, 4);
        for (DiffKind kind : {DiffKind::Orbit, DiffKind::Cover}) {
            EqModel model(*fx.ctx, kind);
            for (int n = 0; n + 2 <= fx.ctx->top_dim(); ++n)
                for (int t = 0; t < 3; ++t) {
                    EquivariantCochain f = model.random_compatible(n, rng);
                    EquivariantCochain df = model.apply_delta(f);
                    CHECK(is_compatible(*fx.ctx, df));
                    CHECK(is_zero(model.apply_delta(df).v));
                }
        }
    }
}

TEST_CASE("graded Leibniz rule on random compatible cochains") {
    std::mt19937 rng(13);
    Fixture fx = make_fixture("z2-twisted", 4);
    EqModel model(*fx.ctx, DiffKind::Orbit);
    PrimeField f(3);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b + 2 <= fx.ctx->top_dim(); ++b)
            for (int t = 0; t < 3; ++t) {
                EquivariantCochain u = model.random_compatible(a, rng);
                EquivariantCochain v = model.random_compatible(b, rng);
                FpVec lhs = model.apply_delta(model.apply_cup(u, v)).v;
                FpVec rhs = model.apply_cup(model.apply_delta(u), v).v;
                FpVec second = model.apply_cup(u, model.apply_delta(v)).v;
                uint8_t sgn = f.sign(a);
                for (size_t i = 0; i < rhs.size(); ++i)
                    rhs[i] = f.add(rhs[i], f.mul(sgn, second[i]));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("cup product is associative and unital at the cochain level") {
    std::mt19937 rng(17);
    Fixture fx = make_fixture("z2-twisted", 4);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);

    // The degree-0 cochain holding the unit of each level's algebra.
    EquivariantCochain one{0, FpVec(ctx.raw_dim(0), 0)};
    for (int h = 0; h < ctx.nsubs(); ++h)
        for (int loc = 0; loc < ctx.orbit.fps[h].count(0); ++loc)
            for (int c = 0; c < ctx.adim(h); ++c)
                one.v[ctx.slot(h, 0, loc, c)] = ctx.sys.alg[h].unit[c];
    REQUIRE(is_compatible(ctx, one));

    for (int a = 0; a <= 2; ++a) {
        EquivariantCochain u = model.random_compatible(a, rng);
        CHECK(model.apply_cup(one, u).v == u.v);
        CHECK(model.apply_cup(u, one).v == u.v);
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= fx.ctx->top_dim(); ++c) {
                EquivariantCochain v = model.random_compatible(b, rng);
                EquivariantCochain w = model.random_compatible(c, rng);
                CHECK(model.apply_cup(model.apply_cup(u, v), w).v ==
                      model.apply_cup(u, model.apply_cup(v, w)).v);
            }
    }
}

TEST_CASE("presentations, class maps and the image span agree") {
    std::mt19937 rng(19);
    Fixture fx = make_fixture("z2-twisted", 5);
    EqModel model(*fx.ctx, DiffKind::Orbit);
    PrimeField f(3);
    for (int n = 1; n <= 3; ++n) {
        const CohomologyPresentation& pres = model.presentation(n);
        for (int c = 0; c < pres.dim; ++c) {
            FpVec cls(pres.dim, 0);
            cls[c] = 1;
            FpVec rep = model.rep_of(n, cls);
            CHECK(model.is_cocycle({n, rep}));
            CHECK(model.class_of(n, rep) == cls);

            // Shifting by a coboundary keeps the class, under both the
            // presentation route and the span route.
            EquivariantCochain noise = model.random_compatible(n - 1, rng);
            EquivariantCochain shift = model.apply_delta(noise);
            FpVec moved = rep;
            for (size_t i = 0; i < moved.size(); ++i)
                moved[i] = f.add(moved[i], shift.v[i]);
            CHECK(model.class_of(n, moved) == cls);
            CHECK(model.classes_equal(n, rep, moved));
            if (pres.dim > 1) {
                FpVec other(pres.dim, 0);
                other[(c + 1) % pres.dim] = 1;
                CHECK_FALSE(model.classes_equal(n, rep, model.rep_of(n, other)));
            }
        }
    }
}

TEST_CASE("orbit and cover differentials give the same cohomology") {
    for (const char* name : {"z2-const", "z2-twisted"}) {
        Fixture fx = make_fixture(name, 4);
        EqModel orbit(*fx.ctx, DiffKind::Orbit);
        EqModel cover(*fx.ctx, DiffKind::Cover);
        CHECK(orbit.betti(3) == cover.betti(3));
    }
}

TEST_CASE("classical cup relations in the cohomology of BZ/3") {
    Fixture fx = make_fixture("bz3", 5);
    EqModel model(*fx.ctx, DiffKind::Orbit);

    FpVec x = model.rep_of(1, FpVec{1});
    FpVec y = model.rep_of(2, FpVec{1});

    // Odd-degree classes square to zero at odd primes.
    EquivariantCochain xx = model.apply_cup({1, x}, {1, x});
    CHECK(model.class_of(2, xx.v) == FpVec{0});

    // x y and y x agree up to the Koszul sign (+ here).
    EquivariantCochain xy = model.apply_cup({1, x}, {2, y});
    EquivariantCochain yx = model.apply_cup({2, y}, {1, x});
    CHECK(model.classes_equal(3, xy.v, yx.v));

    // y generates in even degrees: y^2 is nonzero in H^4.
    EquivariantCochain yy = model.apply_cup({2, y}, {2, y});
    CHECK_FALSE(model.class_of(4, yy.v) == FpVec{0});
}
