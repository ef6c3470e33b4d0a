// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: dense mod-p elimination and the table-driven power
// operations. Results of both code paths are compared byte for byte before
// any timing is reported.
//
//   eqcohom-bench [--large]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

#include "eqc/bredon.hpp"
#include "eqc/fixtures.hpp"
#include "eqc/linalg.hpp"
#include "eqc/steenrod.hpp"

using namespace eqc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Matrix random_matrix(int rows, int cols, int p, std::mt19937& rng) {
    Matrix m(rows, cols, p);
    std::uniform_int_distribution<int> d(0, p - 1);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = (uint8_t)d(rng);
    return m;
}

void bench_rref(int rows, int cols, int p, int reps) {
    std::mt19937 rng(2026);
    double t_serial = 0, t_parallel = 0;
    bool equal = true;
    for (int r = 0; r < reps; ++r) {
        Matrix a = random_matrix(rows, cols, p, rng);
        Matrix b = a;
        Clock::time_point t0 = Clock::now();
        rref_inplace_serial(a);
        t_serial += seconds_since(t0);
        t0 = Clock::now();
        rref_inplace_parallel(b);
        t_parallel += seconds_since(t0);
        equal = equal && (a == b);
    }
    std::printf("rref  %4dx%-4d mod %d  serial %8.3fs  parallel %8.3fs  x%.2f  %s\n",
                rows, cols, p, t_serial, t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0,
                equal ? "results equal" : "RESULTS DIFFER");
}

// The heaviest kernel in the test corpus: the second factor of P^1 P^1 on a
// degree-3 class evaluates the W-index-10 table entry on the 11-simplices of
// the deep fixture. Table construction is hoisted out of the timing.
void bench_deep_op(int trunc) {
    Fixture fx = make_fixture("bz3-deep", trunc);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    FpVec cls(model.presentation(3).dim, 0);
    cls[0] = 1;
    TwistedCochain u3 = mu(ctx, {3, model.rep_of(3, cls)});

    PhiTable tab(PhiOptions{3, LiftRoute::ApexZero, 6, 6});
    SteenrodEngine eng(ctx, tab);
    TwistedCochain u7 = eng.power(1, u3, /*verify=*/false);
    (void)eng.d_op(10, u7, /*verify=*/false, /*parallel=*/false);  // warm tables

    Clock::time_point t0 = Clock::now();
    TwistedCochain a = eng.d_op(10, u7, /*verify=*/false, /*parallel=*/false);
    double t_serial = seconds_since(t0);
    t0 = Clock::now();
    TwistedCochain b = eng.d_op(10, u7, /*verify=*/false, /*parallel=*/true);
    double t_parallel = seconds_since(t0);
    std::printf("D_10  bz3-deep   q=7 trunc=%-2d serial %8.3fs  parallel %8.3fs  x%.2f  %s\n",
                trunc, t_serial, t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0,
                a.v == b.v ? "results equal" : "RESULTS DIFFER");
}

void bench_power(const char* fixture, int trunc, int q, int s, int reps) {
    Fixture fx = make_fixture(fixture, trunc);
    const EqContext& ctx = *fx.ctx;
    EqModel model(ctx, DiffKind::Orbit);
    if (model.presentation(q).dim == 0) {
        std::printf("power fixture %s has no degree-%d class; skipped\n", fixture, q);
        return;
    }
    FpVec cls(model.presentation(q).dim, 0);
    cls[0] = 1;
    TwistedCochain u = mu(ctx, {q, model.rep_of(q, cls)});

    PhiTable tab(PhiOptions{fx.p, LiftRoute::ApexZero, 6, 6});
    SteenrodEngine eng(ctx, tab);
    // Warm the diagonal table once so the timing isolates the kernels.
    (void)eng.power(s, u, /*verify=*/false, /*parallel=*/false);

    double t_serial = 0, t_parallel = 0;
    bool equal = true;
    TwistedCochain a, b;
    for (int r = 0; r < reps; ++r) {
        Clock::time_point t0 = Clock::now();
        a = eng.power(s, u, /*verify=*/false, /*parallel=*/false);
        t_serial += seconds_since(t0);
        t0 = Clock::now();
        b = eng.power(s, u, /*verify=*/false, /*parallel=*/true);
        t_parallel += seconds_since(t0);
        equal = equal && (a.v == b.v);
    }
    std::printf("P^%d   %-10s q=%d trunc=%-2d serial %8.3fs  parallel %8.3fs  x%.2f  %s\n",
                s, fixture, q, trunc, t_serial, t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0,
                equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    bool large = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--large") == 0) large = true;

    std::printf("-- dense elimination --\n");
    bench_rref(300, 450, 3, 3);
    bench_rref(600, 900, 3, 2);
    if (large) bench_rref(1500, 2200, 3, 1);

    std::printf("-- power operations --\n");
    bench_power("bz3", 7, 2, 1, 2);
    bench_power("z2-twisted", 6, 1, 0, 2);
    if (large) {
        bench_power("bz3-adem", 11, 2, 1, 1);
        bench_deep_op(12);
    }
    return 0;
}
