#include "doctest.h"

#include <random>

#include "eqc/linalg.hpp"

using namespace eqc;

namespace {

Matrix from_rows(int p, std::vector<std::vector<int>> rows) {
    Matrix m((int)rows.size(), (int)rows[0].size(), p);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            m.at(r, c) = (uint8_t)(((rows[r][c] % p) + p) % p);
    return m;
}

Matrix random_matrix(int rows, int cols, int p, std::mt19937& rng) {
    Matrix m(rows, cols, p);
    std::uniform_int_distribution<int> d(0, p - 1);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = (uint8_t)d(rng);
    return m;
}

}  // namespace

TEST_CASE("rref on a hand-reduced matrix mod 5") {
    Matrix m = from_rows(5, {{2, 1, 0, 1}, {4, 2, 1, 3}, {0, 0, 1, 1}});
    std::vector<int> piv = rref_inplace(m);
    CHECK(piv == std::vector<int>{0, 2});
    Matrix want = from_rows(5, {{1, 3, 0, 3}, {0, 0, 1, 1}, {0, 0, 0, 0}});
    CHECK(m == want);
    CHECK(rank_of(from_rows(5, {{2, 1, 0, 1}, {4, 2, 1, 3}, {0, 0, 1, 1}})) == 2);
}

TEST_CASE("matmul and matvec against hand values mod 3") {
    Matrix a = from_rows(3, {{1, 2}, {0, 1}});
    Matrix b = from_rows(3, {{2, 1}, {1, 1}});
    Matrix ab = matmul(a, b);
    CHECK(ab == from_rows(3, {{1, 0}, {1, 1}}));
    FpVec v{2, 2};
    CHECK(matvec(a, v) == FpVec{0, 2});
}

TEST_CASE("solve returns a solution exactly when consistent") {
    Matrix a = from_rows(3, {{1, 1, 0}, {0, 1, 1}});
    FpVec b{1, 2};
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(matvec(a, *x) == b);

    // x + y = 1 and 2x + 2y = 1 is inconsistent mod 3.
    Matrix c = from_rows(3, {{1, 1}, {2, 2}});
    CHECK_FALSE(solve(c, FpVec{1, 1}).has_value());
}

TEST_CASE("nullspace columns span the kernel with unit free coordinates") {
    std::mt19937 rng(11);
    for (int p : {2, 3, 5}) {
        Matrix a = random_matrix(7, 11, p, rng);
        std::vector<int> free_cols;
        Matrix k = nullspace(a, &free_cols);
        CHECK(k.cols() == 11 - rank_of(a));
        CHECK((int)free_cols.size() == k.cols());
        for (int j = 0; j < k.cols(); ++j) {
            FpVec col(k.rows());
            for (int r = 0; r < k.rows(); ++r) col[r] = k.at(r, j);
            FpVec img = matvec(a, col);
            for (uint8_t e : img) CHECK(e == 0);
            // Unit coordinate at the j-th free column, zero at the others.
            for (int jj = 0; jj < k.cols(); ++jj)
                CHECK((int)k.at(free_cols[jj], j) == (jj == j ? 1 : 0));
        }
    }
}

TEST_CASE("inverse of a unitriangular matrix") {
    Matrix m = from_rows(7, {{1, 3, 5}, {0, 1, 2}, {0, 0, 1}});
    Matrix mi = inverse(m);
    CHECK(matmul(m, mi) == Matrix::identity(3, 7));
    CHECK(matmul(mi, m) == Matrix::identity(3, 7));
}

TEST_CASE("RowSpan inserts, ranks and membership agree with rank_of") {
    std::mt19937 rng(23);
    for (int p : {2, 3}) {
        Matrix a = random_matrix(9, 6, p, rng);
        RowSpan span(6, p);
        for (int r = 0; r < a.rows(); ++r)
            span.insert(FpVec(a.row(r), a.row(r) + a.cols()));
        CHECK(span.rank() == rank_of(a));
        // Random row combinations are members; their reductions vanish.
        std::uniform_int_distribution<int> d(0, p - 1);
        PrimeField f(p);
        for (int t = 0; t < 10; ++t) {
            FpVec v(6, 0);
            for (int r = 0; r < a.rows(); ++r) {
                int c = d(rng);
                for (int j = 0; j < 6; ++j)
                    v[j] = f.add(v[j], f.mul((uint8_t)c, a.at(r, j)));
            }
            CHECK(span.contains(v));
            for (uint8_t e : span.reduce(v)) CHECK(e == 0);
        }
    }
}

TEST_CASE("cohomology presentation of a hand-built three-term segment") {
    // d_cur has kernel {(1,0,2,0), (0,1,0,2)} mod 3; d_prev hits the first
    // kernel vector, so the quotient is one-dimensional.
    Matrix d_cur = from_rows(3, {{1, 0, 1, 0}, {0, 1, 0, 1}});
    Matrix d_prev(4, 1, 3);
    d_prev.at(0, 0) = 1;
    d_prev.at(2, 0) = 2;
    CohomologyPresentation pres = cohomology(d_prev, d_cur);
    CHECK(pres.dim == 1);
    CHECK(pres.space_dim == 4);

    // Representative round trip and boundary quotient.
    FpVec rep = pres.representative_of(FpVec{1});
    CHECK(matvec(d_cur, rep) == FpVec{0, 0});
    CHECK(pres.class_of(rep) == FpVec{1});
    FpVec bdry(4);
    for (int r = 0; r < 4; ++r) bdry[r] = d_prev.at(r, 0);
    CHECK(pres.class_of(bdry) == FpVec{0});
    // Non-cocycles are rejected.
    CHECK_THROWS(pres.class_of(FpVec{1, 0, 0, 0}));
}

TEST_CASE("serial and parallel elimination agree byte for byte") {
    std::mt19937 rng(31);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 4; ++trial) {
            Matrix a = random_matrix(40 + 7 * trial, 55, p, rng);
            Matrix b = a;
            std::vector<int> ps = rref_inplace_serial(a);
            std::vector<int> pp = rref_inplace_parallel(b);
            CHECK(ps == pp);
            CHECK(a == b);
        }
    }
}

TEST_CASE("parallel kernel switch is honored and restored") {
    bool before = parallel_kernels();
    set_parallel_kernels(false);
    CHECK_FALSE(parallel_kernels());
    Matrix a = from_rows(3, {{1, 2}, {2, 2}});
    CHECK(rank_of(a) == 2);
    set_parallel_kernels(true);
    CHECK(parallel_kernels());
    set_parallel_kernels(before);
}
