#include "doctest.h"

#include <map>

#include "eqc/chains.hpp"

using namespace eqc;

TEST_CASE("normalized chains of the standard 2-simplex") {
    ChainComplex c = normalized_chains(standard_simplex(2));
    CHECK(c.dims == std::vector<int>{3, 3, 1});
    // The boundary of the top simplex has three signed nondegenerate faces.
    REQUIRE(c.boundary[2].size() == 1);
    int sum = 0;
    for (auto [tgt, coeff] : c.boundary[2][0]) {
        CHECK(tgt >= 0);
        CHECK(tgt < 3);
        sum += coeff;
    }
    CHECK(sum == 1);  // +1 -1 +1
}

TEST_CASE("boundary squares to zero on the nerve of Z/3") {
    ChainComplex c = normalized_chains(build_nerve(FiniteGroup::cyclic(3), 5).space);
    for (int p : {2, 3, 5}) {
        for (int n = 2; n <= c.top_dim(); ++n) {
            Matrix dn = c.boundary_matrix(n, p);
            Matrix dn1 = c.boundary_matrix(n - 1, p);
            Matrix z = matmul(dn1, dn);
            for (int r = 0; r < z.rows(); ++r)
                for (int cc = 0; cc < z.cols(); ++cc) CHECK((int)z.at(r, cc) == 0);
        }
    }
}

TEST_CASE("front and back faces of a nerve simplex") {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), 4);
    // (g1, g2, g3) = (1, 2, 1): vertices 0..3.
    SimplexInstance s{3, nv.index_of({1, 2, 1}), {}};
    SimplexInstance f2 = front_face(nv.space, s, 2);
    REQUIRE_FALSE(f2.degenerate());
    CHECK(nv.tuple_of(2, f2.base) == std::vector<int>{1, 2});
    SimplexInstance b1 = back_face(nv.space, s, 1);
    REQUIRE_FALSE(b1.degenerate());
    CHECK(nv.tuple_of(1, b1.base) == std::vector<int>{1});
    // A middle cut through the identity element (1*2 = 0 in Z/3) makes the
    // back face start at the identity vertex but stay nondegenerate, while
    // cutting (2, 1) after one step gives front face (2).
    SimplexInstance t{2, nv.index_of({2, 1}), {}};
    SimplexInstance ff = front_face(nv.space, t, 1);
    REQUIRE_FALSE(ff.degenerate());
    CHECK(nv.tuple_of(1, ff.base) == std::vector<int>{2});
}

TEST_CASE("Alexander-Whitney terms and iterated compositions") {
    NerveData nv = build_nerve(FiniteGroup::cyclic(3), 4);
    SimplexInstance s{2, nv.index_of({1, 1}), {}};
    auto aw = alexander_whitney(nv.space, s);
    REQUIRE(aw.size() == 3);
    for (int a = 0; a <= 2; ++a) {
        CHECK(aw[a].first.dim() == a);
        CHECK(aw[a].second.dim() == 2 - a);
    }
    // p-fold version: one term per composition a_1+...+a_p = n.
    auto aw3 = aw_iterated(nv.space, s, 3);
    CHECK(aw3.size() == 6);  // C(4, 2)
    for (const auto& parts : aw3) {
        REQUIRE(parts.size() == 3);
        int total = 0;
        for (const auto& part : parts) total += part.dim();
        CHECK(total == 2);
    }
}

TEST_CASE("mask boundaries carry alternating signs and square to zero") {
    auto b = mask_boundary(0b111u);
    REQUIRE(b.size() == 3);
    CHECK(b[0].first * b[1].first == -1);
    CHECK(b[1].first * b[2].first == -1);
    for (auto [sgn, m] : b) CHECK(mask_dim(m) == 1);

    // Koszul boundary of tensor words: d(d(w)) = 0 over the integers.
    MaskWord w{0b111u, 0b1101u};
    std::map<MaskWord, int> acc;
    for (const SignedWord& sw : word_boundary(w))
        for (const SignedWord& sw2 : word_boundary(sw.word))
            acc[sw2.word] += sw.sign * sw2.sign;
    for (auto& [word, coeff] : acc) CHECK(coeff == 0);
}

TEST_CASE("iterated Alexander-Whitney masks of the standard simplex") {
    auto m22 = aw_iterated_masks(2, 2);
    REQUIRE(m22.size() == 3);
    CHECK(m22[0] == MaskWord{0b001u, 0b111u});
    CHECK(m22[1] == MaskWord{0b011u, 0b110u});
    CHECK(m22[2] == MaskWord{0b111u, 0b100u});

    // Each factor spans a contiguous vertex range and consecutive factors
    // share exactly the cut vertex.
    for (int j : {1, 2, 3})
        for (const MaskWord& w : aw_iterated_masks(j, 3)) {
            REQUIRE(w.size() == 3);
            int total = 0;
            for (uint32_t m : w) total += mask_dim(m);
            CHECK(total == j);
            for (size_t k = 0; k + 1 < w.size(); ++k) {
                uint32_t shared = w[k] & w[k + 1];
                CHECK(__builtin_popcount(shared) == 1);
            }
        }
}

namespace {

// Accumulates signed mask words, for checking chain identities over Z.
void add_all(std::map<MaskWord, int>& acc, const std::vector<SignedWord>& ws, int scale) {
    for (const SignedWord& sw : ws) acc[sw.word] += scale * sw.sign;
}

}  // namespace

TEST_CASE("cone contraction is a homotopy from the identity to the apex") {
    for (int apex : {0, 2}) {
        ConeContraction h{2, apex};
        for (uint32_t mask = 1; mask < 8; ++mask) {
            // Single faces first: d h + h d = id - (unit)(augmentation).
            std::map<MaskWord, int> acc;
            if (auto hm = h.h(mask)) {
                add_all(acc, word_boundary(MaskWord{hm->second}), hm->first);
            }
            for (auto [sgn, f] : mask_boundary(mask))
                if (auto hf = h.h(f)) acc[MaskWord{hf->second}] += sgn * hf->first;
            acc[MaskWord{mask}] -= 1;
            if (mask_dim(mask) == 0) acc[MaskWord{h.apex_mask()}] += 1;
            for (auto& [w, c] : acc) CHECK(c == 0);
        }
    }
}

TEST_CASE("tensor contraction is a homotopy on two-factor words") {
    for (int apex : {0, 2}) {
        ConeContraction h{2, apex};
        for (uint32_t m1 = 1; m1 < 8; ++m1)
            for (uint32_t m2 = 1; m2 < 8; ++m2) {
                MaskWord w{m1, m2};
                std::map<MaskWord, int> acc;
                for (const SignedWord& sw : tensor_contraction(h, w))
                    add_all(acc, word_boundary(sw.word), sw.sign);
                for (const SignedWord& sw : word_boundary(w))
                    for (const SignedWord& hw : tensor_contraction(h, sw.word))
                        acc[hw.word] += sw.sign * hw.sign;
                acc[w] -= 1;
                if (mask_dim(m1) == 0 && mask_dim(m2) == 0)
                    acc[MaskWord{h.apex_mask(), h.apex_mask()}] += 1;
                for (auto& [word, c] : acc) CHECK(c == 0);
            }
    }
}
