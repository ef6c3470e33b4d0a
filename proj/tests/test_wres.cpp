#include "doctest.h"

#include <map>
#include <tuple>

#include "eqc/wres.hpp"

using namespace eqc;

namespace eqc {
// Ordering for map keys in this test only.
static bool operator<(const WTerm& a, const WTerm& b) {
    return std::tie(a.k, a.a, a.c) < std::tie(b.k, b.a, b.c);
}
}  // namespace eqc

namespace {

// Tensor-square chains with the Koszul-sign differential, built on top of
// the public W interface; used to check the coproduct is a chain map.
using Tensor = std::map<std::pair<WTerm, WTerm>, int>;

void tensor_add(Tensor& t, const WTerm& l, const WTerm& r, int c, const PrimeField& f) {
    WTerm lk = l, rk = r;
    int coeff = c * lk.c * rk.c;
    lk.c = rk.c = 1;
    int v = f.reduce(t[{lk, rk}] + coeff);
    t[{lk, rk}] = v;
}

void prune(Tensor& t) {
    for (auto it = t.begin(); it != t.end();)
        it = (it->second == 0) ? t.erase(it) : std::next(it);
}

}  // namespace

TEST_CASE("W differential squares to zero") {
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        for (int k = 0; k <= 6; ++k)
            for (int a = 0; a < p; ++a) {
                WChain w{{1, (uint8_t)a, k}};
                CHECK(w_normalize(w_diff(w_diff(w, f), f), f).empty());
            }
    }
}

TEST_CASE("W contraction is a homotopy from the identity to unit-augmentation") {
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        for (int k = 0; k <= 6; ++k)
            for (int a = 0; a < p; ++a) {
                WChain w{{1, (uint8_t)a, k}};
                WChain lhs = w_diff(w_contraction(w, f), f);
                for (const WTerm& t : w_contraction(w_diff(w, f), f)) lhs.push_back(t);
                // Subtract id and add the augmentation part.
                for (const WTerm& t : w)
                    lhs.push_back({f.neg(t.c), t.a, t.k});
                if (k == 0) lhs.push_back({w_aug(w, f), 0, 0});
                CHECK(w_normalize(lhs, f).empty());
            }
    }
}

TEST_CASE("alpha has order p and augmentation is alpha-invariant") {
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        WChain w{{2 % p == 0 ? (uint8_t)1 : (uint8_t)2, 1, 3}, {1, 0, 3}};
        w = w_normalize(w, f);
        CHECK(w_normalize(w_alpha_mul(w, p, f), f) == w);
        WChain v{{1, 2 % p == 0 ? (uint8_t)0 : (uint8_t)2, 0}};
        CHECK(w_aug(v, f) == w_aug(w_alpha_mul(v, 1, f), f));
    }
}

TEST_CASE("coproduct counit identities") {
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        for (int k = 0; k <= 5; ++k)
            for (int a = 0; a < p; ++a) {
                WTerm t{1, (uint8_t)a, k};
                WChain left, right;
                for (auto& [c, l, r] : w_coproduct(t, f)) {
                    if (l.k == 0) {
                        uint8_t e = w_aug(WChain{l}, f);
                        right.push_back({f.mul(c, f.mul(e, r.c)), r.a, r.k});
                    }
                    if (r.k == 0) {
                        uint8_t e = w_aug(WChain{r}, f);
                        left.push_back({f.mul(c, f.mul(e, l.c)), l.a, l.k});
                    }
                }
                CHECK(w_normalize(left, f) == w_normalize(WChain{t}, f));
                CHECK(w_normalize(right, f) == w_normalize(WChain{t}, f));
            }
    }
}

TEST_CASE("coproduct is a chain map for the Koszul differential") {
    for (int p : {2, 3}) {
        PrimeField f(p);
        for (int k = 1; k <= 5; ++k)
            for (int a = 0; a < p; ++a) {
                WTerm t{1, (uint8_t)a, k};
                Tensor acc;
                // Delta(d t)
                for (const WTerm& dt : w_diff(WChain{t}, f))
                    for (auto& [c, l, r] : w_coproduct(dt, f))
                        tensor_add(acc, l, r, c, f);
                // minus (d (x) id + (-1)^{|l|} id (x) d) Delta(t)
                for (auto& [c, l, r] : w_coproduct(t, f)) {
                    for (const WTerm& dl : w_diff(WChain{l}, f))
                        tensor_add(acc, dl, r, f.neg(c), f);
                    uint8_t sc = f.mul(f.sign(l.k), f.neg(c));
                    for (const WTerm& dr : w_diff(WChain{r}, f))
                        tensor_add(acc, l, dr, sc, f);
                }
                prune(acc);
                CHECK(acc.empty());
            }
    }
}

TEST_CASE("coproduct is alpha-equivariant") {
    for (int p : {2, 3}) {
        PrimeField f(p);
        for (int k = 0; k <= 4; ++k) {
            WTerm t{1, 0, k};
            Tensor lhs;
            // Delta(alpha t)
            WChain at = w_alpha_mul(WChain{t}, 1, f);
            REQUIRE(at.size() == 1);
            for (auto& [c, l, r] : w_coproduct(at[0], f)) tensor_add(lhs, l, r, c, f);
            // (alpha (x) alpha) Delta(t)
            for (auto& [c, l, r] : w_coproduct(t, f)) {
                WChain al = w_alpha_mul(WChain{l}, 1, f);
                WChain ar = w_alpha_mul(WChain{r}, 1, f);
                REQUIRE(al.size() == 1);
                REQUIRE(ar.size() == 1);
                tensor_add(lhs, al[0], ar[0], f.p() - c, f);
            }
            prune(lhs);
            CHECK(lhs.empty());
        }
    }
}
