#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "eqc/fp.hpp"

namespace eqc {

// The standard small free resolution W of F_p over F_p[pi], pi cyclic of
// order p with generator alpha: one generator e_k per degree k >= 0, with
//   d e_{2i+1} = (alpha - 1) e_{2i},   d e_{2i} = (1 + alpha + ... + alpha^{p-1}) e_{2i-1}.
struct WTerm {
    uint8_t c = 0;  // coefficient, 1..p-1
    uint8_t a = 0;  // power of alpha
    int k = 0;      // generator degree

    bool operator==(const WTerm& o) const { return c == o.c && a == o.a && k == o.k; }
};

using WChain = std::vector<WTerm>;

// Sorts by (k, a) and merges coefficients mod p, dropping zeros.
WChain w_normalize(WChain w, const PrimeField& f);

// Left multiplication by alpha^e.
WChain w_alpha_mul(const WChain& w, int e, const PrimeField& f);

WChain w_diff(const WChain& w, const PrimeField& f);

// Augmentation: every alpha^a e_0 maps to 1, higher degrees to 0.
uint8_t w_aug(const WChain& w, const PrimeField& f);

// Coproduct on generators, extended alpha-diagonally; returns (coeff, left, right).
std::vector<std::tuple<uint8_t, WTerm, WTerm>> w_coproduct(const WTerm& t,
                                                           const PrimeField& f);

// Contracting homotopy s with d s + s d = id - (unit)(augmentation):
//   s(alpha^a e_{2i})   = (1 + alpha + ... + alpha^{a-1}) e_{2i+1}  (zero for a = 0)
//   s(alpha^a e_{2i+1}) = e_{2i+2} when a = p-1, else zero.
WChain w_contraction(const WChain& w, const PrimeField& f);

}  // namespace eqc
