#pragma once

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "eqc/bredon.hpp"
#include "eqc/cover.hpp"
#include "eqc/phi.hpp"

namespace eqc {

// Normalization scalar of the reduced power operations at odd p:
// (-1)^r (m!)^q with m = (p-1)/2 and r = s + m q (q+1) / 2. Returns 1 at p = 2.
uint8_t power_scalar(const PrimeField& f, int q, int s);

// Cochain-level Steenrod operations on deck-equivariant cocycles, driven by
// the universal diagonal-approximation table. All evaluations happen on the
// canonical lifts; monodromy enters through the accumulated deck words of the
// iterated-face pieces.
class SteenrodEngine {
  public:
    // The table's prime must equal the coefficient prime of the context.
    SteenrodEngine(const EqContext& ctx, PhiTable& phi);

    // theta(e_i (x) u^{(x)p}) for a cocycle u of degree q: a cocycle of degree
    // p q - i. For i < 0 (or i > p q) returns the zero cochain with no value
    // table. Requires top_dim >= p q - i to hold the values; when `verify` is
    // set and the truncation allows, the result is checked to be a compatible
    // cocycle. `parallel` switches between the OpenMP kernel and the serial
    // reference; both produce byte-identical tables.
    TwistedCochain d_op(int i, const TwistedCochain& u, bool verify = true,
                        bool parallel = true);

    // P^s with the normalization scalar (Sq^s at p = 2).
    TwistedCochain power(int s, const TwistedCochain& u, bool verify = true,
                         bool parallel = true);
    // beta P^s (odd p only).
    TwistedCochain beta_power(int s, const TwistedCochain& u, bool verify = true,
                              bool parallel = true);

    // Target degree of P^s (beta = false) or beta P^s on a degree-q class.
    int target_degree(int s, int q, bool beta) const;
    // Index i with P^s = scalar . D_i on degree-q classes (may be negative).
    int d_index(int s, int q, bool beta) const;

    const EqContext& ctx() const { return *ctx_; }
    PhiTable& phi() { return *phi_; }

  private:
    struct MergedTerm {
        uint8_t c = 0;
        std::array<uint32_t, kMaxFactors> m{};
    };
    // k = 0 terms of the table entry (i, n), restricted to factor masks of
    // dimension q everywhere and summed over the cyclic-group coordinate.
    const std::vector<MergedTerm>& slice(int i, int n, int q);

    void eval_simplex(const TwistedCochain& u, const std::vector<MergedTerm>& terms,
                      int h, int n, int loc, uint8_t sign, FpVec& out) const;

    const EqContext* ctx_;
    PhiTable* phi_;
    std::map<std::tuple<int, int, int>, std::vector<MergedTerm>> slices_;
};

}  // namespace eqc
