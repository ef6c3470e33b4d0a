#pragma once

#include <cstdint>
#include <vector>

#include "eqc/coeff.hpp"

namespace eqc {

// One-vertex spaces have a loop for every nondegenerate 1-simplex, so deck
// transformations of the universal cover of a fixed-point subcomplex are
// represented by formal words in those loops.
struct DeckLetter {
    int edge = 0;  // local 1-simplex index in the fixed-point subcomplex
    int exp = 1;   // +1 or -1

    bool operator==(const DeckLetter& o) const { return edge == o.edge && exp == o.exp; }
};
using DeckWord = std::vector<DeckLetter>;

// A simplex of the universal cover, presented as a deck word applied to the
// canonical lift of a (possibly degenerate) base simplex.
struct CoverSimplex {
    DeckWord word;
    SimplexInstance base;
};

inline CoverSimplex canonical_lift(SimplexInstance x) { return CoverSimplex{{}, std::move(x)}; }

// The word by which the 0th face of a canonical lift leaves the canonical
// sheet: the formal inverse of the leading edge of x (empty when that edge
// is degenerate).
DeckWord twist(const EqContext& ctx, int h, const SimplexInstance& x);

// Face maps of the cover: every face except the 0th keeps the sheet; the 0th
// appends the twist of the current base to the deck word.
CoverSimplex cover_face(const EqContext& ctx, int h, const CoverSimplex& s, int i);

// Iterated cover face keeping the vertices of keep_mask, removals in
// decreasing vertex order (matching face_subset on the base).
CoverSimplex cover_face_subset(const EqContext& ctx, int h, const CoverSimplex& s,
                               uint32_t keep_mask);

// Action of a deck word on coefficients: letters act leftmost-outermost, a
// letter of exponent -1 by the inverse monodromy of its edge.
Matrix act_matrix(const EqContext& ctx, int h, const DeckWord& w);

// Cochain on the universal covers, deck-equivariant, stored by its values on
// canonical lifts. Raw layout agrees with EquivariantCochain.
struct TwistedCochain {
    int degree = 0;
    FpVec v;
};

// Value at an arbitrary cover simplex: the deck action applied to the value
// at the canonical lift of the base; zero on degenerate bases.
FpVec evaluate(const EqContext& ctx, const TwistedCochain& fc, int h, const CoverSimplex& s);

// Simplicial coboundary computed upstairs, through cover faces and the deck
// action (no direct monodromy lookups).
TwistedCochain rho_coboundary(const EqContext& ctx, const TwistedCochain& fc);

// Cup product upstairs: front face times the value at the iterated 0th cover
// face, multiplied in the coefficient algebra.
TwistedCochain rho_cup(const EqContext& ctx, const TwistedCochain& fc,
                       const TwistedCochain& gc);

// The comparison maps between the orbit-category model and the cover model.
// On canonical lifts they are value-table reindexings; the content is that
// they intertwine the two coboundaries and cup products, which the tests and
// the verification suites check through the two independent code paths.
TwistedCochain mu(const EqContext& ctx, const EquivariantCochain& f);
EquivariantCochain mu_inv(const EqContext& ctx, const TwistedCochain& fc);

}  // namespace eqc
