#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eqc/linalg.hpp"
#include "eqc/simplicial.hpp"

namespace eqc {

// Normalized chain complex of a presented simplicial set: degenerate faces
// are dropped, coincident targets accumulate integer coefficients.
struct ChainComplex {
    std::vector<int> dims;
    // boundary[n][idx] = list of (target index in dim n-1, coefficient)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> boundary;

    int top_dim() const { return static_cast<int>(dims.size()) - 1; }
    Matrix boundary_matrix(int n, int p) const;
};

ChainComplex normalized_chains(const PresentedSimplicialSet& x);

// Front face spanned by vertices 0..a and back face spanned by the last b+1
// vertices (as instances; either may be degenerate).
SimplexInstance front_face(const PresentedSimplicialSet& x, const SimplexInstance& s, int a);
SimplexInstance back_face(const PresentedSimplicialSet& x, const SimplexInstance& s, int b);

// Alexander-Whitney decomposition of the diagonal of an n-simplex:
// the list of (front_face(s,a), back_face(s,n-a)) for a = 0..n.
std::vector<std::pair<SimplexInstance, SimplexInstance>> alexander_whitney(
    const PresentedSimplicialSet& x, const SimplexInstance& s);

// p-fold iterate: one term per composition a_1+...+a_p = n, the k-th factor
// spanned by the vertices A_{k-1}..A_k (partial sums).
std::vector<std::vector<SimplexInstance>> aw_iterated(const PresentedSimplicialSet& x,
                                                      const SimplexInstance& s, int p);

// --- Universal-model utilities on faces of the standard simplex ---------
// Faces of Delta[j] are vertex bitmasks; these helpers back the diagonal
// approximation tables, which only ever work in the universal model.

using MaskWord = std::vector<uint32_t>;

struct SignedWord {
    int sign = 1;
    MaskWord word;
};

inline int mask_dim(uint32_t m) { return __builtin_popcount(m) - 1; }

// Simplicial boundary of a face (never degenerate for subsets).
std::vector<std::pair<int, uint32_t>> mask_boundary(uint32_t mask);

// Koszul-signed boundary of a tensor word of faces.
std::vector<SignedWord> word_boundary(const MaskWord& w);

// p-fold Alexander-Whitney of the top face of Delta[j], as mask words.
std::vector<MaskWord> aw_iterated_masks(int j, int p);

// Contraction of the chains of Delta[n] onto the chosen apex vertex:
// d h + h d = id - (unit)(augmentation). Apex is either vertex 0 or vertex n.
struct ConeContraction {
    int n = 0;
    int apex = 0;  // 0 or n

    uint32_t apex_mask() const { return 1u << apex; }
    // h(mask): nullopt when the face contains the apex (h vanishes there).
    std::optional<std::pair<int, uint32_t>> h(uint32_t mask) const;
};

// Left-nested contraction of the p-fold tensor of the cone: the k-th summand
// applies h in factor k and the unit-augmentation idempotent before it, so a
// term survives only while the leading factors are vertices.
std::vector<SignedWord> tensor_contraction(const ConeContraction& h, const MaskWord& w);

}  // namespace eqc
