#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqc/group.hpp"

namespace eqc {

// A possibly-degenerate simplex in Eilenberg-Zilber canonical form:
// s_{w[0]} s_{w[1]} ... s_{w[k-1]} applied to a nondegenerate base simplex,
// with w strictly decreasing (w[0] is the outermost degeneracy).
struct SimplexInstance {
    int base_dim = 0;
    int base = 0;
    std::vector<int> word;

    int dim() const { return base_dim + static_cast<int>(word.size()); }
    bool degenerate() const { return !word.empty(); }

    bool operator==(const SimplexInstance& o) const {
        return base_dim == o.base_dim && base == o.base && word == o.word;
    }
    bool operator<(const SimplexInstance& o) const {
        if (base_dim != o.base_dim)
            return base_dim < o.base_dim;
        if (base != o.base)
            return base < o.base;
        return word < o.word;
    }
};

// Applies the degeneracy s_j on the outside of an instance, renormalizing the
// degeneracy word with s_a s_b = s_{b+1} s_a (a <= b).
SimplexInstance apply_degeneracy(const SimplexInstance& x, int j);

// Finite-type simplicial set presented by face tables on the nondegenerate
// simplices of each dimension up to a truncation.
class PresentedSimplicialSet {
  public:
    PresentedSimplicialSet() = default;
    PresentedSimplicialSet(std::vector<int> counts,
                           std::vector<std::vector<SimplexInstance>> faces)
        : counts_(std::move(counts)), faces_(std::move(faces)) {}

    int top_dim() const { return static_cast<int>(counts_.size()) - 1; }
    int count(int n) const {
        return (n >= 0 && n <= top_dim()) ? counts_[n] : 0;
    }

    // i-th face of the idx-th nondegenerate n-simplex (n >= 1).
    const SimplexInstance& face(int n, int idx, int i) const {
        return faces_[n][static_cast<size_t>(idx) * (n + 1) + i];
    }

    // d_i on instances, normalizing through the degeneracy word.
    SimplexInstance apply_face(const SimplexInstance& x, int i) const;

    // Iterated face keeping exactly the vertices selected by keep_mask
    // (bit t = vertex t); removals run in decreasing vertex order.
    SimplexInstance face_subset(const SimplexInstance& x, uint32_t keep_mask) const;
    SimplexInstance face_subset(int n, int idx, uint32_t keep_mask) const;

    // Checks face table shapes and the simplicial identities
    // d_i d_j = d_{j-1} d_i (i < j) on every nondegenerate simplex.
    void validate() const;

  private:
    std::vector<int> counts_;
    std::vector<std::vector<SimplexInstance>> faces_;
};

// Standard n-simplex, truncated at its own dimension. Nondegenerate
// d-simplices are the (d+1)-element vertex subsets of {0..n}, indexed in
// increasing bitmask order.
PresentedSimplicialSet standard_simplex(int n);
uint32_t simplex_subset_mask(int n, int dim, int idx);
int simplex_subset_index(int n, uint32_t mask);

// Nerve of a finite group, truncated at top_dim. Nondegenerate n-simplices
// are n-tuples of non-identity elements, indexed little-endian.
struct NerveData {
    FiniteGroup gamma;
    int top_dim = 0;
    PresentedSimplicialSet space;

    std::vector<int> tuple_of(int n, int idx) const;  // entries in 1..|gamma|-1
    int index_of(const std::vector<int>& tuple) const;
};
NerveData build_nerve(const FiniteGroup& gamma, int top_dim);

// Simplicial set with a simplicial action of a finite group G permuting the
// nondegenerate simplices of each dimension.
struct GSimplicialSet {
    PresentedSimplicialSet space;
    FiniteGroup group;
    // action[n][g * count(n) + idx] = index of g . (n,idx)
    std::vector<std::vector<int>> action;

    int act(int g, int n, int idx) const { return action[n][g * space.count(n) + idx]; }
    SimplexInstance act(int g, const SimplexInstance& x) const {
        SimplexInstance y = x;
        y.base = act(g, x.base_dim, x.base);
        return y;
    }

    // Checks: valid permutation action, compatibility with faces, and the
    // one-vertex requirement (a single, G-fixed 0-simplex).
    void validate() const;
};

GSimplicialSet with_trivial_action(PresentedSimplicialSet space, FiniteGroup g);

// Action of G on a nerve through a homomorphism G -> Aut(gamma); auts[g] is
// the permutation of gamma's elements. Checked to be automorphisms.
GSimplicialSet nerve_with_action(const NerveData& nerve, FiniteGroup g,
                                 const std::vector<std::vector<int>>& auts);

// Fixed-point subcomplex data for one subgroup: per dimension, the sorted
// parent indices fixed by every element of the subgroup.
struct FixedPointSet {
    std::vector<std::vector<int>> members;
    std::vector<std::vector<int>> local;  // parent idx -> local idx or -1

    int count(int n) const {
        return (n >= 0 && n < static_cast<int>(members.size()))
                   ? static_cast<int>(members[n].size())
                   : 0;
    }
    bool contains(int n, int idx) const {
        return n >= 0 && n < static_cast<int>(local.size()) && local[n][idx] >= 0;
    }
    int local_index(int n, int idx) const { return local[n][idx]; }
    int parent_index(int n, int loc) const { return members[n][loc]; }
};

FixedPointSet fixed_points(const GSimplicialSet& x, const Subgroup& h);

// Materializes the fixed-point subcomplex as a standalone simplicial set
// (local indexing); faces of fixed simplices stay fixed, which is asserted.
PresentedSimplicialSet materialize(const GSimplicialSet& x, const FixedPointSet& fp);

// Left translation by the canonical representative of an orbit morphism
// H -> K, as per-dimension maps from X^K-local to X^H-local indices.
std::vector<std::vector<int>> translation_map(const GSimplicialSet& x,
                                              const FixedPointSet& fp_h,
                                              const FixedPointSet& fp_k, int rep);

}  // namespace eqc
