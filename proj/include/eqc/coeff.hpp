#pragma once

#include <string>
#include <vector>

#include "eqc/group.hpp"
#include "eqc/linalg.hpp"
#include "eqc/simplicial.hpp"

namespace eqc {

// Precomputed orbit-category data of a G-simplicial set: all subgroups, all
// orbit morphisms, the fixed-point subcomplexes, and for every morphism the
// per-dimension translation maps between fixed-point index sets.
struct OrbitStructure {
    std::vector<Subgroup> subs;
    std::vector<OrbitMorphism> morphisms;
    std::vector<int> id_morphism;                      // per subgroup
    std::vector<FixedPointSet> fps;                    // per subgroup
    std::vector<std::vector<std::vector<int>>> trans;  // [m][n][K-local] -> H-local

    int find_morphism(int src, int dst, int rep) const;
    static OrbitStructure build(const GSimplicialSet& x);
};

// Finite-dimensional unital associative commutative F_p-algebra given by a
// distinguished unit vector and left-multiplication tables.
struct CoefficientAlgebra {
    int dim = 1;
    FpVec unit;                     // coordinates of 1
    std::vector<Matrix> left_mult;  // left_mult[i] = matrix of (e_i . -)

    FpVec mul(const FpVec& a, const FpVec& b, const PrimeField& f) const;
    // Appends a description of each violated axiom (associativity,
    // commutativity, unit) to `out`; silent when the algebra is valid.
    void validate(const PrimeField& f, const std::string& where,
                  std::vector<std::string>& out) const;
};

// Equivariant local coefficient data: one algebra per subgroup H, an algebra
// automorphism per nondegenerate 1-simplex of each fixed-point subcomplex
// (the monodromy of the edge), and one linear map per orbit morphism
// (contravariant: a morphism G/H -> G/K is assigned a map M0(K) -> M0(H)).
struct CoefficientSystem {
    int p = 3;
    std::vector<CoefficientAlgebra> alg;               // per subgroup
    std::vector<std::vector<Matrix>> edge_action;      // [h][local 1-simplex]
    std::vector<std::vector<Matrix>> edge_action_inv;  // cached inverses
    std::vector<Matrix> transfer;                      // per orbit morphism

    // Fills edge_action_inv from edge_action.
    void cache_inverses();
};

// Full consistency check of a coefficient system against a G-space:
// algebra axioms; edge automorphisms unital, multiplicative and invertible;
// the 2-simplex relation psi(edge02) = psi(edge12) psi(edge01) on every
// nondegenerate fixed 2-simplex (degenerate edges act as the identity);
// transfers unital algebra maps, functorial, identity on identities; and
// the intertwining psi_H(a.y) transfer = transfer psi_K(y) for every orbit
// morphism and fixed edge. Returns human-readable violations (empty = ok).
std::vector<std::string> validate_coefficients(const GSimplicialSet& x,
                                               const OrbitStructure& orbit,
                                               const CoefficientSystem& sys);

// --- Builders -----------------------------------------------------------

// The constant system F_p everywhere.
CoefficientSystem constant_system(const GSimplicialSet& x, const OrbitStructure& orbit,
                                  int p);

// On the nerve of a cyclic group of prime order p with trivial G-action:
// the degree-p Galois field F_p[t]/(t^p - t - 1), the edge labelled by the
// k-th power of the generator acting by the k-th power of the Frobenius.
CoefficientSystem galois_system(const NerveData& nerve, const GSimplicialSet& x,
                                const OrbitStructure& orbit);

// On the nerve of Z/3 with Z/2 acting by inversion: the truncated polynomial
// algebra F_3[u]/(u^3) at the free level with monodromy u -> u + u^2, the
// sign involution u -> -u as the nontrivial self-map of the free orbit, and
// fixed points F_3 with the unit map as transfer.
CoefficientSystem inversion_system(const GSimplicialSet& x, const OrbitStructure& orbit);

// --- Bundled context ------------------------------------------------------

// A cochain in raw layout: per subgroup h a block of values indexed by
// (local fixed n-simplex, algebra coordinate). Degenerate simplices carry no
// slots (normalized cochains vanish there).
struct EquivariantCochain {
    int degree = 0;
    FpVec v;
};

// Everything the cochain-level machinery needs, with layout caches.
struct EqContext {
    GSimplicialSet x;
    OrbitStructure orbit;
    CoefficientSystem sys;
    PrimeField field;

    EqContext(GSimplicialSet x_, OrbitStructure o_, CoefficientSystem s_);

    int top_dim() const { return x.space.top_dim(); }
    int nsubs() const { return static_cast<int>(orbit.subs.size()); }
    int adim(int h) const { return sys.alg[h].dim; }
    int raw_dim(int n) const { return rawdims_[n]; }
    int offset(int h, int n) const { return offsets_[n][h]; }
    int slot(int h, int n, int local, int coord) const {
        return offsets_[n][h] + local * adim(h) + coord;
    }

    const Matrix& psi(int h, int local_edge) const { return sys.edge_action[h][local_edge]; }
    const Matrix& psi_inv(int h, int local_edge) const {
        return sys.edge_action_inv[h][local_edge];
    }
    // Monodromy of a possibly-degenerate edge instance (parent indexing);
    // degenerate edges act as the identity.
    const Matrix& psi_edge(int h, const SimplexInstance& e) const;
    const Matrix& psi_inv_edge(int h, const SimplexInstance& e) const;
    const Matrix& ident(int h) const { return ident_[h]; }

    FpVec value(const FpVec& raw, int h, int n, int local) const {
        const int d = adim(h);
        const int s = slot(h, n, local, 0);
        return FpVec(raw.begin() + s, raw.begin() + s + d);
    }

  private:
    std::vector<std::vector<int>> offsets_;  // [n][h]
    std::vector<int> rawdims_;               // [n]
    std::vector<Matrix> ident_;              // per h
};

}  // namespace eqc
