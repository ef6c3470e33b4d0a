#pragma once

#include <string>
#include <vector>

namespace eqc {

// Finite group given by a multiplication table. Element 0 is required to be
// the identity; validate() also checks closure, associativity and inverses.
struct FiniteGroup {
    int n = 1;
    std::vector<int> mult;             // mult[a*n+b] = a*b
    std::vector<std::string> names;    // optional element labels

    int mul(int a, int b) const { return mult[a * n + b]; }
    int inv(int a) const;
    void validate() const;

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int m);
};

struct Subgroup {
    std::vector<int> elems;  // sorted, always contains 0
    bool contains(int g) const;
    std::string label() const;
};

// All subgroups, ordered by size then lexicographically by element list.
// Index 0 is always the trivial subgroup; the last entry is G itself.
std::vector<Subgroup> subgroups(const FiniteGroup& g);

// Morphism G/H -> G/K in the orbit category: a coset aK with a^{-1} H a <= K,
// stored by its canonical (least-element) representative.
struct OrbitMorphism {
    int src = 0;  // subgroup index of H
    int dst = 0;  // subgroup index of K
    int rep = 0;  // least element of the defining coset aK

    bool operator==(const OrbitMorphism& o) const {
        return src == o.src && dst == o.dst && rep == o.rep;
    }
};

// All orbit-category morphisms between the given subgroups, grouped in a flat
// list ordered by (src, dst, rep).
std::vector<OrbitMorphism> orbit_morphisms(const FiniteGroup& g,
                                           const std::vector<Subgroup>& subs);

// Composite of G/H --m1--> G/K --m2--> G/L (m1 first), rep-canonicalized.
OrbitMorphism compose_morphisms(const FiniteGroup& g, const std::vector<Subgroup>& subs,
                                const OrbitMorphism& m1, const OrbitMorphism& m2);

}  // namespace eqc
