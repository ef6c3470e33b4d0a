#include "eqc/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace eqc {

int FiniteGroup::inv(int a) const {
    for (int b = 0; b < n; ++b)
        if (mul(a, b) == 0)
            return b;
    throw std::domain_error("FiniteGroup: element has no inverse");
}

void FiniteGroup::validate() const {
    if (n < 1 || static_cast<int>(mult.size()) != n * n)
        throw std::invalid_argument("FiniteGroup: bad table size");
    for (int v : mult)
        if (v < 0 || v >= n)
            throw std::invalid_argument("FiniteGroup: table entry out of range");
    for (int a = 0; a < n; ++a)
        if (mul(0, a) != a || mul(a, 0) != a)
            throw std::invalid_argument("FiniteGroup: element 0 is not the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("FiniteGroup: table is not associative");
    for (int a = 0; a < n; ++a)
        inv(a);  // throws when missing
}

FiniteGroup FiniteGroup::trivial() {
    FiniteGroup g;
    g.n = 1;
    g.mult = {0};
    g.names = {"e"};
    return g;
}

FiniteGroup FiniteGroup::cyclic(int m) {
    FiniteGroup g;
    g.n = m;
    g.mult.resize(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            g.mult[a * m + b] = (a + b) % m;
    for (int a = 0; a < m; ++a)
        g.names.push_back(a == 0 ? "e" : "g" + std::to_string(a));
    return g;
}

bool Subgroup::contains(int g) const {
    return std::binary_search(elems.begin(), elems.end(), g);
}

std::string Subgroup::label() const {
    std::string s = "{";
    for (size_t i = 0; i < elems.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(elems[i]);
    }
    return s + "}";
}

namespace {

std::vector<int> closure(const FiniteGroup& g, std::vector<int> gens) {
    std::set<int> have(gens.begin(), gens.end());
    have.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(have.begin(), have.end());
        for (int a : cur)
            for (int b : cur) {
                if (have.insert(g.mul(a, b)).second)
                    grew = true;
            }
    }
    return std::vector<int>(have.begin(), have.end());
}

}  // namespace

std::vector<Subgroup> subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> found;
    found.insert(closure(g, {}));
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<std::vector<int>> cur = found;
        for (const std::vector<int>& h : cur)
            for (int x = 0; x < g.n; ++x) {
                std::vector<int> gens = h;
                gens.push_back(x);
                if (found.insert(closure(g, gens)).second)
                    grew = true;
            }
    }
    std::vector<Subgroup> out;
    for (const std::vector<int>& e : found)
        out.push_back(Subgroup{e});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elems.size() != b.elems.size())
            return a.elems.size() < b.elems.size();
        return a.elems < b.elems;
    });
    return out;
}

namespace {

// Least element of the coset aK.
int coset_rep(const FiniteGroup& g, const Subgroup& k, int a) {
    int best = g.n;
    for (int h : k.elems)
        best = std::min(best, g.mul(a, h));
    return best;
}

bool subconjugate(const FiniteGroup& g, const Subgroup& h, const Subgroup& k, int a) {
    int ai = g.inv(a);
    for (int x : h.elems)
        if (!k.contains(g.mul(g.mul(ai, x), a)))
            return false;
    return true;
}

}  // namespace

std::vector<OrbitMorphism> orbit_morphisms(const FiniteGroup& g,
                                           const std::vector<Subgroup>& subs) {
    std::vector<OrbitMorphism> out;
    for (int s = 0; s < static_cast<int>(subs.size()); ++s)
        for (int d = 0; d < static_cast<int>(subs.size()); ++d) {
            std::set<int> reps;
            for (int a = 0; a < g.n; ++a)
                if (subconjugate(g, subs[s], subs[d], a))
                    reps.insert(coset_rep(g, subs[d], a));
            for (int r : reps)
                out.push_back(OrbitMorphism{s, d, r});
        }
    return out;
}

OrbitMorphism compose_morphisms(const FiniteGroup& g, const std::vector<Subgroup>& subs,
                                const OrbitMorphism& m1, const OrbitMorphism& m2) {
    if (m1.dst != m2.src)
        throw std::invalid_argument("compose_morphisms: morphisms are not composable");
    // gH -> g a1 K -> g a1 a2 L, so the composite coset is (a1 a2) L.
    int a = g.mul(m1.rep, m2.rep);
    return OrbitMorphism{m1.src, m2.dst, coset_rep(g, subs[m2.dst], a)};
}

}  // namespace eqc
