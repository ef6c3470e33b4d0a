#include "eqc/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace eqc {

SimplexInstance apply_degeneracy(const SimplexInstance& x, int j) {
    if (j < 0 || j > x.dim())
        throw std::invalid_argument("apply_degeneracy: index out of range");
    SimplexInstance y = x;
    // Push s_j inward past larger-or-equal indices: s_j s_b = s_{b+1} s_j
    // for j <= b, so the passed entries each grow by one.
    size_t pos = 0;
    while (pos < y.word.size() && j <= y.word[pos]) {
        ++y.word[pos];
        ++pos;
    }
    y.word.insert(y.word.begin() + pos, j);
    return y;
}

SimplexInstance PresentedSimplicialSet::apply_face(const SimplexInstance& x, int i) const {
    if (i < 0 || i > x.dim() || x.dim() == 0)
        throw std::invalid_argument("apply_face: index out of range");
    if (x.word.empty())
        return face(x.base_dim, x.base, i);
    int j = x.word.front();
    SimplexInstance rest = x;
    rest.word.erase(rest.word.begin());
    if (i == j || i == j + 1)
        return rest;  // d_j s_j = d_{j+1} s_j = id
    if (i < j)
        return apply_degeneracy(apply_face(rest, i), j - 1);
    return apply_degeneracy(apply_face(rest, i - 1), j);
}

SimplexInstance PresentedSimplicialSet::face_subset(const SimplexInstance& x,
                                                    uint32_t keep_mask) const {
    SimplexInstance cur = x;
    // Remove unwanted vertices from the top down; vertex t still sits at
    // index t when everything below it is untouched.
    for (int t = x.dim(); t >= 0; --t)
        if (!(keep_mask >> t & 1u))
            cur = apply_face(cur, t);
    return cur;
}

SimplexInstance PresentedSimplicialSet::face_subset(int n, int idx, uint32_t keep_mask) const {
    return face_subset(SimplexInstance{n, idx, {}}, keep_mask);
}

void PresentedSimplicialSet::validate() const {
    for (int n = 1; n <= top_dim(); ++n) {
        if (static_cast<int>(faces_[n].size()) != counts_[n] * (n + 1))
            throw std::invalid_argument("simplicial set: face table has wrong size");
        for (int idx = 0; idx < counts_[n]; ++idx)
            for (int i = 0; i <= n; ++i) {
                const SimplexInstance& f = face(n, idx, i);
                if (f.dim() != n - 1 || f.base_dim < 0 || f.base < 0 ||
                    f.base >= count(f.base_dim))
                    throw std::invalid_argument("simplicial set: face out of range");
                for (size_t w = 0; w + 1 < f.word.size(); ++w)
                    if (f.word[w] <= f.word[w + 1])
                        throw std::invalid_argument(
                            "simplicial set: degeneracy word not canonical");
            }
    }
    for (int n = 2; n <= top_dim(); ++n)
        for (int idx = 0; idx < counts_[n]; ++idx)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexInstance lhs = apply_face(face(n, idx, j), i);
                    SimplexInstance rhs = apply_face(face(n, idx, i), j - 1);
                    if (!(lhs == rhs))
                        throw std::invalid_argument(
                            "simplicial set: simplicial identity d_i d_j = d_{j-1} d_i fails");
                }
}

namespace {

int binom(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return static_cast<int>(r);
}

}  // namespace

uint32_t simplex_subset_mask(int n, int dim, int idx) {
    // Masks with dim+1 bits among n+1, enumerated in increasing numeric order.
    int seen = 0;
    for (uint32_t m = 0; m < (1u << (n + 1)); ++m)
        if (std::popcount(m) == dim + 1) {
            if (seen == idx)
                return m;
            ++seen;
        }
    throw std::out_of_range("simplex_subset_mask: index out of range");
}

int simplex_subset_index(int n, uint32_t mask) {
    int cnt = std::popcount(mask);
    int seen = 0;
    for (uint32_t m = 0; m < mask; ++m)
        if (std::popcount(m) == cnt)
            ++seen;
    (void)n;
    return seen;
}

PresentedSimplicialSet standard_simplex(int n) {
    std::vector<int> counts(n + 1);
    std::vector<std::vector<uint32_t>> masks(n + 1);
    for (int d = 0; d <= n; ++d) {
        counts[d] = binom(n + 1, d + 1);
        for (uint32_t m = 0; m < (1u << (n + 1)); ++m)
            if (std::popcount(m) == d + 1)
                masks[d].push_back(m);
    }
    std::vector<std::vector<SimplexInstance>> faces(n + 1);
    for (int d = 1; d <= n; ++d) {
        faces[d].reserve(static_cast<size_t>(counts[d]) * (d + 1));
        for (int idx = 0; idx < counts[d]; ++idx) {
            uint32_t m = masks[d][idx];
            for (int i = 0; i <= d; ++i) {
                // Clear the i-th lowest set bit.
                uint32_t mm = m;
                for (int k = 0; k < i; ++k)
                    mm &= mm - 1;
                uint32_t f = m & ~(mm & ~(mm - 1));
                int fidx = static_cast<int>(
                    std::lower_bound(masks[d - 1].begin(), masks[d - 1].end(), f) -
                    masks[d - 1].begin());
                faces[d].push_back(SimplexInstance{d - 1, fidx, {}});
            }
        }
    }
    return PresentedSimplicialSet(std::move(counts), std::move(faces));
}

std::vector<int> NerveData::tuple_of(int n, int idx) const {
    std::vector<int> t(n);
    int m = gamma.n - 1;
    for (int k = 0; k < n; ++k) {
        t[k] = idx % m + 1;
        idx /= m;
    }
    return t;
}

int NerveData::index_of(const std::vector<int>& tuple) const {
    int m = gamma.n - 1;
    int idx = 0;
    for (int k = static_cast<int>(tuple.size()) - 1; k >= 0; --k) {
        if (tuple[k] < 1 || tuple[k] >= gamma.n)
            throw std::invalid_argument("NerveData::index_of: entry is not non-identity");
        idx = idx * m + (tuple[k] - 1);
    }
    return idx;
}

NerveData build_nerve(const FiniteGroup& gamma, int top_dim) {
    gamma.validate();
    if (gamma.n < 2)
        throw std::invalid_argument("build_nerve: group must be nontrivial");
    NerveData nd;
    nd.gamma = gamma;
    nd.top_dim = top_dim;

    std::vector<int> counts(top_dim + 1);
    counts[0] = 1;
    for (int n = 1; n <= top_dim; ++n)
        counts[n] = counts[n - 1] * (gamma.n - 1);

    std::vector<std::vector<SimplexInstance>> faces(top_dim + 1);
    for (int n = 1; n <= top_dim; ++n) {
        faces[n].reserve(static_cast<size_t>(counts[n]) * (n + 1));
        for (int idx = 0; idx < counts[n]; ++idx) {
            std::vector<int> t(n);
            int rem = idx;
            for (int k = 0; k < n; ++k) {
                t[k] = rem % (gamma.n - 1) + 1;
                rem /= gamma.n - 1;
            }
            for (int i = 0; i <= n; ++i) {
                std::vector<int> ft;
                int merged = -1;
                if (i == 0)
                    ft.assign(t.begin() + 1, t.end());
                else if (i == n)
                    ft.assign(t.begin(), t.end() - 1);
                else {
                    ft = t;
                    merged = gamma.mul(t[i - 1], t[i]);
                    ft[i - 1] = merged;
                    ft.erase(ft.begin() + i);
                }
                if (merged == 0) {
                    // Adjacent entries collapsed to the identity: the face is
                    // s_{i-1} of the tuple with the identity removed.
                    ft.erase(ft.begin() + (i - 1));
                    int m = gamma.n - 1;
                    int fidx = 0;
                    for (int k = static_cast<int>(ft.size()) - 1; k >= 0; --k)
                        fidx = fidx * m + (ft[k] - 1);
                    faces[n].push_back(SimplexInstance{n - 2, fidx, {i - 1}});
                } else {
                    int m = gamma.n - 1;
                    int fidx = 0;
                    for (int k = static_cast<int>(ft.size()) - 1; k >= 0; --k)
                        fidx = fidx * m + (ft[k] - 1);
                    faces[n].push_back(SimplexInstance{n - 1, fidx, {}});
                }
            }
        }
    }
    nd.space = PresentedSimplicialSet(std::move(counts), std::move(faces));
    return nd;
}

void GSimplicialSet::validate() const {
    group.validate();
    space.validate();
    if (static_cast<int>(action.size()) != space.top_dim() + 1)
        throw std::invalid_argument("GSimplicialSet: action table missing dimensions");
    for (int n = 0; n <= space.top_dim(); ++n) {
        int c = space.count(n);
        if (static_cast<int>(action[n].size()) != group.n * c)
            throw std::invalid_argument("GSimplicialSet: action table has wrong size");
        for (int idx = 0; idx < c; ++idx)
            if (act(0, n, idx) != idx)
                throw std::invalid_argument("GSimplicialSet: identity does not act trivially");
        for (int g = 0; g < group.n; ++g) {
            std::vector<char> hit(c, 0);
            for (int idx = 0; idx < c; ++idx) {
                int im = act(g, n, idx);
                if (im < 0 || im >= c || hit[im])
                    throw std::invalid_argument("GSimplicialSet: action is not a permutation");
                hit[im] = 1;
            }
            for (int h = 0; h < group.n; ++h)
                for (int idx = 0; idx < c; ++idx)
                    if (act(group.mul(g, h), n, idx) != act(g, n, act(h, n, idx)))
                        throw std::invalid_argument("GSimplicialSet: action is not a left action");
        }
    }
    for (int n = 1; n <= space.top_dim(); ++n)
        for (int g = 0; g < group.n; ++g)
            for (int idx = 0; idx < space.count(n); ++idx)
                for (int i = 0; i <= n; ++i) {
                    SimplexInstance lhs = act(g, space.face(n, idx, i));
                    const SimplexInstance& rhs = space.face(n, act(g, n, idx), i);
                    if (!(lhs == rhs))
                        throw std::invalid_argument(
                            "GSimplicialSet: action does not commute with faces");
                }
    if (space.count(0) != 1)
        throw std::invalid_argument("GSimplicialSet: exactly one vertex is required");
}

GSimplicialSet with_trivial_action(PresentedSimplicialSet space, FiniteGroup g) {
    GSimplicialSet x;
    x.space = std::move(space);
    x.group = std::move(g);
    x.action.resize(x.space.top_dim() + 1);
    for (int n = 0; n <= x.space.top_dim(); ++n) {
        x.action[n].resize(static_cast<size_t>(x.group.n) * x.space.count(n));
        for (int gg = 0; gg < x.group.n; ++gg)
            for (int idx = 0; idx < x.space.count(n); ++idx)
                x.action[n][gg * x.space.count(n) + idx] = idx;
    }
    return x;
}

GSimplicialSet nerve_with_action(const NerveData& nerve, FiniteGroup g,
                                 const std::vector<std::vector<int>>& auts) {
    if (static_cast<int>(auts.size()) != g.n)
        throw std::invalid_argument("nerve_with_action: one automorphism per group element");
    for (int gg = 0; gg < g.n; ++gg) {
        const std::vector<int>& a = auts[gg];
        if (static_cast<int>(a.size()) != nerve.gamma.n || a[0] != 0)
            throw std::invalid_argument("nerve_with_action: not an automorphism table");
        for (int x = 0; x < nerve.gamma.n; ++x)
            for (int y = 0; y < nerve.gamma.n; ++y)
                if (a[nerve.gamma.mul(x, y)] != nerve.gamma.mul(a[x], a[y]))
                    throw std::invalid_argument(
                        "nerve_with_action: map is not a group automorphism");
    }
    GSimplicialSet x;
    x.space = nerve.space;
    x.group = std::move(g);
    x.action.resize(nerve.top_dim + 1);
    for (int n = 0; n <= nerve.top_dim; ++n) {
        int c = x.space.count(n);
        x.action[n].resize(static_cast<size_t>(x.group.n) * c);
        for (int gg = 0; gg < x.group.n; ++gg)
            for (int idx = 0; idx < c; ++idx) {
                std::vector<int> t = nerve.tuple_of(n, idx);
                for (int& e : t)
                    e = auts[gg][e];
                x.action[n][gg * c + idx] = nerve.index_of(t);
            }
    }
    return x;
}

FixedPointSet fixed_points(const GSimplicialSet& x, const Subgroup& h) {
    FixedPointSet fp;
    int top = x.space.top_dim();
    fp.members.resize(top + 1);
    fp.local.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        fp.local[n].assign(x.space.count(n), -1);
        for (int idx = 0; idx < x.space.count(n); ++idx) {
            bool fixed = true;
            for (int g : h.elems)
                if (x.act(g, n, idx) != idx) {
                    fixed = false;
                    break;
                }
            if (fixed) {
                fp.local[n][idx] = static_cast<int>(fp.members[n].size());
                fp.members[n].push_back(idx);
            }
        }
    }
    return fp;
}

PresentedSimplicialSet materialize(const GSimplicialSet& x, const FixedPointSet& fp) {
    int top = x.space.top_dim();
    std::vector<int> counts(top + 1);
    for (int n = 0; n <= top; ++n)
        counts[n] = fp.count(n);
    std::vector<std::vector<SimplexInstance>> faces(top + 1);
    for (int n = 1; n <= top; ++n)
        for (int loc = 0; loc < fp.count(n); ++loc) {
            int idx = fp.parent_index(n, loc);
            for (int i = 0; i <= n; ++i) {
                SimplexInstance f = x.space.face(n, idx, i);
                int floc = fp.local_index(f.base_dim, f.base);
                if (floc < 0)
                    throw std::logic_error("materialize: face of a fixed simplex is not fixed");
                f.base = floc;
                faces[n].push_back(std::move(f));
            }
        }
    return PresentedSimplicialSet(std::move(counts), std::move(faces));
}

std::vector<std::vector<int>> translation_map(const GSimplicialSet& x,
                                              const FixedPointSet& fp_h,
                                              const FixedPointSet& fp_k, int rep) {
    int top = x.space.top_dim();
    std::vector<std::vector<int>> map(top + 1);
    for (int n = 0; n <= top; ++n) {
        map[n].resize(fp_k.count(n));
        for (int loc = 0; loc < fp_k.count(n); ++loc) {
            int image = x.act(rep, n, fp_k.parent_index(n, loc));
            int hloc = fp_h.local_index(n, image);
            if (hloc < 0)
                throw std::logic_error(
                    "translation_map: translate of a K-fixed simplex is not H-fixed");
            map[n][loc] = hloc;
        }
    }
    return map;
}

}  // namespace eqc
