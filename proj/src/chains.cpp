#include "eqc/chains.hpp"

#include <map>
#include <stdexcept>

namespace eqc {

Matrix ChainComplex::boundary_matrix(int n, int p) const {
    PrimeField f(p);
    int rows = (n - 1 >= 0 && n - 1 <= top_dim()) ? dims[n - 1] : 0;
    int cols = (n >= 0 && n <= top_dim()) ? dims[n] : 0;
    Matrix m(rows, cols, p);
    if (n < 1 || n > top_dim())
        return m;
    for (int idx = 0; idx < cols; ++idx)
        for (auto [tgt, c] : boundary[n][idx])
            m.at(tgt, idx) = f.add(m.at(tgt, idx), f.reduce(c));
    return m;
}

ChainComplex normalized_chains(const PresentedSimplicialSet& x) {
    ChainComplex cc;
    int top = x.top_dim();
    cc.dims.resize(top + 1);
    cc.boundary.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        cc.dims[n] = x.count(n);
        cc.boundary[n].resize(x.count(n));
        if (n == 0)
            continue;
        for (int idx = 0; idx < x.count(n); ++idx) {
            std::map<int, int> acc;
            for (int i = 0; i <= n; ++i) {
                const SimplexInstance& f = x.face(n, idx, i);
                if (f.degenerate())
                    continue;
                acc[f.base] += (i % 2 == 0) ? 1 : -1;
            }
            for (auto [tgt, c] : acc)
                if (c != 0)
                    cc.boundary[n][idx].emplace_back(tgt, c);
        }
    }
    return cc;
}

SimplexInstance front_face(const PresentedSimplicialSet& x, const SimplexInstance& s, int a) {
    if (a < 0 || a > s.dim())
        throw std::invalid_argument("front_face: size out of range");
    return x.face_subset(s, (a == 31 ? ~0u : (1u << (a + 1)) - 1u));
}

SimplexInstance back_face(const PresentedSimplicialSet& x, const SimplexInstance& s, int b) {
    int n = s.dim();
    if (b < 0 || b > n)
        throw std::invalid_argument("back_face: size out of range");
    uint32_t all = (n == 31 ? ~0u : (1u << (n + 1)) - 1u);
    uint32_t low = (n - b == 0) ? 0u : (1u << (n - b)) - 1u;
    return x.face_subset(s, all & ~low);
}

std::vector<std::pair<SimplexInstance, SimplexInstance>> alexander_whitney(
    const PresentedSimplicialSet& x, const SimplexInstance& s) {
    std::vector<std::pair<SimplexInstance, SimplexInstance>> out;
    int n = s.dim();
    out.reserve(n + 1);
    for (int a = 0; a <= n; ++a)
        out.emplace_back(front_face(x, s, a), back_face(x, s, n - a));
    return out;
}

std::vector<std::vector<SimplexInstance>> aw_iterated(const PresentedSimplicialSet& x,
                                                      const SimplexInstance& s, int p) {
    int n = s.dim();
    std::vector<std::vector<SimplexInstance>> out;
    // Enumerate compositions a_1+...+a_p = n by their partial sums.
    std::vector<int> cuts(p + 1, 0);
    cuts[p] = n;
    auto emit = [&]() {
        std::vector<SimplexInstance> word;
        word.reserve(p);
        for (int k = 0; k < p; ++k) {
            uint32_t mask = 0;
            for (int v = cuts[k]; v <= cuts[k + 1]; ++v)
                mask |= 1u << v;
            word.push_back(x.face_subset(s, mask));
        }
        out.push_back(std::move(word));
    };
    // cuts[1] <= cuts[2] <= ... <= cuts[p-1] in [0, n]
    std::vector<int> c(p - 1, 0);
    while (true) {
        for (int k = 1; k < p; ++k)
            cuts[k] = c[k - 1];
        bool mono = true;
        for (int k = 0; k + 1 < p - 1; ++k)
            if (c[k] > c[k + 1])
                mono = false;
        if (mono)
            emit();
        int k = p - 2;
        while (k >= 0 && c[k] == n)
            --k;
        if (k < 0)
            break;
        ++c[k];
        for (int l = k + 1; l < p - 1; ++l)
            c[l] = 0;
    }
    return out;
}

std::vector<std::pair<int, uint32_t>> mask_boundary(uint32_t mask) {
    std::vector<std::pair<int, uint32_t>> out;
    int d = mask_dim(mask);
    if (d <= 0)
        return out;
    int sign = 1;
    uint32_t rest = mask;
    while (rest) {
        uint32_t bit = rest & ~(rest - 1);
        out.emplace_back(sign, mask & ~bit);
        sign = -sign;
        rest &= rest - 1;
    }
    return out;
}

std::vector<SignedWord> word_boundary(const MaskWord& w) {
    std::vector<SignedWord> out;
    int presign = 1;
    for (size_t k = 0; k < w.size(); ++k) {
        for (auto [s, f] : mask_boundary(w[k])) {
            SignedWord sw;
            sw.sign = presign * s;
            sw.word = w;
            sw.word[k] = f;
            out.push_back(std::move(sw));
        }
        if (mask_dim(w[k]) % 2 == 1)
            presign = -presign;
    }
    return out;
}

std::vector<MaskWord> aw_iterated_masks(int j, int p) {
    std::vector<MaskWord> out;
    std::vector<int> c(p - 1, 0);
    while (true) {
        bool mono = true;
        for (int k = 0; k + 1 < p - 1; ++k)
            if (c[k] > c[k + 1])
                mono = false;
        if (mono) {
            MaskWord w(p);
            int prev = 0;
            for (int k = 0; k < p; ++k) {
                int hi = (k == p - 1) ? j : c[k];
                uint32_t mask = 0;
                for (int v = prev; v <= hi; ++v)
                    mask |= 1u << v;
                w[k] = mask;
                prev = hi;
            }
            out.push_back(std::move(w));
        }
        int k = p - 2;
        while (k >= 0 && c[k] == j)
            --k;
        if (k < 0)
            break;
        ++c[k];
        for (int l = k + 1; l < p - 1; ++l)
            c[l] = 0;
    }
    return out;
}

std::optional<std::pair<int, uint32_t>> ConeContraction::h(uint32_t mask) const {
    if (mask & apex_mask())
        return std::nullopt;
    if (apex == 0)
        return std::make_pair(1, mask | 1u);
    // Apex at the top vertex: the cone goes on the right, with sign
    // (-1)^(dim+1) so that d h + h d = id - (unit)(augmentation).
    int sign = (mask_dim(mask) % 2 == 0) ? -1 : 1;
    return std::make_pair(sign, mask | apex_mask());
}

std::vector<SignedWord> tensor_contraction(const ConeContraction& h, const MaskWord& w) {
    std::vector<SignedWord> out;
    for (size_t k = 0; k < w.size(); ++k) {
        if (auto hv = h.h(w[k])) {
            SignedWord sw;
            sw.sign = hv->first;
            sw.word = w;
            for (size_t l = 0; l < k; ++l)
                sw.word[l] = h.apex_mask();
            sw.word[k] = hv->second;
            out.push_back(std::move(sw));
        }
        if (mask_dim(w[k]) != 0)
            break;  // positive degree kills the augmentation prefix
    }
    return out;
}

}  // namespace eqc
