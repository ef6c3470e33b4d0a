#include "eqc/cover.hpp"

#include <stdexcept>

namespace eqc {

DeckWord twist(const EqContext& ctx, int h, const SimplexInstance& x) {
    SimplexInstance e = ctx.x.space.face_subset(x, 0b11u);
    if (e.degenerate()) return {};
    int loc = ctx.orbit.fps[h].local_index(1, e.base);
    if (loc < 0) throw std::logic_error("twist: leading edge not fixed");
    return DeckWord{DeckLetter{loc, -1}};
}

CoverSimplex cover_face(const EqContext& ctx, int h, const CoverSimplex& s, int i) {
    CoverSimplex out;
    out.word = s.word;
    if (i == 0) {
        DeckWord t = twist(ctx, h, s.base);
        out.word.insert(out.word.end(), t.begin(), t.end());
    }
    out.base = ctx.x.space.apply_face(s.base, i);
    return out;
}

CoverSimplex cover_face_subset(const EqContext& ctx, int h, const CoverSimplex& s,
                               uint32_t keep_mask) {
    CoverSimplex cur = s;
    for (int t = cur.base.dim(); t >= 0; --t)
        if (!((keep_mask >> t) & 1u)) cur = cover_face(ctx, h, cur, t);
    return cur;
}

Matrix act_matrix(const EqContext& ctx, int h, const DeckWord& w) {
    Matrix m = ctx.ident(h);
    for (const DeckLetter& l : w)
        m = matmul(m, l.exp >= 0 ? ctx.psi(h, l.edge) : ctx.psi_inv(h, l.edge));
    return m;
}

FpVec evaluate(const EqContext& ctx, const TwistedCochain& fc, int h, const CoverSimplex& s) {
    const int d = ctx.adim(h);
    if (s.base.degenerate()) return FpVec(d, 0);
    int n = s.base.base_dim;
    int loc = ctx.orbit.fps[h].local_index(n, s.base.base);
    if (loc < 0) throw std::logic_error("evaluate: base not fixed by subgroup");
    FpVec val = ctx.value(fc.v, h, n, loc);
    if (s.word.empty()) return val;
    return matvec(act_matrix(ctx, h, s.word), val);
}

TwistedCochain rho_coboundary(const EqContext& ctx, const TwistedCochain& fc) {
    const int n = fc.degree;
    TwistedCochain out;
    out.degree = n + 1;
    out.v.assign(ctx.raw_dim(n + 1), 0);
    const PrimeField& f = ctx.field;
    for (int h = 0; h < ctx.nsubs(); ++h) {
        const FixedPointSet& fp = ctx.orbit.fps[h];
        const int d = ctx.adim(h);
        for (int loc = 0; loc < fp.count(n + 1); ++loc) {
            CoverSimplex lift = canonical_lift(SimplexInstance{n + 1, fp.parent_index(n + 1, loc), {}});
            FpVec acc(d, 0);
            for (int i = 0; i <= n + 1; ++i) {
                FpVec term = evaluate(ctx, fc, h, cover_face(ctx, h, lift, i));
                if (i % 2 == 0)
                    for (int c = 0; c < d; ++c) acc[c] = f.add(acc[c], term[c]);
                else
                    for (int c = 0; c < d; ++c) acc[c] = f.sub(acc[c], term[c]);
            }
            const int s = ctx.slot(h, n + 1, loc, 0);
            for (int c = 0; c < d; ++c) out.v[s + c] = acc[c];
        }
    }
    return out;
}

TwistedCochain rho_cup(const EqContext& ctx, const TwistedCochain& fc,
                       const TwistedCochain& gc) {
    const int n = fc.degree, m = gc.degree;
    TwistedCochain out;
    out.degree = n + m;
    out.v.assign(ctx.raw_dim(n + m), 0);
    const PrimeField& f = ctx.field;
    for (int h = 0; h < ctx.nsubs(); ++h) {
        const FixedPointSet& fp = ctx.orbit.fps[h];
        const int d = ctx.adim(h);
        for (int loc = 0; loc < fp.count(n + m); ++loc) {
            CoverSimplex lift = canonical_lift(SimplexInstance{n + m, fp.parent_index(n + m, loc), {}});
            // Front factor lives on the canonical sheet.
            CoverSimplex front = cover_face_subset(ctx, h, lift, (1u << (n + 1)) - 1u);
            FpVec a = evaluate(ctx, fc, h, front);
            // Back factor at the n-fold iterated 0th cover face.
            CoverSimplex back = lift;
            for (int i = 0; i < n; ++i) back = cover_face(ctx, h, back, 0);
            FpVec b = evaluate(ctx, gc, h, back);
            FpVec prod = ctx.sys.alg[h].mul(a, b, f);
            const int s = ctx.slot(h, n + m, loc, 0);
            for (int c = 0; c < d; ++c) out.v[s + c] = prod[c];
        }
    }
    return out;
}

TwistedCochain mu(const EqContext& ctx, const EquivariantCochain& f) {
    (void)ctx;
    return TwistedCochain{f.degree, f.v};
}

EquivariantCochain mu_inv(const EqContext& ctx, const TwistedCochain& fc) {
    (void)ctx;
    return EquivariantCochain{fc.degree, fc.v};
}

}  // namespace eqc
