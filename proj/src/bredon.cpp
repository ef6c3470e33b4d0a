#include "eqc/bredon.hpp"

#include <cassert>
#include <stdexcept>

#include "eqc/chains.hpp"

namespace eqc {

EquivariantCochain bi_coboundary(const EqContext& ctx, const EquivariantCochain& f) {
    const int n = f.degree;
    EquivariantCochain out;
    out.degree = n + 1;
    out.v.assign(ctx.raw_dim(n + 1), 0);
    const PrimeField& fld = ctx.field;
    for (int h = 0; h < ctx.nsubs(); ++h) {
        const FixedPointSet& fp = ctx.orbit.fps[h];
        const int d = ctx.adim(h);
        for (int loc = 0; loc < fp.count(n + 1); ++loc) {
            const int px = fp.parent_index(n + 1, loc);
            FpVec acc(d, 0);
            const SimplexInstance& f0 = ctx.x.space.face(n + 1, px, 0);
            if (!f0.degenerate()) {
                int l0 = fp.local_index(n, f0.base);
                SimplexInstance e01 =
                    ctx.x.space.face_subset(SimplexInstance{n + 1, px, {}}, 0b11u);
                const Matrix& a = ctx.psi_inv_edge(h, e01);
                FpVec v0 = matvec(a, ctx.value(f.v, h, n, l0));
                for (int c = 0; c < d; ++c) acc[c] = fld.add(acc[c], v0[c]);
            }
            for (int j = 1; j <= n + 1; ++j) {
                const SimplexInstance& fj = ctx.x.space.face(n + 1, px, j);
                if (fj.degenerate()) continue;
                int lj = fp.local_index(n, fj.base);
                const int s = ctx.slot(h, n, lj, 0);
                if (j % 2 == 0)
                    for (int c = 0; c < d; ++c) acc[c] = fld.add(acc[c], f.v[s + c]);
                else
                    for (int c = 0; c < d; ++c) acc[c] = fld.sub(acc[c], f.v[s + c]);
            }
            const int s = ctx.slot(h, n + 1, loc, 0);
            for (int c = 0; c < d; ++c) out.v[s + c] = acc[c];
        }
    }
    return out;
}

EquivariantCochain bi_cup(const EqContext& ctx, const EquivariantCochain& f,
                          const EquivariantCochain& g) {
    const int n = f.degree, m = g.degree;
    EquivariantCochain out;
    out.degree = n + m;
    out.v.assign(ctx.raw_dim(n + m), 0);
    const PrimeField& fld = ctx.field;
    for (int h = 0; h < ctx.nsubs(); ++h) {
        const FixedPointSet& fp = ctx.orbit.fps[h];
        const int d = ctx.adim(h);
        for (int loc = 0; loc < fp.count(n + m); ++loc) {
            const int px = fp.parent_index(n + m, loc);
            SimplexInstance inst{n + m, px, {}};
            SimplexInstance fr = front_face(ctx.x.space, inst, n);
            if (fr.degenerate()) continue;
            SimplexInstance bk = back_face(ctx.x.space, inst, m);
            if (bk.degenerate()) continue;
            FpVec a = ctx.value(f.v, h, n, fp.local_index(n, fr.base));
            FpVec b = ctx.value(g.v, h, m, fp.local_index(m, bk.base));
            if (n > 0) {
                // Transport the back value from its base vertex (vertex n of
                // the ambient simplex) along the edge from vertex 0.
                SimplexInstance e0n = ctx.x.space.face_subset(inst, 1u | (1u << n));
                b = matvec(ctx.psi_inv_edge(h, e0n), b);
            }
            FpVec prod = ctx.sys.alg[h].mul(a, b, fld);
            const int s = ctx.slot(h, n + m, loc, 0);
            for (int c = 0; c < d; ++c) out.v[s + c] = prod[c];
        }
    }
    return out;
}

Matrix compat_constraints(const EqContext& ctx, int n) {
    const PrimeField& fld = ctx.field;
    std::vector<FpVec> rows;
    for (size_t mi = 0; mi < ctx.orbit.morphisms.size(); ++mi) {
        const OrbitMorphism& m = ctx.orbit.morphisms[mi];
        if (m.src == m.dst && m.rep == 0) continue;  // identity morphism
        const int h = m.src, k = m.dst;
        const Matrix& t = ctx.sys.transfer[mi];
        const int dh = ctx.adim(h), dk = ctx.adim(k);
        const FixedPointSet& fpk = ctx.orbit.fps[k];
        for (int y = 0; y < fpk.count(n); ++y) {
            const int hy = ctx.orbit.trans[mi][n][y];
            for (int r = 0; r < dh; ++r) {
                FpVec row(ctx.raw_dim(n), 0);
                int sa = ctx.slot(h, n, hy, r);
                row[sa] = fld.add(row[sa], 1);
                for (int c = 0; c < dk; ++c) {
                    int sb = ctx.slot(k, n, y, c);
                    row[sb] = fld.sub(row[sb], t.at(r, c));
                }
                bool nonzero = false;
                for (uint8_t v : row)
                    if (v) {
                        nonzero = true;
                        break;
                    }
                if (nonzero) rows.push_back(std::move(row));
            }
        }
    }
    Matrix out(static_cast<int>(rows.size()), ctx.raw_dim(n), ctx.sys.p);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < ctx.raw_dim(n); ++c) out.at(static_cast<int>(r), c) = rows[r][c];
    return out;
}

bool is_compatible(const EqContext& ctx, const EquivariantCochain& f) {
    Matrix cons = compat_constraints(ctx, f.degree);
    if (cons.rows() == 0) return true;
    FpVec r = matvec(cons, f.v);
    for (uint8_t v : r)
        if (v) return false;
    return true;
}

// --- EqModel ----------------------------------------------------------------

EqModel::EqModel(const EqContext& ctx, DiffKind kind) : ctx_(&ctx), kind_(kind) {
    const int top = ctx.top_dim();
    charts_.resize(top + 1);
    delta_.resize(top);
    pres_.resize(top);
    image_.resize(top + 1);
}

void EqModel::build_chart(int n) {
    DegreeChart& c = charts_[n];
    if (c.built) return;
    Matrix cons = compat_constraints(*ctx_, n);
    if (cons.rows() == 0) {
        c.identity = true;
    } else {
        c.basis = nullspace(cons, &c.freecols);
    }
    c.built = true;
}

const EqModel::DegreeChart& EqModel::chart(int n) {
    build_chart(n);
    return charts_[n];
}

int EqModel::coord_dim(int n) {
    const DegreeChart& c = chart(n);
    return c.identity ? ctx_->raw_dim(n) : c.basis.cols();
}

FpVec EqModel::to_coords(int n, const FpVec& raw) {
    const DegreeChart& c = chart(n);
    if (c.identity) return raw;
    FpVec out(c.freecols.size());
    for (size_t i = 0; i < c.freecols.size(); ++i) out[i] = raw[c.freecols[i]];
    return out;
}

FpVec EqModel::from_coords(int n, const FpVec& coords) {
    const DegreeChart& c = chart(n);
    if (c.identity) return coords;
    return matvec(c.basis, coords);
}

bool EqModel::in_subspace(int n, const FpVec& raw) {
    const DegreeChart& c = chart(n);
    if (c.identity) return true;
    return from_coords(n, to_coords(n, raw)) == raw;
}

EquivariantCochain EqModel::apply_delta(const EquivariantCochain& f) const {
    if (kind_ == DiffKind::Orbit) return bi_coboundary(*ctx_, f);
    return mu_inv(*ctx_, rho_coboundary(*ctx_, mu(*ctx_, f)));
}

EquivariantCochain EqModel::apply_cup(const EquivariantCochain& f,
                                      const EquivariantCochain& g) const {
    if (kind_ == DiffKind::Orbit) return bi_cup(*ctx_, f, g);
    return mu_inv(*ctx_, rho_cup(*ctx_, mu(*ctx_, f), mu(*ctx_, g)));
}

const Matrix& EqModel::delta_coords(int n) {
    if (n < 0 || n >= ctx_->top_dim()) throw std::out_of_range("delta_coords: degree");
    if (delta_[n]) return *delta_[n];
    const DegreeChart& src = chart(n);
    const DegreeChart& dst = chart(n + 1);
    const int cd = coord_dim(n);
    Matrix d(coord_dim(n + 1), cd, ctx_->sys.p);
    if (src.identity && dst.identity && kind_ == DiffKind::Orbit) {
        // Assemble directly from the face tables: one column block per
        // cochain slot, transposed into rows of the dense matrix.
        const EqContext& ctx = *ctx_;
        const PrimeField& fld = ctx.field;
        for (int h = 0; h < ctx.nsubs(); ++h) {
            const FixedPointSet& fp = ctx.orbit.fps[h];
            const int ad = ctx.adim(h);
            for (int loc = 0; loc < fp.count(n + 1); ++loc) {
                const int px = fp.parent_index(n + 1, loc);
                const int r0 = ctx.slot(h, n + 1, loc, 0);
                const SimplexInstance& f0 = ctx.x.space.face(n + 1, px, 0);
                if (!f0.degenerate()) {
                    int l0 = fp.local_index(n, f0.base);
                    SimplexInstance e01 =
                        ctx.x.space.face_subset(SimplexInstance{n + 1, px, {}}, 0b11u);
                    const Matrix& a = ctx.psi_inv_edge(h, e01);
                    const int c0 = ctx.slot(h, n, l0, 0);
                    for (int r = 0; r < ad; ++r)
                        for (int c = 0; c < ad; ++c)
                            d.at(r0 + r, c0 + c) = fld.add(d.at(r0 + r, c0 + c), a.at(r, c));
                }
                for (int j = 1; j <= n + 1; ++j) {
                    const SimplexInstance& fj = ctx.x.space.face(n + 1, px, j);
                    if (fj.degenerate()) continue;
                    const int cj = ctx.slot(h, n, fp.local_index(n, fj.base), 0);
                    const uint8_t s = fld.sign(j);
                    for (int r = 0; r < ad; ++r)
                        d.at(r0 + r, cj + r) = fld.add(d.at(r0 + r, cj + r), s);
                }
            }
        }
    } else {
        for (int j = 0; j < cd; ++j) {
            // Column j of the source chart basis, read off directly; a
            // matrix-vector product against a unit vector would scan the
            // whole basis for every column.
            FpVec raw;
            if (src.identity) {
                raw.assign(ctx_->raw_dim(n), 0);
                raw[j] = 1;
            } else {
                raw.resize(src.basis.rows());
                for (int r = 0; r < src.basis.rows(); ++r) raw[r] = src.basis.at(r, j);
            }
            EquivariantCochain img = apply_delta(EquivariantCochain{n, std::move(raw)});
            assert(in_subspace(n + 1, img.v));
            FpVec cc = to_coords(n + 1, img.v);
            for (int r = 0; r < d.rows(); ++r) d.at(r, j) = cc[r];
        }
    }
    delta_[n] = std::move(d);
    return *delta_[n];
}

const CohomologyPresentation& EqModel::presentation(int n) {
    if (n < 0 || n > max_degree()) throw std::out_of_range("presentation: degree");
    if (pres_[n]) return *pres_[n];
    Matrix prev = n == 0 ? Matrix(coord_dim(0), 0, ctx_->sys.p) : delta_coords(n - 1);
    pres_[n] = cohomology(prev, delta_coords(n));
    return *pres_[n];
}

std::vector<int> EqModel::betti(int nmax) {
    std::vector<int> out;
    for (int n = 0; n <= nmax; ++n) out.push_back(presentation(n).dim);
    return out;
}

bool EqModel::is_cocycle(const EquivariantCochain& f) const {
    EquivariantCochain d = apply_delta(f);
    for (uint8_t v : d.v)
        if (v) return false;
    return true;
}

RowSpan& EqModel::image_span(int n) {
    if (!image_[n]) {
        RowSpan span(coord_dim(n), ctx_->sys.p);
        if (n >= 1) {
            const Matrix& d = delta_coords(n - 1);
            for (int j = 0; j < d.cols(); ++j) {
                FpVec col(d.rows());
                for (int r = 0; r < d.rows(); ++r) col[r] = d.at(r, j);
                span.insert(std::move(col));
            }
        }
        image_[n] = std::move(span);
    }
    return *image_[n];
}

bool EqModel::classes_equal(int n, const FpVec& raw_a, const FpVec& raw_b) {
    EquivariantCochain a{n, raw_a}, b{n, raw_b};
    if (!in_subspace(n, raw_a) || !in_subspace(n, raw_b))
        throw std::invalid_argument("classes_equal: inputs must be equivariant");
    if (!is_cocycle(a) || !is_cocycle(b))
        throw std::invalid_argument("classes_equal: inputs must be cocycles");
    const PrimeField& fld = ctx_->field;
    FpVec diff(raw_a.size());
    for (size_t i = 0; i < raw_a.size(); ++i) diff[i] = fld.sub(raw_a[i], raw_b[i]);
    FpVec dc = to_coords(n, diff);
    return image_span(n).contains(dc);
}

FpVec EqModel::class_of(int n, const FpVec& raw) {
    return presentation(n).class_of(to_coords(n, raw));
}

FpVec EqModel::rep_of(int n, const FpVec& cls) {
    return from_coords(n, presentation(n).representative_of(cls));
}

EquivariantCochain EqModel::random_compatible(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(0, ctx_->sys.p - 1);
    FpVec coords(coord_dim(n));
    for (auto& v : coords) v = static_cast<uint8_t>(dist(rng));
    return EquivariantCochain{n, from_coords(n, coords)};
}

}  // namespace eqc
