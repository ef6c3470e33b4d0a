#include "eqc/steenrod.hpp"

#include <stdexcept>
#include <unordered_map>

#include "eqc/chains.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eqc {

uint8_t power_scalar(const PrimeField& f, int q, int s) {
    const int p = f.p();
    if (p == 2) return 1;
    const int m = (p - 1) / 2;
    // m! mod p, then (m!)^q.
    uint8_t fact = 1;
    for (int i = 2; i <= m; ++i) fact = f.mul(fact, f.reduce(i));
    uint8_t scal = f.pow(fact, q);
    const long long r = static_cast<long long>(s) + 1ll * m * q * (q + 1) / 2;
    if (r % 2 != 0) scal = f.neg(scal);
    return scal;
}

SteenrodEngine::SteenrodEngine(const EqContext& ctx, PhiTable& phi)
    : ctx_(&ctx), phi_(&phi) {
    if (phi.options().p != ctx.field.p())
        throw std::invalid_argument("SteenrodEngine: table prime != coefficient prime");
}

int SteenrodEngine::d_index(int s, int q, bool beta) const {
    const int p = ctx_->field.p();
    if (p == 2) {
        if (beta) throw std::invalid_argument("beta powers need odd p");
        return q - s;
    }
    return (q - 2 * s) * (p - 1) - (beta ? 1 : 0);
}

int SteenrodEngine::target_degree(int s, int q, bool beta) const {
    const int p = ctx_->field.p();
    if (p == 2) return q + s;
    return q + 2 * s * (p - 1) + (beta ? 1 : 0);
}

const std::vector<SteenrodEngine::MergedTerm>& SteenrodEngine::slice(int i, int n, int q) {
    const auto key = std::make_tuple(i, n, q);
    auto it = slices_.find(key);
    if (it != slices_.end()) return it->second;

    const int p = ctx_->field.p();
    const PrimeField& f = ctx_->field;
    const PhiEntry& e = phi_->entry(i, n);
    const size_t w0 = PhiTable::w0_size(e);
    std::map<std::array<uint32_t, kMaxFactors>, uint8_t> acc;
    for (size_t t = 0; t < w0; ++t) {
        const PhiTerm& term = e[t];
        bool ok = true;
        for (int l = 0; l < p && ok; ++l) ok = mask_dim(term.m[l]) == q;
        if (!ok) continue;
        uint8_t& c = acc[term.m];
        c = f.add(c, term.c);
    }
    std::vector<MergedTerm> out;
    out.reserve(acc.size());
    for (const auto& kv : acc)
        if (kv.second) out.push_back(MergedTerm{kv.second, kv.first});
    return slices_.emplace(key, std::move(out)).first->second;
}

namespace {
struct FacePiece {
    bool zero = true;  // degenerate base (normalized cochains vanish there)
    int local = -1;
    Matrix act;
};
}  // namespace

void SteenrodEngine::eval_simplex(const TwistedCochain& u,
                                  const std::vector<MergedTerm>& terms, int h, int n,
                                  int loc, uint8_t sign, FpVec& out) const {
    const EqContext& ctx = *ctx_;
    const PrimeField& f = ctx.field;
    const int p = f.p();
    const int q = u.degree;
    const int d = ctx.adim(h);
    const FixedPointSet& fp = ctx.orbit.fps[h];
    const CoverSimplex lift = canonical_lift(SimplexInstance{n, fp.parent_index(n, loc), {}});

    std::unordered_map<uint32_t, FacePiece> cache;
    cache.reserve(terms.size() * p / 2 + 4);
    auto piece_of = [&](uint32_t mask) -> const FacePiece& {
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
        FacePiece pc;
        CoverSimplex s = cover_face_subset(ctx, h, lift, mask);
        if (!s.base.degenerate()) {
            pc.zero = false;
            pc.local = fp.local_index(q, s.base.base);
            if (pc.local < 0)
                throw std::logic_error("SteenrodEngine: face left the fixed subcomplex");
            pc.act = act_matrix(ctx, h, s.word);
        }
        return cache.emplace(mask, std::move(pc)).first->second;
    };

    FpVec acc(d, 0), val;
    for (const MergedTerm& t : terms) {
        bool dead = false;
        for (int l = 0; l < p && !dead; ++l) dead = piece_of(t.m[l]).zero;
        if (dead) continue;
        FpVec prod;
        for (int l = 0; l < p; ++l) {
            const FacePiece& pc = piece_of(t.m[l]);
            val = matvec(pc.act, ctx.value(u.v, h, q, pc.local));
            prod = (l == 0) ? val : ctx.sys.alg[h].mul(prod, val, f);
        }
        const uint8_t c = f.mul(sign, t.c);
        for (int k = 0; k < d; ++k) acc[k] = f.add(acc[k], f.mul(c, prod[k]));
    }
    const int s0 = ctx.slot(h, n, loc, 0);
    for (int k = 0; k < d; ++k) out[s0 + k] = acc[k];
}

TwistedCochain SteenrodEngine::d_op(int i, const TwistedCochain& u, bool verify,
                                    bool parallel) {
    const EqContext& ctx = *ctx_;
    const PrimeField& f = ctx.field;
    const int p = f.p();
    const int q = u.degree;
    const int n = p * q - i;

    TwistedCochain out;
    out.degree = n;
    if (n >= 0 && n <= ctx.top_dim()) out.v.assign(ctx.raw_dim(n), 0);
    // Negative W-index means the operation is zero by convention; no table
    // is consulted, so this holds even when the target degree is truncated
    // away (out.v stays empty in that case and marks an unrepresentable
    // degree).
    if (i < 0 || n < 0) return out;
    if (n > ctx.top_dim())
        throw std::invalid_argument("d_op: truncation too low for the target degree");

    // theta sign (-1)^{i n} and the evaluation sign (-1)^{prod deg} = (-1)^q
    // on the surviving terms (every factor has dimension q).
    uint8_t sign = 1;
    if ((i % 2) && (n % 2)) sign = f.neg(sign);
    if (q % 2) sign = f.neg(sign);

    const std::vector<MergedTerm>& terms = slice(i, n, q);

    struct Job {
        int h, loc;
    };
    std::vector<Job> jobs;
    for (int h = 0; h < ctx.nsubs(); ++h)
        for (int loc = 0; loc < ctx.orbit.fps[h].count(n); ++loc) jobs.push_back({h, loc});

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (size_t j = 0; j < jobs.size(); ++j)
            eval_simplex(u, terms, jobs[j].h, n, jobs[j].loc, sign, out.v);
    } else {
        for (size_t j = 0; j < jobs.size(); ++j)
            eval_simplex(u, terms, jobs[j].h, n, jobs[j].loc, sign, out.v);
    }

    if (verify) {
        EquivariantCochain as_eq = mu_inv(ctx, out);
        if (!is_compatible(ctx, as_eq))
            throw std::logic_error("d_op: result fails the compatibility constraints");
        if (n + 1 <= ctx.top_dim()) {
            TwistedCochain db = rho_coboundary(ctx, out);
            for (uint8_t v : db.v)
                if (v) throw std::logic_error("d_op: result is not a cocycle");
        }
    }
    return out;
}

TwistedCochain SteenrodEngine::power(int s, const TwistedCochain& u, bool verify,
                                     bool parallel) {
    const PrimeField& f = ctx_->field;
    const int q = u.degree;
    TwistedCochain out = d_op(d_index(s, q, false), u, verify, parallel);
    const uint8_t scal = power_scalar(f, q, s);
    if (scal != 1)
        for (uint8_t& v : out.v) v = f.mul(v, scal);
    return out;
}

TwistedCochain SteenrodEngine::beta_power(int s, const TwistedCochain& u, bool verify,
                                          bool parallel) {
    const PrimeField& f = ctx_->field;
    const int q = u.degree;
    TwistedCochain out = d_op(d_index(s, q, true), u, verify, parallel);
    const uint8_t scal = power_scalar(f, q, s);
    if (scal != 1)
        for (uint8_t& v : out.v) v = f.mul(v, scal);
    return out;
}

}  // namespace eqc
