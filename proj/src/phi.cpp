#include "eqc/phi.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "eqc/chains.hpp"

namespace eqc {

int phi_tensor_degree(const PhiTerm& t, int p) {
    int d = 0;
    for (int l = 0; l < p; ++l) d += mask_dim(t.m[l]);
    return d;
}

namespace {

inline bool term_less(const PhiTerm& x, const PhiTerm& y) {
    if (x.k != y.k) return x.k < y.k;
    if (x.a != y.a) return x.a < y.a;
    return x.m < y.m;
}

inline bool term_key_equal(const PhiTerm& x, const PhiTerm& y) {
    return x.k == y.k && x.a == y.a && x.m == y.m;
}

}  // namespace

PhiEntry phi_normalize(PhiEntry e, const PrimeField& f) {
    std::sort(e.begin(), e.end(), term_less);
    PhiEntry out;
    out.reserve(e.size());
    for (const PhiTerm& t : e) {
        uint8_t c = f.reduce(t.c);
        if (!c) continue;
        if (!out.empty() && term_key_equal(out.back(), t)) {
            out.back().c = f.add(out.back().c, c);
            if (!out.back().c) out.pop_back();
        } else {
            PhiTerm u = t;
            u.c = c;
            out.push_back(u);
        }
    }
    return out;
}

PhiEntry phi_alpha(const PhiEntry& e, const PrimeField& f, int p) {
    PhiEntry out;
    out.reserve(e.size());
    for (const PhiTerm& t : e) {
        PhiTerm u;
        u.k = t.k;
        u.a = static_cast<uint8_t>((t.a + 1) % p);
        int dlast = mask_dim(t.m[p - 1]);
        int rest = 0;
        for (int l = 0; l + 1 < p; ++l) rest += mask_dim(t.m[l]);
        u.m[0] = t.m[p - 1];
        for (int l = 0; l + 1 < p; ++l) u.m[l + 1] = t.m[l];
        u.c = (dlast % 2) && (rest % 2) ? f.neg(t.c) : t.c;
        out.push_back(u);
    }
    return phi_normalize(std::move(out), f);
}

PhiEntry phi_koszul_boundary(const PhiEntry& e, const PrimeField& f, int p) {
    PhiEntry out;
    for (const PhiTerm& t : e) {
        if (t.k > 0) {
            if (t.k % 2 == 1) {
                PhiTerm u = t;
                u.k = static_cast<uint8_t>(t.k - 1);
                u.a = static_cast<uint8_t>((t.a + 1) % p);
                out.push_back(u);
                PhiTerm v = t;
                v.k = static_cast<uint8_t>(t.k - 1);
                v.c = f.neg(t.c);
                out.push_back(v);
            } else {
                for (int b = 0; b < p; ++b) {
                    PhiTerm u = t;
                    u.k = static_cast<uint8_t>(t.k - 1);
                    u.a = static_cast<uint8_t>(b);
                    out.push_back(u);
                }
            }
        }
        const uint8_t base = (t.k % 2) ? f.neg(t.c) : t.c;
        int pre = 0;
        for (int l = 0; l < p; ++l) {
            const uint32_t mask = t.m[l];
            const int dl = mask_dim(mask);
            if (dl > 0) {
                const uint8_t cc = (pre % 2) ? f.neg(base) : base;
                int r = 0;
                for (uint32_t mm = mask; mm; mm &= mm - 1, ++r) {
                    const uint32_t bit = mm & (~mm + 1u);
                    PhiTerm u = t;
                    u.m[l] = mask & ~bit;
                    u.c = (r % 2) ? f.neg(cc) : cc;
                    out.push_back(u);
                }
            }
            pre += dl;
        }
    }
    return phi_normalize(std::move(out), f);
}

PhiEntry phi_push_vertex(const PhiEntry& e, int t) {
    PhiEntry out = e;
    const uint32_t low = (1u << t) - 1u;
    for (PhiTerm& u : out)
        for (int l = 0; l < kMaxFactors; ++l) {
            const uint32_t m = u.m[l];
            if (m) u.m[l] = (m & low) | ((m & ~low) << 1);
        }
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

PhiEntry phi_contract(const PhiEntry& e, const PrimeField& f, int p, int apex) {
    PhiEntry out;
    const uint32_t amask = 1u << apex;
    for (const PhiTerm& t : e) {
        if (t.k % 2 == 0) {
            for (int b = 0; b < t.a; ++b) {
                PhiTerm u = t;
                u.a = static_cast<uint8_t>(b);
                u.k = static_cast<uint8_t>(t.k + 1);
                out.push_back(u);
            }
        } else if (t.a == p - 1) {
            PhiTerm u = t;
            u.a = 0;
            u.k = static_cast<uint8_t>(t.k + 1);
            out.push_back(u);
        }
        if (t.k == 0) {
            for (int l = 0; l < p; ++l) {
                if (l > 0 && mask_dim(t.m[l - 1]) != 0) break;
                if ((t.m[l] & amask) == 0) {
                    PhiTerm u = t;
                    u.a = 0;
                    for (int l2 = 0; l2 < l; ++l2) u.m[l2] = amask;
                    u.m[l] = t.m[l] | amask;
                    const bool neg = (apex != 0) && (mask_dim(t.m[l]) % 2 == 0);
                    u.c = neg ? f.neg(t.c) : t.c;
                    out.push_back(u);
                }
            }
        }
    }
    return phi_normalize(std::move(out), f);
}

// --- Linear-solve lift -------------------------------------------------------

namespace {

struct SliceKey {
    std::array<uint32_t, kMaxFactors + 1> v{};
    bool operator==(const SliceKey& o) const { return v == o.v; }
    bool operator<(const SliceKey& o) const { return v < o.v; }
};

SliceKey key_of_parts(int k, int a, const std::array<uint32_t, kMaxFactors>& m) {
    SliceKey s;
    s.v[0] = (static_cast<uint32_t>(k) << 8) | static_cast<uint32_t>(a);
    for (int l = 0; l < kMaxFactors; ++l) s.v[l + 1] = m[l];
    return s;
}

SliceKey key_of(const PhiTerm& t) { return key_of_parts(t.k, t.a, t.m); }

PhiTerm term_of(const SliceKey& s) {
    PhiTerm t;
    t.c = 1;
    t.k = static_cast<uint8_t>(s.v[0] >> 8);
    t.a = static_cast<uint8_t>(s.v[0] & 0xffu);
    for (int l = 0; l < kMaxFactors; ++l) t.m[l] = s.v[l + 1];
    return t;
}

struct SliceKeyHash {
    size_t operator()(const SliceKey& s) const {
        uint64_t h = 1469598103934665603ull;
        for (uint32_t w : s.v) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

using SparseCol = std::vector<std::pair<int, uint8_t>>;  // sorted by row

SparseCol sparse_axpy(const SparseCol& x, const SparseCol& y, uint8_t factor,
                      const PrimeField& f) {
    // x + factor * y, merged.
    SparseCol out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            uint8_t c = f.mul(factor, y[j].second);
            if (c) out.emplace_back(y[j].first, c);
            ++j;
        } else {
            uint8_t c = f.add(x[i].second, f.mul(factor, y[j].second));
            if (c) out.emplace_back(x[i].first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

// Neighbours of a slice element under the total differential, in both
// directions, used to restrict the solve to the connected component of the
// right-hand side (the system is block diagonal across components).
std::vector<SliceKey> boundary_keys(const SliceKey& s, int p, const PrimeField& f) {
    PhiTerm t = term_of(s);
    PhiEntry b = phi_koszul_boundary(PhiEntry{t}, f, p);
    std::vector<SliceKey> out;
    out.reserve(b.size());
    for (const PhiTerm& u : b) out.push_back(key_of(u));
    return out;
}

std::vector<SliceKey> coboundary_keys(const SliceKey& s, int p, int j) {
    PhiTerm t = term_of(s);
    std::vector<SliceKey> out;
    // W-direction preimages: any alpha-power one W-degree up.
    for (int a = 0; a < p; ++a) {
        PhiTerm u = t;
        u.k = static_cast<uint8_t>(t.k + 1);
        u.a = static_cast<uint8_t>(a);
        out.push_back(key_of(u));
    }
    // Tensor-direction preimages: add one vertex to one factor.
    const uint32_t full = (1u << (j + 1)) - 1u;
    for (int l = 0; l < p; ++l) {
        uint32_t missing = full & ~t.m[l];
        for (uint32_t mm = missing; mm; mm &= mm - 1) {
            const uint32_t bit = mm & (~mm + 1u);
            PhiTerm u = t;
            u.m[l] = t.m[l] | bit;
            out.push_back(key_of(u));
        }
    }
    return out;
}

}  // namespace

PhiEntry phi_solve_lift(const PhiEntry& rhs, const PrimeField& f, int p, int j,
                        int target_degree) {
    if (rhs.empty()) return {};
    // Connected component of the right-hand side in the bipartite graph of
    // degree-(n) unknowns and degree-(n-1) equations.
    std::unordered_map<SliceKey, char, SliceKeyHash> seen;  // 'c' column, 'r' row
    std::deque<SliceKey> work;
    for (const PhiTerm& t : rhs) {
        SliceKey s = key_of(t);
        if (!seen.count(s)) {
            seen.emplace(s, 'r');
            work.push_back(s);
        }
    }
    auto degree_of = [&](const SliceKey& s) {
        PhiTerm t = term_of(s);
        return static_cast<int>(t.k) + phi_tensor_degree(t, p);
    };
    while (!work.empty()) {
        SliceKey s = work.front();
        work.pop_front();
        const bool is_row = seen[s] == 'r';
        std::vector<SliceKey> next =
            is_row ? coboundary_keys(s, p, j) : boundary_keys(s, p, f);
        for (const SliceKey& n : next) {
            if (seen.count(n)) continue;
            seen.emplace(n, is_row ? 'c' : 'r');
            work.push_back(n);
        }
        if (seen.size() > (1u << 26))
            throw std::runtime_error("phi_solve_lift: component exceeds budget");
    }

    std::vector<SliceKey> cols, rows;
    for (const auto& kv : seen) {
        if (kv.second == 'c')
            cols.push_back(kv.first);
        else
            rows.push_back(kv.first);
    }
    std::sort(cols.begin(), cols.end());
    std::sort(rows.begin(), rows.end());
    (void)degree_of;

    std::unordered_map<SliceKey, int, SliceKeyHash> row_id;
    row_id.reserve(rows.size() * 2);
    for (size_t i = 0; i < rows.size(); ++i) row_id.emplace(rows[i], static_cast<int>(i));

    const size_t nc = cols.size();
    std::vector<SparseCol> r_cols(nc), v_cols(nc);
    for (size_t c = 0; c < nc; ++c) {
        PhiEntry b = phi_koszul_boundary(PhiEntry{term_of(cols[c])}, f, p);
        SparseCol col;
        col.reserve(b.size());
        for (const PhiTerm& u : b) {
            auto it = row_id.find(key_of(u));
            if (it == row_id.end())
                throw std::logic_error("phi_solve_lift: boundary leaves component");
            col.emplace_back(it->second, u.c);
        }
        std::sort(col.begin(), col.end());
        r_cols[c] = std::move(col);
        v_cols[c] = SparseCol{{static_cast<int>(c), 1}};
    }

    // Column reduction with recorded column operations.
    std::vector<int> pivot_owner(rows.size(), -1);
    size_t nnz_budget = 400000000;
    size_t nnz = 0;
    for (size_t c = 0; c < nc; ++c) {
        auto& col = r_cols[c];
        while (!col.empty()) {
            const int lo = col.back().first;
            const int owner = pivot_owner[lo];
            if (owner < 0) {
                pivot_owner[lo] = static_cast<int>(c);
                break;
            }
            const uint8_t factor =
                f.neg(f.mul(col.back().second, f.inv(r_cols[owner].back().second)));
            col = sparse_axpy(col, r_cols[owner], factor, f);
            v_cols[c] = sparse_axpy(v_cols[c], v_cols[owner], factor, f);
        }
        nnz += col.size() + v_cols[c].size();
        if (nnz > nnz_budget) throw std::runtime_error("phi_solve_lift: fill exceeds budget");
    }

    // Reduce the right-hand side, accumulating the solution.
    SparseCol b;
    for (const PhiTerm& t : rhs) b.emplace_back(row_id.at(key_of(t)), t.c);
    std::sort(b.begin(), b.end());
    SparseCol x;
    while (!b.empty()) {
        const int lo = b.back().first;
        const int owner = pivot_owner[lo];
        if (owner < 0) throw std::logic_error("phi_solve_lift: inconsistent system");
        const uint8_t factor = f.mul(b.back().second, f.inv(r_cols[owner].back().second));
        b = sparse_axpy(b, r_cols[owner], f.neg(factor), f);
        x = sparse_axpy(x, v_cols[owner], factor, f);
    }

    PhiEntry out;
    out.reserve(x.size());
    for (const auto& [ci, cv] : x) {
        PhiTerm t = term_of(cols[ci]);
        t.c = cv;
        out.push_back(t);
    }
    out = phi_normalize(std::move(out), f);
    for (const PhiTerm& t : out)
        if (t.k + phi_tensor_degree(t, p) != target_degree)
            throw std::logic_error("phi_solve_lift: solution off degree");
    return out;
}

// --- PhiTable ---------------------------------------------------------------

const char* lift_route_name(LiftRoute r) {
    switch (r) {
        case LiftRoute::ApexZero:
            return "apex0";
        case LiftRoute::ApexTop:
            return "apexN";
        case LiftRoute::Solver:
            return "solver";
    }
    return "?";
}

PhiTable::PhiTable(PhiOptions opt) : opt_(opt), field_(opt.p) {
    if (opt.p > kMaxFactors)
        throw std::invalid_argument("PhiTable: p beyond supported factor count");
    if (const char* dir = std::getenv("EQC_PHI_CACHE_DIR")) cache_dir_ = dir;
}

size_t PhiTable::w0_size(const PhiEntry& e) {
    return static_cast<size_t>(
        std::partition_point(e.begin(), e.end(), [](const PhiTerm& t) { return t.k == 0; }) -
        e.begin());
}

size_t PhiTable::cached_terms() const {
    size_t n = 0;
    for (const auto& kv : cache_) n += kv.second.size();
    return n;
}

const PhiEntry& PhiTable::entry(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("PhiTable::entry: negative index");
    const auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PhiEntry e;
    if (!load_cached(i, j, &e)) {
        e = compute(i, j);
        store_cached(i, j, e);
    }
    return cache_.emplace(key, std::move(e)).first->second;
}

PhiEntry PhiTable::rhs_of(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("PhiTable::rhs_of: needs i, j >= 1");
    const int p = opt_.p;
    PhiEntry r;
    {
        const PhiEntry& below = entry(i - 1, j);
        if (i % 2 == 1) {
            PhiEntry al = phi_alpha(below, field_, p);
            r.reserve(al.size() + below.size());
            r.insert(r.end(), al.begin(), al.end());
            for (PhiTerm t : below) {
                t.c = field_.neg(t.c);
                r.push_back(t);
            }
        } else {
            PhiEntry cur = below;
            for (int b = 0; b < p; ++b) {
                r.insert(r.end(), cur.begin(), cur.end());
                if (b + 1 < p) cur = phi_alpha(cur, field_, p);
            }
        }
    }
    {
        const PhiEntry& left = entry(i, j - 1);
        for (int t = 0; t <= j; ++t) {
            PhiEntry pushed = phi_push_vertex(left, t);
            const bool neg = ((i + t) % 2) == 1;
            for (PhiTerm u : pushed) {
                if (neg) u.c = field_.neg(u.c);
                r.push_back(u);
            }
        }
    }
    return phi_normalize(std::move(r), field_);
}

PhiEntry PhiTable::compute(int i, int j) {
    const int p = opt_.p;
    if (i == 0) {
        PhiEntry out;
        for (const MaskWord& w : aw_iterated_masks(j, p)) {
            PhiTerm t;
            t.c = 1;
            for (int l = 0; l < p; ++l) t.m[l] = w[l];
            out.push_back(t);
        }
        return phi_normalize(std::move(out), field_);
    }
    if (j == 0) {
        PhiTerm t;
        t.c = 1;
        t.k = static_cast<uint8_t>(i);
        for (int l = 0; l < p; ++l) t.m[l] = 1u;
        return PhiEntry{t};
    }
    PhiEntry r = rhs_of(i, j);
    const bool check = i + j <= opt_.check_max_total;
    if (check && !phi_koszul_boundary(r, field_, p).empty())
        throw std::logic_error("PhiTable: rhs not a cycle at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    PhiEntry e;
    if (opt_.route == LiftRoute::Solver && i + j <= opt_.solver_max_total)
        e = phi_solve_lift(r, field_, p, j, i + j);
    else
        e = phi_contract(r, field_, p, opt_.route == LiftRoute::ApexTop ? j : 0);
    if (check && !(phi_koszul_boundary(e, field_, p) == r))
        throw std::logic_error("PhiTable: chain-map check failed at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
    for (const PhiTerm& t : e)
        if (phi_tensor_degree(t, p) > p * j)
            throw std::logic_error("PhiTable: degree bound violated at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
    return e;
}

// --- optional disk cache ------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'E', 'Q', 'P', 'H', 'I', '0', '1', '\n'};
}

std::string PhiTable::cache_path(int i, int j) const {
    return cache_dir_ + "/phi-p" + std::to_string(opt_.p) + "-" +
           lift_route_name(opt_.route) + "-" + std::to_string(i) + "-" + std::to_string(j) +
           ".bin";
}

bool PhiTable::load_cached(int i, int j, PhiEntry* out) const {
    if (cache_dir_.empty()) return false;
    std::ifstream in(cache_path(i, j), std::ios::binary);
    if (!in) return false;
    char magic[8];
    int32_t hdr[4];
    uint64_t count = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || std::memcmp(magic, kMagic, 8) != 0 || hdr[0] != opt_.p ||
        hdr[1] != static_cast<int32_t>(opt_.route) || hdr[2] != i || hdr[3] != j)
        return false;
    PhiEntry e(count);
    for (PhiTerm& t : e) {
        in.read(reinterpret_cast<char*>(t.m.data()), sizeof t.m);
        uint8_t bytes[3];
        in.read(reinterpret_cast<char*>(bytes), 3);
        t.c = bytes[0];
        t.a = bytes[1];
        t.k = bytes[2];
    }
    if (!in) return false;
    *out = std::move(e);
    return true;
}

void PhiTable::store_cached(int i, int j, const PhiEntry& e) const {
    if (cache_dir_.empty()) return;
    std::ofstream outf(cache_path(i, j), std::ios::binary | std::ios::trunc);
    if (!outf) return;
    int32_t hdr[4] = {opt_.p, static_cast<int32_t>(opt_.route), i, j};
    uint64_t count = e.size();
    outf.write(kMagic, 8);
    outf.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    outf.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (const PhiTerm& t : e) {
        outf.write(reinterpret_cast<const char*>(t.m.data()), sizeof t.m);
        uint8_t bytes[3] = {t.c, t.a, t.k};
        outf.write(reinterpret_cast<const char*>(bytes), 3);
    }
}

}  // namespace eqc
