#include "eqc/coeff.hpp"

#include <optional>
#include <stdexcept>

namespace eqc {

int OrbitStructure::find_morphism(int src, int dst, int rep) const {
    for (size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].src == src && morphisms[i].dst == dst && morphisms[i].rep == rep)
            return static_cast<int>(i);
    return -1;
}

OrbitStructure OrbitStructure::build(const GSimplicialSet& x) {
    OrbitStructure o;
    o.subs = subgroups(x.group);
    o.morphisms = orbit_morphisms(x.group, o.subs);
    o.id_morphism.resize(o.subs.size());
    for (size_t h = 0; h < o.subs.size(); ++h) {
        int m = o.find_morphism(static_cast<int>(h), static_cast<int>(h), 0);
        if (m < 0) throw std::logic_error("orbit structure: identity morphism missing");
        o.id_morphism[h] = m;
    }
    for (const Subgroup& s : o.subs) o.fps.push_back(fixed_points(x, s));
    o.trans.reserve(o.morphisms.size());
    for (const OrbitMorphism& m : o.morphisms)
        o.trans.push_back(translation_map(x, o.fps[m.src], o.fps[m.dst], m.rep));
    return o;
}

FpVec CoefficientAlgebra::mul(const FpVec& a, const FpVec& b, const PrimeField& f) const {
    FpVec out(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (a[i] == 0) continue;
        const Matrix& li = left_mult[i];
        for (int r = 0; r < dim; ++r) {
            uint8_t acc = 0;
            for (int c = 0; c < dim; ++c) acc = f.add(acc, f.mul(li.at(r, c), b[c]));
            out[r] = f.add(out[r], f.mul(a[i], acc));
        }
    }
    return out;
}

void CoefficientAlgebra::validate(const PrimeField& f, const std::string& where,
                                  std::vector<std::string>& out) const {
    if (static_cast<int>(unit.size()) != dim || static_cast<int>(left_mult.size()) != dim) {
        out.push_back(where + ": algebra tables have wrong shape");
        return;
    }
    for (const Matrix& m : left_mult)
        if (m.rows() != dim || m.cols() != dim) {
            out.push_back(where + ": multiplication table has wrong shape");
            return;
        }
    auto basis = [&](int i) {
        FpVec e(dim, 0);
        e[i] = 1;
        return e;
    };
    for (int j = 0; j < dim; ++j)
        if (mul(unit, basis(j), f) != basis(j))
            out.push_back(where + ": unit fails on basis element " + std::to_string(j));
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (mul(basis(i), basis(j), f) != mul(basis(j), basis(i), f))
                out.push_back(where + ": product not commutative at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (mul(mul(basis(i), basis(j), f), basis(k), f) !=
                    mul(basis(i), mul(basis(j), basis(k), f), f))
                    out.push_back(where + ": product not associative at (" + std::to_string(i) +
                                  "," + std::to_string(j) + "," + std::to_string(k) + ")");
}

void CoefficientSystem::cache_inverses() {
    edge_action_inv.clear();
    edge_action_inv.resize(edge_action.size());
    for (size_t h = 0; h < edge_action.size(); ++h) {
        edge_action_inv[h].reserve(edge_action[h].size());
        for (const Matrix& m : edge_action[h]) edge_action_inv[h].push_back(inverse(m));
    }
}

namespace {

bool is_unital_algebra_map(const Matrix& t, const CoefficientAlgebra& src_alg,
                           const CoefficientAlgebra& dst_alg, const PrimeField& f,
                           std::string* why) {
    // t maps src_alg (domain, dimension t.cols) into dst_alg (dimension t.rows).
    if (t.cols() != src_alg.dim || t.rows() != dst_alg.dim) {
        *why = "wrong shape";
        return false;
    }
    if (matvec(t, src_alg.unit) != dst_alg.unit) {
        *why = "does not preserve the unit";
        return false;
    }
    for (int i = 0; i < src_alg.dim; ++i)
        for (int j = i; j < src_alg.dim; ++j) {
            FpVec ei(src_alg.dim, 0), ej(src_alg.dim, 0);
            ei[i] = 1;
            ej[j] = 1;
            FpVec lhs = matvec(t, src_alg.mul(ei, ej, f));
            FpVec rhs = dst_alg.mul(matvec(t, ei), matvec(t, ej), f);
            if (lhs != rhs) {
                *why = "not multiplicative at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
                return false;
            }
        }
    return true;
}

}  // namespace

std::vector<std::string> validate_coefficients(const GSimplicialSet& x,
                                               const OrbitStructure& orbit,
                                               const CoefficientSystem& sys) {
    std::vector<std::string> out;
    PrimeField f(sys.p);
    const int ns = static_cast<int>(orbit.subs.size());
    if (static_cast<int>(sys.alg.size()) != ns) {
        out.push_back("system: expected one algebra per subgroup");
        return out;
    }
    if (static_cast<int>(sys.edge_action.size()) != ns) {
        out.push_back("system: expected one edge table per subgroup");
        return out;
    }
    if (sys.transfer.size() != orbit.morphisms.size()) {
        out.push_back("system: expected one transfer per orbit morphism");
        return out;
    }

    for (int h = 0; h < ns; ++h)
        sys.alg[h].validate(f, "algebra at " + orbit.subs[h].label(), out);
    if (!out.empty()) return out;

    // Edge automorphisms: shape, unital algebra maps, invertible.
    for (int h = 0; h < ns; ++h) {
        const FixedPointSet& fp = orbit.fps[h];
        if (static_cast<int>(sys.edge_action[h].size()) != fp.count(1)) {
            out.push_back("system: edge table at " + orbit.subs[h].label() +
                          " has wrong length");
            continue;
        }
        for (int e = 0; e < fp.count(1); ++e) {
            std::string why;
            const Matrix& m = sys.edge_action[h][e];
            std::string where =
                "edge action at " + orbit.subs[h].label() + ", edge " + std::to_string(e);
            if (!is_unital_algebra_map(m, sys.alg[h], sys.alg[h], f, &why)) {
                out.push_back(where + ": " + why);
                continue;
            }
            try {
                (void)inverse(m);
            } catch (const std::exception&) {
                out.push_back(where + ": not invertible");
            }
        }
    }
    if (!out.empty()) return out;

    // Identity on degenerate edges is built in; check the 2-simplex relation
    // psi(edge02) = psi(edge12) psi(edge01) on every fixed 2-simplex.
    auto edge_matrix = [&](int h, const SimplexInstance& e) -> std::optional<Matrix> {
        if (e.degenerate()) return Matrix::identity(sys.alg[h].dim, sys.p);
        int loc = orbit.fps[h].local_index(1, e.base);
        if (loc < 0) return std::nullopt;
        return sys.edge_action[h][loc];
    };
    for (int h = 0; h < ns; ++h) {
        const FixedPointSet& fp = orbit.fps[h];
        if (x.space.top_dim() < 2) break;
        for (int loc = 0; loc < fp.count(2); ++loc) {
            int parent = fp.parent_index(2, loc);
            SimplexInstance z{2, parent, {}};
            auto m01 = edge_matrix(h, x.space.face_subset(z, 0b011));
            auto m12 = edge_matrix(h, x.space.face_subset(z, 0b110));
            auto m02 = edge_matrix(h, x.space.face_subset(z, 0b101));
            if (!m01 || !m12 || !m02) {
                out.push_back("2-simplex " + std::to_string(loc) + " at " +
                              orbit.subs[h].label() + ": edge not fixed");
                continue;
            }
            if (!(*m02 == matmul(*m12, *m01)))
                out.push_back("2-simplex " + std::to_string(loc) + " at " +
                              orbit.subs[h].label() + ": edge relation fails");
        }
    }

    // Transfers: unital algebra maps, identity morphisms map to identities,
    // functorial under composition.
    for (size_t i = 0; i < orbit.morphisms.size(); ++i) {
        const OrbitMorphism& m = orbit.morphisms[i];
        std::string where = "transfer " + orbit.subs[m.src].label() + " -> " +
                            orbit.subs[m.dst].label() + " (rep " + std::to_string(m.rep) + ")";
        std::string why;
        if (!is_unital_algebra_map(sys.transfer[i], sys.alg[m.dst], sys.alg[m.src], f, &why)) {
            out.push_back(where + ": " + why);
            continue;
        }
        if (m.src == m.dst && m.rep == 0 &&
            !(sys.transfer[i] == Matrix::identity(sys.alg[m.src].dim, sys.p)))
            out.push_back(where + ": identity morphism not mapped to the identity");
    }
    if (!out.empty()) return out;

    for (size_t i = 0; i < orbit.morphisms.size(); ++i)
        for (size_t j = 0; j < orbit.morphisms.size(); ++j) {
            const OrbitMorphism &m1 = orbit.morphisms[i], &m2 = orbit.morphisms[j];
            if (m1.dst != m2.src) continue;
            OrbitMorphism c = compose_morphisms(x.group, orbit.subs, m1, m2);
            int ci = orbit.find_morphism(c.src, c.dst, c.rep);
            if (ci < 0) {
                out.push_back("orbit category: composite morphism missing");
                continue;
            }
            if (!(sys.transfer[ci] == matmul(sys.transfer[i], sys.transfer[j])))
                out.push_back("transfers not functorial on morphisms " + std::to_string(i) +
                              " and " + std::to_string(j));
        }

    // Intertwining of edge actions and transfers: for a morphism G/H -> G/K
    // represented by a and a fixed edge y of X^K,
    //   psi_H(a.y) transfer = transfer psi_K(y).
    for (size_t i = 0; i < orbit.morphisms.size(); ++i) {
        const OrbitMorphism& m = orbit.morphisms[i];
        const FixedPointSet& fpk = orbit.fps[m.dst];
        if (x.space.top_dim() < 1) break;
        for (int y = 0; y < fpk.count(1); ++y) {
            int hy = orbit.trans[i][1][y];
            Matrix lhs = matmul(sys.edge_action[m.src][hy], sys.transfer[i]);
            Matrix rhs = matmul(sys.transfer[i], sys.edge_action[m.dst][y]);
            if (!(lhs == rhs))
                out.push_back("edge action does not intertwine transfer on morphism " +
                              std::to_string(i) + ", edge " + std::to_string(y));
        }
    }
    return out;
}

// --- Builders -------------------------------------------------------------

CoefficientSystem constant_system(const GSimplicialSet& x, const OrbitStructure& orbit,
                                  int p) {
    CoefficientSystem s;
    s.p = p;
    CoefficientAlgebra fp_alg;
    fp_alg.dim = 1;
    fp_alg.unit = FpVec{1};
    fp_alg.left_mult = {Matrix::identity(1, p)};
    const int ns = static_cast<int>(orbit.subs.size());
    s.alg.assign(ns, fp_alg);
    s.edge_action.resize(ns);
    for (int h = 0; h < ns; ++h)
        s.edge_action[h].assign(orbit.fps[h].count(1), Matrix::identity(1, p));
    for (const OrbitMorphism& m : orbit.morphisms) {
        (void)m;
        s.transfer.push_back(Matrix::identity(1, p));
    }
    (void)x;
    s.cache_inverses();
    return s;
}

namespace {

// Coefficients of a*b in F_p[t]/(t^p - t - 1).
FpVec polymul_mod(const FpVec& a, const FpVec& b, const PrimeField& f) {
    int p = f.p();
    std::vector<uint8_t> c(2 * p - 1, 0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    for (int i = 2 * p - 2; i >= p; --i) {
        if (c[i] == 0) continue;
        c[i - p + 1] = f.add(c[i - p + 1], c[i]);  // t^p = t + 1
        c[i - p] = f.add(c[i - p], c[i]);
        c[i] = 0;
    }
    return FpVec(c.begin(), c.begin() + p);
}

}  // namespace

CoefficientSystem galois_system(const NerveData& nerve, const GSimplicialSet& x,
                                const OrbitStructure& orbit) {
    if (x.group.n != 1)
        throw std::invalid_argument("galois_system: requires a trivial acting group");
    int p = nerve.gamma.n;
    PrimeField f(p);  // also checks primality
    if (x.space.count(1) != p - 1)
        throw std::invalid_argument("galois_system: space is not the nerve of Z/p");

    // The algebra F_p[t]/(t^p - t - 1), basis 1, t, ..., t^{p-1}.
    CoefficientAlgebra a;
    a.dim = p;
    a.unit = FpVec(p, 0);
    a.unit[0] = 1;
    std::vector<FpVec> basis(p, FpVec(p, 0));
    for (int i = 0; i < p; ++i) basis[i][i] = 1;
    for (int i = 0; i < p; ++i) {
        Matrix li(p, p, p);
        for (int j = 0; j < p; ++j) {
            FpVec prod = polymul_mod(basis[i], basis[j], f);
            for (int r = 0; r < p; ++r) li.at(r, j) = prod[r];
        }
        a.left_mult.push_back(li);
    }

    // Frobenius x -> x^p as a matrix, then its powers on the edges.
    Matrix frob(p, p, p);
    for (int j = 0; j < p; ++j) {
        FpVec img = basis[0];  // 1
        for (int e = 0; e < p; ++e) img = polymul_mod(img, basis[j], f);
        // img = t^{jp} ... computed as (t^j)^p by p-fold multiplication
        for (int r = 0; r < p; ++r) frob.at(r, j) = img[r];
    }

    CoefficientSystem s;
    s.p = p;
    s.alg = {a};
    s.edge_action.resize(1);
    for (int e = 0; e < p - 1; ++e) {
        // Edge index e is the 1-tuple (g^{e+1}); it acts by Frobenius^{e+1}.
        Matrix m = Matrix::identity(p, p);
        for (int k = 0; k <= e; ++k) m = matmul(frob, m);
        s.edge_action[0].push_back(m);
    }
    s.transfer = {Matrix::identity(p, p)};
    if (orbit.morphisms.size() != 1)
        throw std::logic_error("galois_system: unexpected orbit category");
    s.cache_inverses();
    return s;
}

CoefficientSystem inversion_system(const GSimplicialSet& x, const OrbitStructure& orbit) {
    if (x.group.n != 2 || x.space.count(1) != 2)
        throw std::invalid_argument(
            "inversion_system: requires Z/2 acting on the nerve of Z/3");
    const int p = 3;
    PrimeField f(p);

    // Free level: A = F_3[u]/(u^3), basis 1, u, u^2.
    CoefficientAlgebra a;
    a.dim = 3;
    a.unit = FpVec{1, 0, 0};
    auto mk = [&](std::initializer_list<int> cols) {
        Matrix m(3, 3, p);
        int c = 0;
        for (int packed : cols) {
            m.at(0, c) = static_cast<uint8_t>(packed / 100 % 10);
            m.at(1, c) = static_cast<uint8_t>(packed / 10 % 10);
            m.at(2, c) = static_cast<uint8_t>(packed % 10);
            ++c;
        }
        return m;
    };
    a.left_mult = {
        mk({100, 10, 1}),  // 1 . (1, u, u^2)
        mk({10, 1, 0}),    // u . (1, u, u^2) = (u, u^2, 0)
        mk({1, 0, 0}),     // u^2 . (1, u, u^2) = (u^2, 0, 0)
    };

    // Monodromy phi: u -> u + u^2 (order 3) on the two edges.
    Matrix phi = mk({100, 11, 1});
    Matrix phi2 = matmul(phi, phi);

    // Fixed level: F_3; the nontrivial self-map of the free orbit acts by the
    // involution u -> -u, which conjugates phi to phi^2.
    CoefficientAlgebra fixed;
    fixed.dim = 1;
    fixed.unit = FpVec{1};
    fixed.left_mult = {Matrix::identity(1, p)};

    Matrix sigma = mk({100, 20, 1});  // diag(1, -1, 1)
    Matrix unit_col(3, 1, p);
    unit_col.at(0, 0) = 1;

    CoefficientSystem s;
    s.p = p;
    s.alg = {a, fixed};
    s.edge_action.resize(2);
    s.edge_action[0] = {phi, phi2};
    // The fixed-point subcomplex of the full group has no 1-simplices.
    if (orbit.fps[1].count(1) != 0)
        throw std::logic_error("inversion_system: unexpected fixed edges");
    for (const OrbitMorphism& m : orbit.morphisms) {
        if (m.src == 0 && m.dst == 0)
            s.transfer.push_back(m.rep == 0 ? Matrix::identity(3, p) : sigma);
        else if (m.src == 0 && m.dst == 1)
            s.transfer.push_back(unit_col);
        else
            s.transfer.push_back(Matrix::identity(1, p));
    }
    s.cache_inverses();
    return s;
}

// --- EqContext --------------------------------------------------------------

EqContext::EqContext(GSimplicialSet x_, OrbitStructure o_, CoefficientSystem s_)
    : x(std::move(x_)), orbit(std::move(o_)), sys(std::move(s_)), field(sys.p) {
    const int top = x.space.top_dim();
    const int ns = static_cast<int>(orbit.subs.size());
    offsets_.assign(top + 1, std::vector<int>(ns, 0));
    rawdims_.assign(top + 1, 0);
    for (int n = 0; n <= top; ++n) {
        int off = 0;
        for (int h = 0; h < ns; ++h) {
            offsets_[n][h] = off;
            off += orbit.fps[h].count(n) * sys.alg[h].dim;
        }
        rawdims_[n] = off;
    }
    ident_.reserve(ns);
    for (int h = 0; h < ns; ++h) ident_.push_back(Matrix::identity(sys.alg[h].dim, sys.p));
    if (sys.edge_action_inv.size() != sys.edge_action.size())
        throw std::logic_error("EqContext: edge action inverses not cached");
}

const Matrix& EqContext::psi_edge(int h, const SimplexInstance& e) const {
    if (e.degenerate()) return ident_[h];
    int loc = orbit.fps[h].local_index(1, e.base);
    if (loc < 0) throw std::logic_error("psi_edge: edge not fixed by subgroup");
    return sys.edge_action[h][loc];
}

const Matrix& EqContext::psi_inv_edge(int h, const SimplexInstance& e) const {
    if (e.degenerate()) return ident_[h];
    int loc = orbit.fps[h].local_index(1, e.base);
    if (loc < 0) throw std::logic_error("psi_edge: edge not fixed by subgroup");
    return sys.edge_action_inv[h][loc];
}

}  // namespace eqc
