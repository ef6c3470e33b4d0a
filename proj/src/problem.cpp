#include "eqc/problem.hpp"

#include <fstream>
#include <sstream>

namespace eqc {

namespace {

using Json = OrderedJson;

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
    throw ProblemSchemaError(path + ": " + msg);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_fail(path, std::string("missing field '") + key + "'");
    return *it;
}

int need_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_number_integer())
        schema_fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::vector<int> int_list(const Json& v, const std::string& path) {
    if (!v.is_array()) schema_fail(path, "expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer())
            schema_fail(path + "[" + std::to_string(i) + "]", "expected an integer");
        out.push_back(v[i].get<int>());
    }
    return out;
}

// Row-major matrix with known shape.
Matrix parse_matrix(const Json& v, int rows, int cols, int p, const std::string& path) {
    std::vector<int> flat = int_list(v, path);
    if (static_cast<int>(flat.size()) != rows * cols)
        schema_fail(path, "expected " + std::to_string(rows * cols) +
                              " entries (row-major " + std::to_string(rows) + "x" +
                              std::to_string(cols) + "), got " +
                              std::to_string(flat.size()));
    Matrix m(rows, cols, p);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int e = flat[static_cast<size_t>(r) * cols + c];
            if (e < 0 || e >= p)
                schema_fail(path, "entry " + std::to_string(e) + " out of range mod " +
                                      std::to_string(p));
            m.at(r, c) = static_cast<uint8_t>(e);
        }
    return m;
}

Json emit_matrix(const Matrix& m) {
    Json out = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.push_back(static_cast<int>(m.at(r, c)));
    return out;
}

FpVec parse_vec(const Json& v, int dim, int p, const std::string& path) {
    std::vector<int> flat = int_list(v, path);
    if (static_cast<int>(flat.size()) != dim)
        schema_fail(path, "expected " + std::to_string(dim) + " entries");
    FpVec out(dim);
    for (int i = 0; i < dim; ++i) {
        if (flat[i] < 0 || flat[i] >= p) schema_fail(path, "entry out of range");
        out[i] = static_cast<uint8_t>(flat[i]);
    }
    return out;
}

FiniteGroup parse_group(const Json& j, const std::string& path) {
    FiniteGroup g;
    const Json& mult = need(j, "mult", path);
    if (!mult.is_array() || mult.empty()) schema_fail(path + ".mult", "expected rows");
    g.n = static_cast<int>(mult.size());
    g.mult.resize(static_cast<size_t>(g.n) * g.n);
    for (int a = 0; a < g.n; ++a) {
        std::vector<int> row = int_list(mult[a], path + ".mult[" + std::to_string(a) + "]");
        if (static_cast<int>(row.size()) != g.n)
            schema_fail(path + ".mult", "rows must have length " + std::to_string(g.n));
        for (int b = 0; b < g.n; ++b) {
            if (row[b] < 0 || row[b] >= g.n)
                schema_fail(path + ".mult", "entry out of range");
            g.mult[static_cast<size_t>(a) * g.n + b] = row[b];
        }
    }
    if (auto it = j.find("names"); it != j.end()) {
        if (!it->is_array() || static_cast<int>(it->size()) != g.n)
            schema_fail(path + ".names", "expected one name per element");
        for (const auto& s : *it) {
            if (!s.is_string()) schema_fail(path + ".names", "expected strings");
            g.names.push_back(s.get<std::string>());
        }
    }
    try {
        g.validate();
    } catch (const std::exception& e) {
        throw ProblemValidationError(path + ": " + e.what());
    }
    return g;
}

SimplexInstance parse_face(const Json& v, const std::string& path) {
    // A face is encoded [base_dim, base_index, [degeneracy word]].
    if (!v.is_array() || v.size() != 3)
        schema_fail(path, "expected [base_dim, base, word]");
    SimplexInstance s;
    if (!v[0].is_number_integer() || !v[1].is_number_integer())
        schema_fail(path, "base_dim and base must be integers");
    s.base_dim = v[0].get<int>();
    s.base = v[1].get<int>();
    s.word = int_list(v[2], path + "[2]");
    return s;
}

Json emit_face(const SimplexInstance& s) {
    Json w = Json::array();
    for (int d : s.word) w.push_back(d);
    return Json::array({s.base_dim, s.base, std::move(w)});
}

GSimplicialSet parse_explicit_space(const Json& j, const FiniteGroup& g,
                                    const std::string& path) {
    std::vector<int> counts = int_list(need(j, "counts", path), path + ".counts");
    if (counts.empty()) schema_fail(path + ".counts", "expected at least dimension 0");
    const Json& faces = need(j, "faces", path);
    int top = static_cast<int>(counts.size()) - 1;
    if (!faces.is_array() || static_cast<int>(faces.size()) != top)
        schema_fail(path + ".faces",
                    "expected one table per dimension 1.." + std::to_string(top));
    std::vector<std::vector<SimplexInstance>> tables(top + 1);
    for (int n = 1; n <= top; ++n) {
        const Json& tn = faces[n - 1];
        std::string pn = path + ".faces[" + std::to_string(n - 1) + "]";
        if (!tn.is_array() || static_cast<int>(tn.size()) != counts[n])
            schema_fail(pn, "expected " + std::to_string(counts[n]) + " simplices");
        tables[n].reserve(static_cast<size_t>(counts[n]) * (n + 1));
        for (int idx = 0; idx < counts[n]; ++idx) {
            const Json& row = tn[idx];
            std::string pr = pn + "[" + std::to_string(idx) + "]";
            if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
                schema_fail(pr, "expected " + std::to_string(n + 1) + " faces");
            for (int i = 0; i <= n; ++i)
                tables[n].push_back(parse_face(row[i], pr + "[" + std::to_string(i) + "]"));
        }
    }
    GSimplicialSet x;
    x.space = PresentedSimplicialSet(counts, std::move(tables));
    x.group = g;
    x.action.resize(top + 1);
    if (auto it = j.find("action"); it != j.end()) {
        const Json& act = *it;
        if (!act.is_array() || static_cast<int>(act.size()) != g.n)
            schema_fail(path + ".action", "expected one entry per group element");
        for (int gg = 0; gg < g.n; ++gg) {
            const Json& per = act[gg];
            std::string pg = path + ".action[" + std::to_string(gg) + "]";
            if (!per.is_array() || static_cast<int>(per.size()) != top + 1)
                schema_fail(pg, "expected one permutation per dimension");
            for (int n = 0; n <= top; ++n) {
                std::vector<int> perm = int_list(per[n], pg + "[" + std::to_string(n) + "]");
                if (static_cast<int>(perm.size()) != counts[n])
                    schema_fail(pg, "permutation length mismatch in dimension " +
                                        std::to_string(n));
                x.action[n].insert(x.action[n].end(), perm.begin(), perm.end());
            }
        }
    } else {
        // Default: the trivial action.
        for (int n = 0; n <= top; ++n) {
            x.action[n].resize(static_cast<size_t>(g.n) * counts[n]);
            for (int gg = 0; gg < g.n; ++gg)
                for (int idx = 0; idx < counts[n]; ++idx)
                    x.action[n][static_cast<size_t>(gg) * counts[n] + idx] = idx;
        }
    }
    return x;
}

CoefficientSystem parse_explicit_coeff(const Json& j, const GSimplicialSet& x,
                                       const OrbitStructure& orbit, int p,
                                       const std::string& path) {
    CoefficientSystem sys;
    sys.p = p;
    const int ns = static_cast<int>(orbit.subs.size());
    const Json& algs = need(j, "algebras", path);
    if (!algs.is_array() || static_cast<int>(algs.size()) != ns)
        schema_fail(path + ".algebras",
                    "expected one algebra per subgroup (" + std::to_string(ns) +
                        ", ordered by size then element list)");
    for (int h = 0; h < ns; ++h) {
        const Json& aj = algs[h];
        std::string ph = path + ".algebras[" + std::to_string(h) + "]";
        CoefficientAlgebra a;
        a.dim = need_int(aj, "dim", ph);
        if (a.dim < 1) schema_fail(ph + ".dim", "dimension must be positive");
        a.unit = parse_vec(need(aj, "unit", ph), a.dim, p, ph + ".unit");
        const Json& lm = need(aj, "left_mult", ph);
        if (!lm.is_array() || static_cast<int>(lm.size()) != a.dim)
            schema_fail(ph + ".left_mult", "expected one matrix per basis vector");
        for (int i = 0; i < a.dim; ++i)
            a.left_mult.push_back(parse_matrix(lm[i], a.dim, a.dim, p,
                                               ph + ".left_mult[" + std::to_string(i) + "]"));
        sys.alg.push_back(std::move(a));
    }
    const Json& ea = need(j, "edge_actions", path);
    if (!ea.is_array() || static_cast<int>(ea.size()) != ns)
        schema_fail(path + ".edge_actions", "expected one list per subgroup");
    sys.edge_action.resize(ns);
    for (int h = 0; h < ns; ++h) {
        int cnt = orbit.fps[h].count(1);
        const Json& lh = ea[h];
        std::string ph = path + ".edge_actions[" + std::to_string(h) + "]";
        if (!lh.is_array() || static_cast<int>(lh.size()) != cnt)
            schema_fail(ph, "expected " + std::to_string(cnt) +
                                " matrices (fixed 1-simplices in order)");
        int d = sys.alg[h].dim;
        for (int e = 0; e < cnt; ++e)
            sys.edge_action[h].push_back(
                parse_matrix(lh[e], d, d, p, ph + "[" + std::to_string(e) + "]"));
    }
    const Json& tr = need(j, "transfers", path);
    const int nm = static_cast<int>(orbit.morphisms.size());
    if (!tr.is_array() || static_cast<int>(tr.size()) != nm)
        schema_fail(path + ".transfers",
                    "expected one matrix per orbit morphism (" + std::to_string(nm) +
                        ", ordered by src, dst, rep)");
    for (int m = 0; m < nm; ++m) {
        const OrbitMorphism& mor = orbit.morphisms[m];
        int rows = sys.alg[mor.src].dim;
        int cols = sys.alg[mor.dst].dim;
        sys.transfer.push_back(parse_matrix(tr[m], rows, cols, p,
                                            path + ".transfers[" + std::to_string(m) + "]"));
    }
    (void)x;
    sys.cache_inverses();
    return sys;
}

}  // namespace

ProblemFile parse_problem(const OrderedJson& j) {
    if (!j.is_object()) throw ProblemSchemaError("$: expected a JSON object");
    if (auto it = j.find("schema"); it != j.end()) {
        if (!it->is_string() || it->get<std::string>() != kProblemSchema)
            schema_fail("$.schema", std::string("expected \"") + kProblemSchema + "\"");
    }
    ProblemFile pf;
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) schema_fail("$.name", "expected a string");
        pf.name = it->get<std::string>();
    }
    pf.p = need_int(j, "p", "$");
    if (pf.p < 2 || pf.p > 127) schema_fail("$.p", "prime out of supported range");
    try {
        PrimeField probe(pf.p);
    } catch (const std::exception& e) {
        throw ProblemValidationError(std::string("$.p: ") + e.what());
    }

    FiniteGroup g = FiniteGroup::trivial();
    if (auto it = j.find("group"); it != j.end()) g = parse_group(*it, "$.group");

    const Json& sp = need(j, "space", "$");
    if (auto bit = sp.find("builder"); bit != sp.end()) {
        pf.from_builders = true;
        if (!bit->is_string()) schema_fail("$.space.builder", "expected a string");
        std::string b = bit->get<std::string>();
        if (b == "nerve") {
            int order = need_int(sp, "order", "$.space");
            int trunc = need_int(sp, "truncation", "$.space");
            if (order < 2) schema_fail("$.space.order", "nerve group order must be >= 2");
            if (trunc < 1 || trunc > 24)
                schema_fail("$.space.truncation", "truncation out of supported range");
            pf.nerve = build_nerve(FiniteGroup::cyclic(order), trunc);
            if (auto at = sp.find("automorphisms"); at != sp.end()) {
                if (!at->is_array() || static_cast<int>(at->size()) != g.n)
                    schema_fail("$.space.automorphisms",
                                "expected one permutation per group element");
                std::vector<std::vector<int>> auts;
                for (int e = 0; e < g.n; ++e)
                    auts.push_back(int_list((*at)[e], "$.space.automorphisms[" +
                                                          std::to_string(e) + "]"));
                try {
                    pf.x = nerve_with_action(*pf.nerve, g, auts);
                } catch (const std::exception& ex) {
                    throw ProblemValidationError(std::string("$.space.automorphisms: ") +
                                                 ex.what());
                }
            } else {
                pf.x = with_trivial_action(pf.nerve->space, g);
            }
        } else if (b == "standard_simplex") {
            int n = need_int(sp, "n", "$.space");
            if (n < 0 || n > 24) schema_fail("$.space.n", "out of supported range");
            pf.x = with_trivial_action(standard_simplex(n), g);
        } else {
            schema_fail("$.space.builder", "unknown builder '" + b + "'");
        }
    } else {
        pf.x = parse_explicit_space(sp, g, "$.space");
    }
    try {
        pf.x.validate();
    } catch (const std::exception& e) {
        throw ProblemValidationError(std::string("$.space: ") + e.what());
    }
    pf.orbit = OrbitStructure::build(pf.x);

    const Json& co = need(j, "coefficients", "$");
    if (auto bit = co.find("builder"); bit != co.end()) {
        pf.from_builders = true;
        if (!bit->is_string()) schema_fail("$.coefficients.builder", "expected a string");
        std::string b = bit->get<std::string>();
        try {
            if (b == "constant") {
                pf.sys = constant_system(pf.x, pf.orbit, pf.p);
            } else if (b == "group-galois") {
                if (!pf.nerve)
                    throw ProblemValidationError(
                        "$.coefficients: group-galois requires a nerve-built space");
                pf.sys = galois_system(*pf.nerve, pf.x, pf.orbit);
            } else if (b == "inversion") {
                pf.sys = inversion_system(pf.x, pf.orbit);
            } else {
                schema_fail("$.coefficients.builder", "unknown builder '" + b + "'");
            }
        } catch (const ProblemSchemaError&) {
            throw;
        } catch (const ProblemValidationError&) {
            throw;
        } catch (const std::exception& e) {
            throw ProblemValidationError(std::string("$.coefficients: ") + e.what());
        }
        if (pf.sys.p != pf.p)
            throw ProblemValidationError(
                "$.coefficients: builder prime differs from $.p");
    } else {
        pf.sys = parse_explicit_coeff(co, pf.x, pf.orbit, pf.p, "$.coefficients");
    }

    std::vector<std::string> errs = validate_coefficients(pf.x, pf.orbit, pf.sys);
    if (!errs.empty()) {
        std::string msg = "$.coefficients: " + errs.front();
        if (errs.size() > 1)
            msg += " (+" + std::to_string(errs.size() - 1) + " more)";
        throw ProblemValidationError(msg);
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemSyntaxError("cannot open '" + path + "'");
    OrderedJson j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ProblemSyntaxError(path + ": " + e.what());
    }
    ProblemFile pf = parse_problem(j);
    if (pf.name.empty()) pf.name = path;
    return pf;
}

OrderedJson emit_problem(const ProblemFile& pf) {
    Json out;
    out["schema"] = kProblemSchema;
    if (!pf.name.empty()) out["name"] = pf.name;
    out["p"] = pf.p;

    Json grp;
    Json mult = Json::array();
    for (int a = 0; a < pf.x.group.n; ++a) {
        Json row = Json::array();
        for (int b = 0; b < pf.x.group.n; ++b) row.push_back(pf.x.group.mul(a, b));
        mult.push_back(std::move(row));
    }
    grp["mult"] = std::move(mult);
    if (!pf.x.group.names.empty()) grp["names"] = pf.x.group.names;
    out["group"] = std::move(grp);

    const PresentedSimplicialSet& s = pf.x.space;
    Json space;
    Json counts = Json::array();
    for (int n = 0; n <= s.top_dim(); ++n) counts.push_back(s.count(n));
    space["counts"] = std::move(counts);
    Json faces = Json::array();
    for (int n = 1; n <= s.top_dim(); ++n) {
        Json tn = Json::array();
        for (int idx = 0; idx < s.count(n); ++idx) {
            Json row = Json::array();
            for (int i = 0; i <= n; ++i) row.push_back(emit_face(s.face(n, idx, i)));
            tn.push_back(std::move(row));
        }
        faces.push_back(std::move(tn));
    }
    space["faces"] = std::move(faces);
    Json act = Json::array();
    for (int g = 0; g < pf.x.group.n; ++g) {
        Json per = Json::array();
        for (int n = 0; n <= s.top_dim(); ++n) {
            Json perm = Json::array();
            for (int idx = 0; idx < s.count(n); ++idx) perm.push_back(pf.x.act(g, n, idx));
            per.push_back(std::move(perm));
        }
        act.push_back(std::move(per));
    }
    space["action"] = std::move(act);
    out["space"] = std::move(space);

    Json co;
    Json algs = Json::array();
    for (const CoefficientAlgebra& a : pf.sys.alg) {
        Json aj;
        aj["dim"] = a.dim;
        Json unit = Json::array();
        for (uint8_t u : a.unit) unit.push_back(static_cast<int>(u));
        aj["unit"] = std::move(unit);
        Json lm = Json::array();
        for (const Matrix& m : a.left_mult) lm.push_back(emit_matrix(m));
        aj["left_mult"] = std::move(lm);
        algs.push_back(std::move(aj));
    }
    co["algebras"] = std::move(algs);
    Json ea = Json::array();
    for (const auto& lh : pf.sys.edge_action) {
        Json l = Json::array();
        for (const Matrix& m : lh) l.push_back(emit_matrix(m));
        ea.push_back(std::move(l));
    }
    co["edge_actions"] = std::move(ea);
    Json tr = Json::array();
    for (const Matrix& m : pf.sys.transfer) tr.push_back(emit_matrix(m));
    co["transfers"] = std::move(tr);
    out["coefficients"] = std::move(co);
    return out;
}

std::unique_ptr<EqContext> make_context(const ProblemFile& pf) {
    return std::make_unique<EqContext>(pf.x, pf.orbit, pf.sys);
}

std::string dump_report(const OrderedJson& report) {
    return report.dump(2) + "\n";
}

}  // namespace eqc
