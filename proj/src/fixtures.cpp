#include "eqc/fixtures.hpp"

#include <stdexcept>

namespace eqc {

namespace {

Fixture bz3_like(const std::string& name, const std::string& desc, int trunc) {
    Fixture f;
    f.name = name;
    f.description = desc;
    f.p = 3;
    f.nerve = build_nerve(FiniteGroup::cyclic(3), trunc);
    GSimplicialSet x = with_trivial_action(f.nerve->space, FiniteGroup::trivial());
    OrbitStructure orbit = OrbitStructure::build(x);
    CoefficientSystem sys = constant_system(x, orbit, 3);
    f.ctx = std::make_unique<EqContext>(std::move(x), std::move(orbit), std::move(sys));
    return f;
}

Fixture f27_fixture(int trunc) {
    Fixture f;
    f.name = "f27";
    f.description = "nerve(Z_3), trivial acting group, F_27 values with Frobenius monodromy";
    f.p = 3;
    f.nerve = build_nerve(FiniteGroup::cyclic(3), trunc);
    GSimplicialSet x = with_trivial_action(f.nerve->space, FiniteGroup::trivial());
    OrbitStructure orbit = OrbitStructure::build(x);
    CoefficientSystem sys = galois_system(*f.nerve, x, orbit);
    f.ctx = std::make_unique<EqContext>(std::move(x), std::move(orbit), std::move(sys));
    return f;
}

Fixture z2_fixture(const std::string& name, int trunc, bool twisted) {
    Fixture f;
    f.name = name;
    f.description = twisted
                        ? "Z_2 inverting nerve(Z_3), rank-3 twisted coefficients"
                        : "Z_2 inverting nerve(Z_3), constant F_3 coefficients";
    f.p = 3;
    f.nerve = build_nerve(FiniteGroup::cyclic(3), trunc);
    // Z_2 acts through the inversion automorphism of Z_3: the nontrivial
    // element swaps the two generators.
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    std::vector<std::vector<int>> auts = {{0, 1, 2}, {0, 2, 1}};
    GSimplicialSet x = nerve_with_action(*f.nerve, z2, auts);
    OrbitStructure orbit = OrbitStructure::build(x);
    CoefficientSystem sys =
        twisted ? inversion_system(x, orbit) : constant_system(x, orbit, 3);
    f.ctx = std::make_unique<EqContext>(std::move(x), std::move(orbit), std::move(sys));
    return f;
}

Fixture bz2_fixture(int trunc) {
    Fixture f;
    f.name = "bz2";
    f.description = "nerve(Z_2), trivial acting group, constant F_2 (p = 2)";
    f.p = 2;
    f.nerve = build_nerve(FiniteGroup::cyclic(2), trunc);
    GSimplicialSet x = with_trivial_action(f.nerve->space, FiniteGroup::trivial());
    OrbitStructure orbit = OrbitStructure::build(x);
    CoefficientSystem sys = constant_system(x, orbit, 2);
    f.ctx = std::make_unique<EqContext>(std::move(x), std::move(orbit), std::move(sys));
    return f;
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"bz3", "bz3-adem", "bz3-deep", "f27", "z2-const", "z2-twisted", "bz2"};
}

int default_truncation(const std::string& name) {
    if (name == "bz3") return 8;
    if (name == "bz3-adem") return 11;
    if (name == "bz3-deep") return 14;
    if (name == "f27") return 5;
    if (name == "z2-const" || name == "z2-twisted") return 6;
    if (name == "bz2") return 4;
    throw std::invalid_argument("unknown fixture: " + name);
}

Fixture make_fixture(const std::string& name, int trunc) {
    if (name == "bz3")
        return bz3_like("bz3", "nerve(Z_3), trivial acting group, constant F_3", trunc);
    if (name == "bz3-adem")
        return bz3_like("bz3-adem", "nerve(Z_3) truncated for degree-2 Adem checks", trunc);
    if (name == "bz3-deep")
        return bz3_like("bz3-deep", "nerve(Z_3) truncated for deep-degree checks", trunc);
    if (name == "f27") return f27_fixture(trunc);
    if (name == "z2-const") return z2_fixture("z2-const", trunc, false);
    if (name == "z2-twisted") return z2_fixture("z2-twisted", trunc, true);
    if (name == "bz2") return bz2_fixture(trunc);
    throw std::invalid_argument("unknown fixture: " + name);
}

Fixture make_fixture(const std::string& name) {
    return make_fixture(name, default_truncation(name));
}

}  // namespace eqc
