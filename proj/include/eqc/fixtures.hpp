#pragma once

// Built-in problem instances used by the test suite and the CLI self test.
// Every fixture is generated in-process; nothing is read from disk.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqc/coeff.hpp"
#include "eqc/simplicial.hpp"

namespace eqc {

struct Fixture {
    std::string name;
    std::string description;
    int p = 3;
    // Retained when the space is a nerve so Galois-style coefficient
    // builders can address edges by group element.
    std::optional<NerveData> nerve;
    std::unique_ptr<EqContext> ctx;
};

// Known names:
//   bz3         truncated nerve(Z_3), trivial acting group, constant F_3
//   bz3-adem    same space truncated at 11 (deep enough for P^1 P^1 on
//               degree-2 classes)
//   bz3-deep    same space truncated at 14 (degree-4 cup powers, Cartan at
//               total degree 5, and P^1 P^1 on degree-3 classes)
//   f27         truncated nerve(Z_3), trivial acting group, F_27 values
//               with Frobenius monodromy
//   z2-const    Z_2 acting on nerve(Z_3) by inversion, constant F_3
//   z2-twisted  the inversion action with the rank-3 twisted system
//               (group-algebra values; see inversion_system)
//   bz2         truncated nerve(Z_2), trivial acting group, constant F_2
Fixture make_fixture(const std::string& name);
Fixture make_fixture(const std::string& name, int truncation);

std::vector<std::string> fixture_names();
int default_truncation(const std::string& name);

}  // namespace eqc
