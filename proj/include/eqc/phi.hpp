#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqc/fp.hpp"

namespace eqc {

// Terms of W (x) C(Delta[j])^{(x)p}: c . alpha^a e_k (x) S_1 (x) ... (x) S_p,
// each S_l a nonempty vertex bitmask of Delta[j]. Up to five tensor factors,
// which covers every prime with workable power operations.
constexpr int kMaxFactors = 5;

struct PhiTerm {
    std::array<uint32_t, kMaxFactors> m{};  // factors beyond p stay zero
    uint8_t c = 0;                          // coefficient
    uint8_t a = 0;                          // power of alpha
    uint8_t k = 0;                          // W generator degree

    bool operator==(const PhiTerm& o) const {
        return m == o.m && c == o.c && a == o.a && k == o.k;
    }
};

// Canonically ordered (k, a, masks), coefficients reduced and nonzero.
using PhiEntry = std::vector<PhiTerm>;

int phi_tensor_degree(const PhiTerm& t, int p);

PhiEntry phi_normalize(PhiEntry e, const PrimeField& f);

// Diagonal action of alpha: raises the alpha-power and rotates the last
// tensor factor to the front with the Koszul sign of the rotation.
PhiEntry phi_alpha(const PhiEntry& e, const PrimeField& f, int p);

// Total differential d(w (x) t) = dw (x) t + (-1)^{deg w} w (x) dt.
PhiEntry phi_koszul_boundary(const PhiEntry& e, const PrimeField& f, int p);

// Relabel masks along the coface of Delta[j-1] -> Delta[j] skipping vertex t
// (applied to every factor: the diagonal pushforward).
PhiEntry phi_push_vertex(const PhiEntry& e, int t);

// Contraction H = s_W (x) id + (unit.aug)_W (x) h_B of the tensor total
// complex, h_B the left-nested cone contraction of C(Delta[j])^{(x)p} onto
// the apex vertex (0 or j).
PhiEntry phi_contract(const PhiEntry& e, const PrimeField& f, int p, int apex);

// A deterministic sparse linear solve of d(x) = rhs over the degree slice of
// W (x) C(Delta[j])^{(x)p}; independent of the contraction lifts.
PhiEntry phi_solve_lift(const PhiEntry& rhs, const PrimeField& f, int p, int j,
                        int target_degree);

enum class LiftRoute { ApexZero, ApexTop, Solver };
const char* lift_route_name(LiftRoute r);

struct PhiOptions {
    int p = 3;
    LiftRoute route = LiftRoute::ApexZero;
    // Entries with i + j up to this bound assert the chain-map equation
    // d(entry) = rhs and that rhs is a cycle.
    int check_max_total = 10;
    // Solver route applies the linear-solve lift when 1 <= i, 1 <= j and
    // i + j is at most this bound, and the contraction lift elsewhere.
    int solver_max_total = 6;
};

// Memoized universal diagonal-approximation tables. entry(i, j) is the value
// on e_i tensor the j-simplex diagonal; everything else follows from
// naturality and equivariance. Entries are deterministic; an optional disk
// cache is enabled by setting EQC_PHI_CACHE_DIR.
class PhiTable {
  public:
    explicit PhiTable(PhiOptions opt);

    const PhiEntry& entry(int i, int j);
    const PhiOptions& options() const { return opt_; }

    // Right-hand side of the defining recursion at (i, j) (both i, j >= 1),
    // assembled from the cached lower entries; exposed for verification.
    PhiEntry rhs_of(int i, int j);

    // Number of terms with W-degree zero (the slice surviving augmentation);
    // entries are sorted with those terms first.
    static size_t w0_size(const PhiEntry& e);

    size_t cached_terms() const;
    size_t cached_entries() const { return cache_.size(); }
    const std::map<std::pair<int, int>, PhiEntry>& cache() const { return cache_; }

  private:
    PhiEntry compute(int i, int j);
    std::string cache_path(int i, int j) const;
    bool load_cached(int i, int j, PhiEntry* out) const;
    void store_cached(int i, int j, const PhiEntry& e) const;

    PhiOptions opt_;
    PrimeField field_;
    std::string cache_dir_;
    std::map<std::pair<int, int>, PhiEntry> cache_;
};

}  // namespace eqc
