#pragma once

#include <optional>
#include <random>
#include <vector>

#include "eqc/coeff.hpp"
#include "eqc/cover.hpp"

namespace eqc {

// Coboundary in the orbit-category model, computed directly from the face
// tables and the inverse monodromy of each leading edge:
//   (delta f)(x) = psi(edge01 x)^{-1} f(d_0 x) + sum_{j>=1} (-1)^j f(d_j x).
EquivariantCochain bi_coboundary(const EqContext& ctx, const EquivariantCochain& f);

// Cup product in the orbit-category model: the front face value multiplied by
// the value on the back face pulled to the base vertex,
//   (f . g)(x) = f(front) . psi(edge{0,n} x)^{-1} g(back).
EquivariantCochain bi_cup(const EqContext& ctx, const EquivariantCochain& f,
                          const EquivariantCochain& g);

// Linear constraints cutting out the equivariant cochains: for every
// non-identity orbit morphism a: G/H -> G/K and fixed simplex y of X^K,
//   f_H(a.y) = transfer(a) f_K(y).
Matrix compat_constraints(const EqContext& ctx, int n);
bool is_compatible(const EqContext& ctx, const EquivariantCochain& f);

// Which coboundary/cup implementation a model routes through: the direct
// orbit-category formulas, or the universal-cover code path via the
// comparison maps.
enum class DiffKind { Orbit, Cover };

// Cochain model of one context: compatibility subspaces per degree (with
// free-coordinate charts), the coboundary in coordinates, cohomology
// presentations, and class comparison tools that avoid full presentations
// in high degrees.
class EqModel {
  public:
    EqModel(const EqContext& ctx, DiffKind kind);

    const EqContext& ctx() const { return *ctx_; }
    DiffKind kind() const { return kind_; }
    // Largest degree with a trustworthy cohomology presentation under the
    // truncation of the underlying space.
    int max_degree() const { return ctx_->top_dim() - 1; }

    int coord_dim(int n);
    FpVec to_coords(int n, const FpVec& raw);
    FpVec from_coords(int n, const FpVec& coords);
    bool in_subspace(int n, const FpVec& raw);

    EquivariantCochain apply_delta(const EquivariantCochain& f) const;
    EquivariantCochain apply_cup(const EquivariantCochain& f, const EquivariantCochain& g) const;

    // Coboundary as a dense matrix between coordinate charts, 0 <= n < top.
    const Matrix& delta_coords(int n);
    const CohomologyPresentation& presentation(int n);
    std::vector<int> betti(int nmax);

    bool is_cocycle(const EquivariantCochain& f) const;
    // Cocycle class comparison through the coboundary image span only; usable
    // in degrees where a full presentation is too expensive.
    bool classes_equal(int n, const FpVec& raw_a, const FpVec& raw_b);
    FpVec class_of(int n, const FpVec& raw);  // coordinates in presentation(n)
    FpVec rep_of(int n, const FpVec& cls);    // raw representative cocycle

    EquivariantCochain random_compatible(int n, std::mt19937& rng);

  private:
    struct DegreeChart {
        bool built = false;
        bool identity = false;  // no constraints: coords are the raw values
        Matrix basis;
        std::vector<int> freecols;
    };
    void build_chart(int n);
    const DegreeChart& chart(int n);
    RowSpan& image_span(int n);

    const EqContext* ctx_;
    DiffKind kind_;
    std::vector<DegreeChart> charts_;
    std::vector<std::optional<Matrix>> delta_;
    std::vector<std::optional<CohomologyPresentation>> pres_;
    std::vector<std::optional<RowSpan>> image_;
};

}  // namespace eqc
