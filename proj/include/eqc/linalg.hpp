#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eqc/fp.hpp"

namespace eqc {

// Global switch for the OpenMP kernels. Defaults to true when built with
// OpenMP; the serial reference implementations stay available either way and
// are used by the unit tests to cross-check the parallel paths.
void set_parallel_kernels(bool on);
bool parallel_kernels();

// Dense matrix over F_p, row major, entries stored as canonical residues.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0), p_(2) {}
    Matrix(int rows, int cols, int p)
        : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }

    uint8_t& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    uint8_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    uint8_t* row(int r) { return a_.data() + static_cast<size_t>(r) * cols_; }
    const uint8_t* row(int r) const { return a_.data() + static_cast<size_t>(r) * cols_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }

    static Matrix identity(int n, int p);

  private:
    int rows_, cols_, p_;
    std::vector<uint8_t> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
FpVec matvec(const Matrix& a, const FpVec& v);

// In-place reduction to reduced row echelon form. Pivot choice is
// deterministic: scan columns left to right, pick the first remaining row
// with a nonzero entry. Returns the pivot column indices in order.
std::vector<int> rref_inplace(Matrix& m);
std::vector<int> rref_inplace_serial(Matrix& m);
std::vector<int> rref_inplace_parallel(Matrix& m);

int rank_of(Matrix m);

// Solves A x = b; free variables are set to zero. Returns nullopt when the
// system is inconsistent.
std::optional<FpVec> solve(const Matrix& a, const FpVec& b);

// Columns form the standard free-variable basis of the kernel of A, derived
// from the RREF: the basis vector for free column j has a 1 in position j and
// zeros in every other free position. When free_cols_out is given it receives
// the free column indices, so kernel coordinates can be read off a vector.
Matrix nullspace(const Matrix& a, std::vector<int>* free_cols_out = nullptr);

Matrix inverse(const Matrix& a);

// Incrementally maintained row echelon span; used for rank bookkeeping and
// membership tests against large fixed subspaces (e.g. coboundary images).
class RowSpan {
  public:
    RowSpan(int width, int p) : width_(width), field_(p) {}

    // Reduces v against the stored rows in place; returns true (and absorbs
    // the residual) when v enlarges the span.
    bool insert(FpVec v);
    // Residual of v after reduction; empty span membership test.
    FpVec reduce(FpVec v) const;
    bool contains(const FpVec& v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int width() const { return width_; }

  private:
    int width_;
    PrimeField field_;
    std::vector<int> pivot_;    // pivot column of rows_[i], strictly increasing
    std::vector<FpVec> rows_;   // echelon rows, leading coefficient 1
};

// Cohomology of a three-term segment  C_prev --d_prev--> C --d_cur--> C_next
// presented by explicit representatives: dim = nullity(d_cur) - rank(d_prev),
// with deterministic reduced-echelon cocycle representatives and coordinate
// maps in both directions.
struct CohomologyPresentation {
    int p = 2;
    int dim = 0;
    int space_dim = 0;
    Matrix cocycles;    // columns: kernel basis of d_cur
    Matrix boundaries;  // columns: image basis of d_prev
    Matrix reps;        // columns: representative cocycles, one per class

    // Coordinates of a cocycle in the representative basis (modulo the
    // boundary image). Throws when z is not in the span, i.e. not a cocycle.
    FpVec class_of(const FpVec& z) const;
    FpVec representative_of(const FpVec& coords) const;
};

CohomologyPresentation cohomology(const Matrix& d_prev, const Matrix& d_cur);

}  // namespace eqc
