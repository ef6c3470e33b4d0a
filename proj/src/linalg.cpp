#include "eqc/linalg.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eqc {

namespace {

std::atomic<bool> g_parallel{true};

// dst += c * src (mod p), the elimination inner loop. Specialized for the
// small primes that dominate the workload so the compiler can vectorize.
void axpy_row(uint8_t* dst, const uint8_t* src, int c, int n, int p) {
    if (c == 0)
        return;
    if (p == 2) {
        for (int j = 0; j < n; ++j)
            dst[j] ^= src[j];
        return;
    }
    if (p == 3) {
        if (c == 1) {
            for (int j = 0; j < n; ++j) {
                uint8_t t = static_cast<uint8_t>(dst[j] + src[j]);
                dst[j] = static_cast<uint8_t>(t >= 3 ? t - 3 : t);
            }
        } else {  // c == 2 is subtraction mod 3
            for (int j = 0; j < n; ++j) {
                uint8_t t = static_cast<uint8_t>(dst[j] + 3 - src[j]);
                dst[j] = static_cast<uint8_t>(t >= 3 ? t - 3 : t);
            }
        }
        return;
    }
    for (int j = 0; j < n; ++j)
        dst[j] = static_cast<uint8_t>((dst[j] + c * src[j]) % p);
}

void scale_row(uint8_t* r, int c, int n, int p) {
    if (c == 1)
        return;
    for (int j = 0; j < n; ++j)
        r[j] = static_cast<uint8_t>(r[j] * c % p);
}

}  // namespace

void set_parallel_kernels(bool on) { g_parallel.store(on); }
bool parallel_kernels() {
#ifdef _OPENMP
    return g_parallel.load();
#else
    return false;
#endif
}

Matrix Matrix::identity(int n, int p) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.p() != b.p())
        throw std::invalid_argument("matmul: shape or modulus mismatch");
    Matrix c(a.rows(), b.cols(), a.p());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            axpy_row(c.row(i), b.row(k), a.at(i, k), b.cols(), a.p());
    return c;
}

FpVec matvec(const Matrix& a, const FpVec& v) {
    if (static_cast<int>(v.size()) != a.cols())
        throw std::invalid_argument("matvec: size mismatch");
    FpVec out(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        int acc = 0;
        const uint8_t* r = a.row(i);
        for (int j = 0; j < a.cols(); ++j)
            acc += r[j] * v[j];
        out[i] = static_cast<uint8_t>(acc % a.p());
    }
    return out;
}

// Reference implementation: plain textbook elimination, no tricks. The
// parallel kernel below must produce bit-identical output.
std::vector<int> rref_inplace_serial(Matrix& m) {
    PrimeField f(m.p());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m.at(pr, j), m.at(r, j));
        uint8_t invp = f.inv(m.at(r, c));
        for (int j = 0; j < m.cols(); ++j)
            m.at(r, j) = f.mul(m.at(r, j), invp);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0)
                continue;
            uint8_t factor = f.neg(m.at(i, c));
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = f.add(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<int> rref_inplace_parallel(Matrix& m) {
    PrimeField f(m.p());
    std::vector<int> pivots;
    int r = 0;
    const int n = m.cols();
    for (int c = 0; c < n && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != r)
            for (int j = 0; j < n; ++j)
                std::swap(m.at(pr, j), m.at(r, j));
        scale_row(m.row(r), f.inv(m.at(r, c)), n, m.p());
        const uint8_t* prow = m.row(r);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel_kernels() && m.rows() > 64)
#endif
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0)
                continue;
            axpy_row(m.row(i), prow, f.neg(m.at(i, c)), n, m.p());
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<int> rref_inplace(Matrix& m) {
    return parallel_kernels() ? rref_inplace_parallel(m) : rref_inplace_serial(m);
}

int rank_of(Matrix m) { return static_cast<int>(rref_inplace(m).size()); }

std::optional<FpVec> solve(const Matrix& a, const FpVec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    Matrix aug(a.rows(), a.cols() + 1, a.p());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots = rref_inplace(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;  // pivot in the augmented column: inconsistent
    FpVec x(a.cols(), 0);
    for (size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = aug.at(static_cast<int>(k), a.cols());
    return x;
}

Matrix nullspace(const Matrix& a, std::vector<int>* free_cols_out) {
    Matrix m = a;
    std::vector<int> pivots = rref_inplace(m);
    std::vector<char> is_pivot(a.cols(), 0);
    for (int c : pivots)
        is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    if (free_cols_out)
        *free_cols_out = free_cols;
    PrimeField f(a.p());
    Matrix basis(a.cols(), static_cast<int>(free_cols.size()), a.p());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<int>(k)) = f.neg(m.at(static_cast<int>(r), fc));
    }
    return basis;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: matrix not square");
    int n = a.rows();
    Matrix aug(n, 2 * n, a.p());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> pivots = rref_inplace(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: matrix is singular");
    Matrix inv(n, n, a.p());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

bool RowSpan::insert(FpVec v) {
    if (static_cast<int>(v.size()) != width_)
        throw std::invalid_argument("RowSpan::insert: width mismatch");
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint8_t c = v[pivot_[i]];
        if (c != 0)
            axpy_row(v.data(), rows_[i].data(), field_.neg(c), width_, field_.p());
    }
    int pc = -1;
    for (int j = 0; j < width_; ++j)
        if (v[j] != 0) {
            pc = j;
            break;
        }
    if (pc < 0)
        return false;
    scale_row(v.data(), field_.inv(v[pc]), width_, field_.p());
    // Keep rows ordered by pivot column so reductions stay deterministic.
    size_t pos = 0;
    while (pos < rows_.size() && pivot_[pos] < pc)
        ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivot_.insert(pivot_.begin() + pos, pc);
    return true;
}

FpVec RowSpan::reduce(FpVec v) const {
    if (static_cast<int>(v.size()) != width_)
        throw std::invalid_argument("RowSpan::reduce: width mismatch");
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint8_t c = v[pivot_[i]];
        if (c != 0)
            axpy_row(v.data(), rows_[i].data(), field_.neg(c), width_, field_.p());
    }
    return v;
}

bool RowSpan::contains(const FpVec& v) const {
    FpVec r = reduce(v);
    for (uint8_t x : r)
        if (x != 0)
            return false;
    return true;
}

FpVec CohomologyPresentation::class_of(const FpVec& z) const {
    if (static_cast<int>(z.size()) != space_dim)
        throw std::invalid_argument("class_of: cochain size mismatch");
    // Solve [boundaries | reps] w = z and read off the reps block.
    int nb = boundaries.cols(), nr = reps.cols();
    Matrix sys(space_dim, nb + nr, p);
    for (int i = 0; i < space_dim; ++i) {
        for (int j = 0; j < nb; ++j)
            sys.at(i, j) = boundaries.at(i, j);
        for (int j = 0; j < nr; ++j)
            sys.at(i, nb + j) = reps.at(i, j);
    }
    std::optional<FpVec> w = solve(sys, z);
    if (!w)
        throw std::domain_error("class_of: vector is not a cocycle of this degree");
    return FpVec(w->begin() + nb, w->end());
}

FpVec CohomologyPresentation::representative_of(const FpVec& coords) const {
    if (static_cast<int>(coords.size()) != dim)
        throw std::invalid_argument("representative_of: coordinate size mismatch");
    return matvec(reps, coords);
}

CohomologyPresentation cohomology(const Matrix& d_prev, const Matrix& d_cur) {
    if (d_prev.p() != d_cur.p())
        throw std::invalid_argument("cohomology: modulus mismatch");
    if (d_prev.rows() != d_cur.cols())
        throw std::invalid_argument("cohomology: chain degrees do not line up");
    const int p = d_prev.p();
    const int n = d_prev.rows();

    CohomologyPresentation out;
    out.p = p;
    out.space_dim = n;
    out.cocycles = nullspace(d_cur);

    // Image basis: the pivot columns of d_prev span the image.
    Matrix tmp = d_prev;
    std::vector<int> piv = rref_inplace(tmp);
    out.boundaries = Matrix(n, static_cast<int>(piv.size()), p);
    for (size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < n; ++i)
            out.boundaries.at(i, static_cast<int>(k)) = d_prev.at(i, piv[k]);

    // Representatives: cocycle basis columns that are independent modulo the
    // image, found by a single deterministic sweep.
    RowSpan span(n, p);
    for (int j = 0; j < out.boundaries.cols(); ++j) {
        FpVec col(n);
        for (int i = 0; i < n; ++i)
            col[i] = out.boundaries.at(i, j);
        span.insert(std::move(col));
    }
    std::vector<int> chosen;
    for (int j = 0; j < out.cocycles.cols(); ++j) {
        FpVec col(n);
        for (int i = 0; i < n; ++i)
            col[i] = out.cocycles.at(i, j);
        if (span.insert(std::move(col)))
            chosen.push_back(j);
    }
    out.dim = static_cast<int>(chosen.size());
    out.reps = Matrix(n, out.dim, p);
    for (int k = 0; k < out.dim; ++k)
        for (int i = 0; i < n; ++i)
            out.reps.at(i, k) = out.cocycles.at(i, chosen[k]);
    assert(out.dim == out.cocycles.cols() - out.boundaries.cols());
    return out;
}

}  // namespace eqc
