#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "radford/scalar.hpp"

namespace rad {

/// Sorted-by-index list of nonzero entries.
using SparseVec = std::vector<std::pair<int, ThetaScalar>>;

SparseVec sv_normalize(SparseVec v);
SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_axpy(const SparseVec& a, const ThetaScalar& f, const SparseVec& b); // a + f*b
SparseVec sv_scale(const SparseVec& a, const ThetaScalar& f);
ThetaScalar sv_get(const SparseVec& v, int idx);
bool sv_is_zero(const SparseVec& v);

inline constexpr int kDefaultDimCap = 4096;

/// Row-major exact sparse matrix over ThetaScalar.
struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<SparseVec> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c, int cap = kDefaultDimCap);

    static SparseMatrix identity(int n, const ScalarContext& ctx, int cap = kDefaultDimCap);

    void add(int r, int c, const ThetaScalar& v); // accumulate, keeps row sorted
    ThetaScalar get(int r, int c) const;
    int nnz() const;

    SparseVec apply(const SparseVec& x) const;    // matrix * column vector
    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
    SparseMatrix scaled(const ThetaScalar& f) const;
    SparseMatrix transposed() const;
    bool is_zero() const;
};

struct KernelBasis {
    std::vector<SparseVec> vectors;
    int dim() const { return (int)vectors.size(); }
};

/// Exact rank by Gaussian elimination; pivots must be invertible in the
/// theta-extension (always satisfiable when entries lie in Q(zeta)).
int rank(const SparseMatrix& m);
KernelBasis kernel_basis(const SparseMatrix& m, const ScalarContext& ctx);

/// Solves A x = b exactly; nullopt when inconsistent.
std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b);
/// Inverse of a square matrix; nullopt when singular.
std::optional<SparseMatrix> inverse(const SparseMatrix& a);

/// id^(j-1) (x) c (x) id^(n-j-1) on V^(x n), where c acts on V (x) V and
/// dim V = d. 1 <= j <= n-1. Result has d^n rows; guarded by `cap`.
SparseMatrix compose_on_tensor_slot(const SparseMatrix& c, int d, int n, int j,
                                    int cap = kDefaultDimCap);

} // namespace rad
