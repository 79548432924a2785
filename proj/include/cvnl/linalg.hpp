#pragma once

#include "cvnl/types.hpp"

#include <utility>
#include <vector>

namespace cvnl::linalg {

/// Row-stacking vectorization: vec(M) lists row 0, then row 1, ...
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Index rows, Index cols);

double frobenius(const CMatrix& m);

struct EigResult {
    RVector eigenvalues;  // ascending
    CMatrix eigenvectors; // columns
};

/// Eigendecomposition of a Hermitian matrix. Symmetry is checked entrywise
/// against 1e-10 and violations raise NotHermitian.
EigResult eig_hermitian(const CMatrix& m);

/// Eigenvalues (ascending) of a real symmetric matrix.
RVector eig_sym_real(const RMatrix& m);

/// Minimum-norm least-squares solution of min ||Ax - b||.
CVector lstsq(const CMatrix& a, const CVector& b);

/// Orthonormal basis of Null(M) as matrix columns. Singular values below
/// tol * sigma_max count as zero.
CMatrix null_space(const CMatrix& m, double tol = 1e-10);

/// Numerical rank with the same threshold convention as null_space.
Index numerical_rank(const CMatrix& m, double tol = 1e-10);

/// Factor a complex symmetric M as A^T A with A square. Raises NotSymmetric
/// when M deviates from its plain transpose by more than 1e-10.
CMatrix takagi_factor(const CMatrix& m);

/// Random unitary (QR of a complex Gaussian sample); test helper.
CMatrix random_unitary(Index n, std::uint64_t seed);

} // namespace cvnl::linalg
