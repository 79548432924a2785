#include "cvnl/linalg.hpp"

#include "cvnl/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace cvnl::linalg {

CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Index rows, Index cols) {
    require(v.size() == rows * cols, "unvec: size mismatch");
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

double frobenius(const CMatrix& m) { return m.norm(); }

EigResult eig_hermitian(const CMatrix& m) {
    require(m.rows() == m.cols(), "eig_hermitian: matrix must be square");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (((m - m.adjoint()).cwiseAbs().maxCoeff()) > 1e-10 * scale)
        throw NotHermitian("eig_hermitian: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eig_hermitian: iteration did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eig_sym_real(const RMatrix& m) {
    require(m.rows() == m.cols(), "eig_sym_real: matrix must be square");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-10 * scale)
        throw NotSymmetric("eig_sym_real: input is not symmetric");
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eig_sym_real: iteration did not converge");
    return solver.eigenvalues();
}

CVector lstsq(const CMatrix& a, const CVector& b) {
    require(a.rows() >= 1 && a.cols() >= 1, "lstsq: empty system");
    require(a.rows() == b.size(), "lstsq: rhs length mismatch");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.solve(b);
}

CMatrix null_space(const CMatrix& m, double tol) {
    if (tol <= 0) throw RangeError("null_space: tol must be positive");
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    Index dim = m.cols() - rank;
    CMatrix basis(m.cols(), dim);
    for (Index j = 0; j < dim; ++j) basis.col(j) = svd.matrixV().col(rank + j);
    return basis;
}

Index numerical_rank(const CMatrix& m, double tol) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double cutoff = tol * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

// Takagi factorization via the real symmetric embedding
//   K = [[Re M, Im M], [Im M, -Re M]].
// A unit eigenvector (u; w) of K with eigenvalue s >= 0 yields a complex
// vector q = u + iw with M q^C = s q, and the d top eigenpairs assemble
// M = Q diag(s) Q^T. Then A = diag(sqrt(s)) Q^T satisfies A^T A = M.
CMatrix takagi_factor(const CMatrix& m) {
    require(m.rows() == m.cols(), "takagi_factor: matrix must be square");
    const Index d = m.rows();
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-10 * scale)
        throw NotSymmetric("takagi_factor: input is not complex symmetric");

    RMatrix k(2 * d, 2 * d);
    k.topLeftCorner(d, d) = m.real();
    k.topRightCorner(d, d) = m.imag();
    k.bottomLeftCorner(d, d) = m.imag();
    k.bottomRightCorner(d, d) = -m.real();

    Eigen::SelfAdjointEigenSolver<RMatrix> solver(k);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("takagi_factor: eigensolver did not converge");

    // eigenvalues ascending; the top d are the singular values of M
    CMatrix q(d, d);
    CMatrix a = CMatrix::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
        Index col = 2 * d - 1 - j;
        double s = solver.eigenvalues()(col);
        RVector uv = solver.eigenvectors().col(col);
        for (Index r = 0; r < d; ++r) q(r, j) = Complex(uv(r), uv(d + r));
        double w = std::sqrt(std::max(0.0, s));
        a.row(j) = w * q.col(j).transpose();
    }
    return a;
}

CMatrix random_unitary(Index n, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix g = rng.complex_normal_matrix(n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    return q;
}

} // namespace cvnl::linalg
