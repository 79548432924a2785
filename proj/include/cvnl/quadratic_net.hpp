#pragma once

#include "cvnl/types.hpp"

namespace cvnl {

/// Complex dataset: columns of x are the input points, y the targets.
/// Real-valued data is the special case with zero imaginary parts.
struct Dataset {
    CMatrix x; // d x n
    CVector y; // n

    Dataset(CMatrix x_, CVector y_);

    Index d() const { return x.rows(); }
    Index n() const { return x.cols(); }
    bool is_real(double tol = 1e-14) const;
};

/// Shallow network x -> v^T psi(W x) with the quadratic activation
/// psi(t) = t^2. Every v_i must be nonzero; the landscape results addi-
/// tionally assume k >= d, which the experiment drivers check themselves.
struct QuadNet {
    CMatrix w; // k x d
    CVector v; // k

    QuadNet(CMatrix w_, CVector v_);

    Index k() const { return w.rows(); }
    Index d() const { return w.cols(); }
    bool is_real(double tol = 1e-14) const;
};

/// The four kd x kd blocks of the block Hessian in (W, W^C). By construction
/// wcwc = conj(ww) and wc_w = conj(w_wc); w_wc is Hermitian.
struct WirtingerHessian {
    CMatrix ww;   // d^2 L / dW dW
    CMatrix wcwc; // d^2 L / dW^C dW^C
    CMatrix w_wc; // d/dW d/dW^C, paired as vec(U)* (.) vec(U)
    CMatrix wc_w; // d/dW^C d/dW
};

namespace quadratic_net {

Complex forward(const QuadNet& net, const CVector& x);

/// i-th residual v^T psi(W x_i) - y_i (0-based index).
Complex residual(const QuadNet& net, const Dataset& data, Index i);

CVector residuals(const QuadNet& net, const Dataset& data);

/// (1/2n) sum_i |residual_i|^2
double loss(const QuadNet& net, const Dataset& data);

/// Wirtinger d(loss)/dW = D_v W ((1/n) sum_i conj(r_i) x_i x_i^T), k x d.
CMatrix grad_w(const QuadNet& net, const Dataset& data);

/// Wirtinger d(loss)/dv = (1/2n) sum_i psi(W x_i) conj(r_i), length k.
CVector grad_v(const QuadNet& net, const Dataset& data);

WirtingerHessian hessian_w(const QuadNet& net, const Dataset& data);

/// Full curvature term (h*, h^T) H (h; h^C) along U, h = vec(U); equals
/// 2 Re(vec(U)^T ww vec(U) + vec(U)* w_wc vec(U)) and is real by construction.
double quad_form(const WirtingerHessian& h, const CMatrix& u);

/// kd x kd Hessian in W of the real-weights network (v fixed); requires all
/// imaginary parts of net and data below 1e-14.
RMatrix hessian_real_embedding(const QuadNet& net, const Dataset& data);

/// 2kd x 2kd Hessian of the loss as a function of (Re W, Im W), assembled
/// from the Wirtinger blocks.
RMatrix hessian_complex_embedding(const QuadNet& net, const Dataset& data);

RMatrix embed_blocks(const WirtingerHessian& h);

} // namespace quadratic_net

} // namespace cvnl
