#include "cvnl/quadratic_net.hpp"

#include <cmath>

namespace cvnl {

namespace {

bool all_finite(const CMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

double max_imag(const CMatrix& m) { return m.imag().cwiseAbs().maxCoeff(); }

} // namespace

Dataset::Dataset(CMatrix x_, CVector y_) : x(std::move(x_)), y(std::move(y_)) {
    require(x.rows() >= 1 && x.cols() >= 1, "Dataset: need d >= 1 and n >= 1");
    require(y.size() == x.cols(), "Dataset: y length must match the number of points");
    if (!all_finite(x) || !all_finite(y))
        throw NonFiniteValue("Dataset: entries must be finite");
}

bool Dataset::is_real(double tol) const {
    return max_imag(x) <= tol && max_imag(y) <= tol;
}

QuadNet::QuadNet(CMatrix w_, CVector v_) : w(std::move(w_)), v(std::move(v_)) {
    require(w.rows() >= 1 && w.cols() >= 1, "QuadNet: empty weight matrix");
    require(v.size() == w.rows(), "QuadNet: v length must equal the row count of W");
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) <= 1e-14)
            throw RangeError("QuadNet: every v_i must be nonzero");
}

bool QuadNet::is_real(double tol) const {
    return max_imag(w) <= tol && max_imag(v) <= tol;
}

namespace quadratic_net {

Complex forward(const QuadNet& net, const CVector& x) {
    require(x.size() == net.d(), "forward: input length must equal d");
    CVector pre = net.w * x;
    Complex acc = 0;
    for (Index q = 0; q < net.k(); ++q) acc += net.v(q) * pre(q) * pre(q);
    return acc;
}

Complex residual(const QuadNet& net, const Dataset& data, Index i) {
    if (i < 0 || i >= data.n()) throw IndexOutOfRange("residual: index out of range");
    return forward(net, data.x.col(i)) - data.y(i);
}

CVector residuals(const QuadNet& net, const Dataset& data) {
    require(net.d() == data.d(), "residuals: dimension mismatch");
    CVector r(data.n());
    for (Index i = 0; i < data.n(); ++i) r(i) = forward(net, data.x.col(i)) - data.y(i);
    return r;
}

double loss(const QuadNet& net, const Dataset& data) {
    CVector r = residuals(net, data);
    double acc = 0;
    for (Index i = 0; i < r.size(); ++i) acc += std::norm(r(i));
    return acc / (2.0 * static_cast<double>(data.n()));
}

CMatrix grad_w(const QuadNet& net, const Dataset& data) {
    const Index n = data.n();
    CVector r = residuals(net, data);
    CMatrix m = CMatrix::Zero(data.d(), data.d());
    for (Index i = 0; i < n; ++i) {
        CVector xi = data.x.col(i);
        m += std::conj(r(i)) * (xi * xi.transpose());
    }
    m /= static_cast<double>(n);
    return net.v.asDiagonal() * net.w * m;
}

CVector grad_v(const QuadNet& net, const Dataset& data) {
    const Index n = data.n();
    CVector r = residuals(net, data);
    CVector g = CVector::Zero(net.k());
    for (Index i = 0; i < n; ++i) {
        CVector pre = net.w * data.x.col(i);
        g += pre.cwiseProduct(pre) * std::conj(r(i));
    }
    return g / (2.0 * static_cast<double>(n));
}

WirtingerHessian hessian_w(const QuadNet& net, const Dataset& data) {
    require(net.d() == data.d(), "hessian_w: dimension mismatch");
    const Index k = net.k(), d = net.d(), n = data.n();
    const double inv2n = 1.0 / (2.0 * static_cast<double>(n));
    CVector r = residuals(net, data);

    CMatrix ww = CMatrix::Zero(k * d, k * d);
    CMatrix w_wc = CMatrix::Zero(k * d, k * d);
    for (Index i = 0; i < n; ++i) {
        CVector xi = data.x.col(i);
        CMatrix xxt = xi * xi.transpose();
        CMatrix xcxt = xi.conjugate() * xi.transpose();
        CVector fp = 2.0 * (net.w * xi); // psi'(<w_q, x_i>) per row
        for (Index p = 0; p < k; ++p) {
            // d^2 L_i / dw_p^2 = v_p psi'' x x^T with psi'' = 2; cross rows vanish
            ww.block(p * d, p * d, d, d) += inv2n * std::conj(r(i)) * net.v(p) * 2.0 * xxt;
            for (Index q = 0; q < k; ++q) {
                Complex c = std::conj(net.v(p)) * net.v(q) * std::conj(fp(p)) * fp(q);
                w_wc.block(p * d, q * d, d, d) += inv2n * c * xcxt;
            }
        }
    }

    WirtingerHessian h;
    h.ww = std::move(ww);
    h.w_wc = std::move(w_wc);
    h.wcwc = h.ww.conjugate();
    h.wc_w = h.w_wc.conjugate();
    return h;
}

double quad_form(const WirtingerHessian& h, const CMatrix& u) {
    require(h.ww.rows() == u.size(), "quad_form: direction size mismatch");
    Eigen::Map<const CVector> hv(u.data(), u.size());
    CVector wwh = h.ww * hv;
    CVector mixh = h.w_wc * hv;
    Complex t1 = hv.cwiseProduct(wwh).sum();           // h^T ww h
    Complex t2 = hv.conjugate().cwiseProduct(mixh).sum(); // h^* w_wc h
    return 2.0 * (t1 + t2).real();
}

RMatrix hessian_real_embedding(const QuadNet& net, const Dataset& data) {
    require(net.d() == data.d(), "hessian_real_embedding: dimension mismatch");
    if (!net.is_real() || !data.is_real())
        throw NotReal("hessian_real_embedding: inputs must be real-valued");
    const Index k = net.k(), d = net.d(), n = data.n();
    RMatrix x = data.x.real();
    RVector y = data.y.real();
    RMatrix w = net.w.real();
    RVector v = net.v.real();

    RVector r(n);
    for (Index i = 0; i < n; ++i) {
        RVector pre = w * x.col(i);
        r(i) = v.dot(pre.cwiseProduct(pre)) - y(i);
    }

    RMatrix h = RMatrix::Zero(k * d, k * d);
    for (Index i = 0; i < n; ++i) {
        RVector xi = x.col(i);
        RMatrix xxt = xi * xi.transpose();
        RVector fp = 2.0 * (w * xi);
        for (Index p = 0; p < k; ++p) {
            for (Index q = 0; q < k; ++q) {
                RMatrix blk;
                if (p == q)
                    blk = (v(p) / n) * r(i) * 2.0 * xxt + (v(p) * v(p) / n) * fp(p) * fp(p) * xxt;
                else
                    blk = (v(p) * v(q) / n) * fp(p) * fp(q) * xxt;
                h.block(p * d, q * d, d, d) += blk;
            }
        }
    }
    return h;
}

RMatrix embed_blocks(const WirtingerHessian& h) {
    const Index m = h.ww.rows();
    RMatrix ar = h.w_wc.real(), ai = h.w_wc.imag();
    RMatrix br = h.ww.real(), bi = h.ww.imag();
    RMatrix e(2 * m, 2 * m);
    e.topLeftCorner(m, m) = 2.0 * (ar + br);
    e.topRightCorner(m, m) = -2.0 * (ai + bi);
    e.bottomLeftCorner(m, m) = 2.0 * (ai - bi);
    e.bottomRightCorner(m, m) = 2.0 * (ar - br);
    return e;
}

RMatrix hessian_complex_embedding(const QuadNet& net, const Dataset& data) {
    return embed_blocks(hessian_w(net, data));
}

} // namespace quadratic_net

} // namespace cvnl
