#include "cvnl/crelu_net.hpp"

#include "cvnl/linalg.hpp"
#include "cvnl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cvnl::crelu {

PiecewiseActivation::PiecewiseActivation(double sp, double sm) : s_plus(sp), s_minus(sm) {
    if (!(sp > 0) || !(sm >= 0) || sp == sm)
        throw RangeError("PiecewiseActivation: need s_plus > 0, s_minus >= 0, s_plus != s_minus");
}

namespace {

double hhat(const PiecewiseActivation& act, double x) {
    return std::max(0.0, act.s_plus * x) + std::min(0.0, act.s_minus * x);
}

double hhat_slope(const PiecewiseActivation& act, double x) {
    return x > 0 ? act.s_plus : act.s_minus;
}

void check_real(const Dataset& data) {
    if (!data.is_real())
        throw NotReal("crelu: dataset must be real-valued");
}

} // namespace

Complex apply_h(const PiecewiseActivation& act, Complex z) {
    return {hhat(act, z.real()), hhat(act, z.imag())};
}

CReluNet::CReluNet(CMatrix w1_, CVector b1_, CVector w2_, Complex b2_, PiecewiseActivation act_)
    : w1(std::move(w1_)), b1(std::move(b1_)), w2(std::move(w2_)), b2(b2_), act(act_) {
    require(w1.rows() >= 2, "CReluNet: hidden width must be at least 2");
    require(b1.size() == w1.rows() && w2.size() == w1.rows(),
            "CReluNet: b1 and w2 must have length k");
}

namespace {

CVector outputs(const CReluNet& net, const Dataset& data) {
    const Index n = data.n();
    CVector out(n);
    for (Index i = 0; i < n; ++i) {
        CVector z = net.w1 * data.x.col(i) + net.b1;
        Complex acc = net.b2;
        for (Index j = 0; j < net.k(); ++j) acc += net.w2(j) * apply_h(net.act, z(j));
        out(i) = acc;
    }
    return out;
}

} // namespace

double crelu_loss(const CReluNet& net, const Dataset& data) {
    require(net.d() == data.d(), "crelu_loss: dimension mismatch");
    check_real(data);
    CVector out = outputs(net, data);
    double acc = 0;
    for (Index i = 0; i < data.n(); ++i) acc += std::norm(out(i) - data.y(i));
    return acc / (2.0 * static_cast<double>(data.n()));
}

LinearBaseline linear_baseline(const Dataset& data) {
    check_real(data);
    const Index d = data.d(), n = data.n();
    CMatrix a(n, d + 1);
    for (Index i = 0; i < n; ++i) {
        a.row(i).head(d) = data.x.col(i).transpose();
        a(i, d) = 1.0;
    }
    LinearBaseline base;
    base.w_bar = linalg::lstsq(a, data.y);
    base.y_bar = a * base.w_bar;
    double acc = 0;
    for (Index i = 0; i < n; ++i) acc += std::norm(base.y_bar(i) - data.y(i));
    base.ell = acc / (2.0 * static_cast<double>(n));
    return base;
}

CReluNet construct_local_min(const Dataset& data, Index k, double alpha,
                             const PiecewiseActivation& act) {
    check_real(data);
    if (k < 2) throw RangeError("construct_local_min: k must be at least 2");
    if (!(alpha > 0)) throw RangeError("construct_local_min: alpha must be positive");
    LinearBaseline base = linear_baseline(data);
    if (base.ell <= 1e-12)
        throw LinearlyFittable("construct_local_min: dataset is linearly fittable");

    const Index d = data.d();
    double re_min = base.y_bar.real().minCoeff();
    double im_min = base.y_bar.imag().minCoeff();
    Complex eta(std::min(-1.0, 2.0 * re_min), std::min(-1.0, 2.0 * im_min));

    CMatrix w1 = CMatrix::Zero(k, d);
    w1.row(0) = alpha * base.w_bar.head(d).transpose();
    CVector b1 = CVector::Constant(k, -alpha * eta);
    b1(0) = alpha * (base.w_bar(d) - eta);
    CVector w2 = CVector::Zero(k);
    w2(0) = 1.0 / (alpha * act.s_plus);
    return CReluNet(std::move(w1), std::move(b1), std::move(w2), eta, act);
}

double preactivation_margin(const CReluNet& net, const Dataset& data) {
    double margin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < data.n(); ++i) {
        CVector z = net.w1 * data.x.col(i) + net.b1;
        for (Index j = 0; j < net.k(); ++j)
            margin = std::min({margin, z(j).real(), z(j).imag()});
    }
    return margin;
}

LocalMinReport verify_local_min(const CReluNet& net, const Dataset& data,
                                double radius, int samples, std::uint64_t seed) {
    check_real(data);
    double margin = preactivation_margin(net, data);
    double xmax = data.x.cwiseAbs().maxCoeff();
    if (!(radius > 0) || radius > margin / (2.0 * (1.0 + xmax)))
        throw RadiusTooLarge("verify_local_min: radius exceeds the pre-activation margin guard");

    Rng rng(seed);
    double base = crelu_loss(net, data);
    LocalMinReport rep;
    rep.min_sampled_loss = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        CMatrix e1 = rng.complex_normal_matrix(net.k(), net.d());
        CVector d1 = rng.complex_normal_vector(net.k());
        CVector e2 = rng.complex_normal_vector(net.k());
        Complex d2 = rng.complex_normal();
        e1 *= radius / e1.norm();
        d1 *= radius / d1.norm();
        e2 *= radius / e2.norm();
        d2 *= radius / std::abs(d2);
        CReluNet pert(net.w1 + e1, net.b1 + d1, net.w2 + e2, net.b2 + d2, net.act);
        double l = crelu_loss(pert, data);
        rep.min_sampled_loss = std::min(rep.min_sampled_loss, l);
        rep.worst_violation = std::max(rep.worst_violation, base - l);
    }
    rep.worst_violation = std::max(rep.worst_violation, 0.0);
    rep.is_local_min_sampled = rep.min_sampled_loss >= base - 1e-12;
    return rep;
}

CReluGradient crelu_gradient(const CReluNet& net, const Dataset& data) {
    check_real(data);
    const Index n = data.n(), k = net.k(), d = net.d();
    CReluGradient g;
    g.w1 = CMatrix::Zero(k, d);
    g.b1 = CVector::Zero(k);
    g.w2 = CVector::Zero(k);
    g.b2 = 0;

    // Gradients are packed as dL/dRe + i dL/dIm per parameter.
    for (Index i = 0; i < n; ++i) {
        CVector z = net.w1 * data.x.col(i) + net.b1;
        CVector h(k);
        for (Index j = 0; j < k; ++j) h(j) = apply_h(net.act, z(j));
        Complex o = net.b2 - data.y(i);
        for (Index j = 0; j < k; ++j) o += net.w2(j) * h(j);
        Complex co = o / static_cast<double>(n);

        g.b2 += co;
        for (Index j = 0; j < k; ++j) {
            g.w2(j) += co * std::conj(h(j));
            Complex ch = co * std::conj(net.w2(j));
            Complex cz(ch.real() * hhat_slope(net.act, z(j).real()),
                       ch.imag() * hhat_slope(net.act, z(j).imag()));
            g.b1(j) += cz;
            for (Index l = 0; l < d; ++l) g.w1(j, l) += cz * data.x(l, i).real();
        }
    }
    return g;
}

SpuriousReport verify_spurious(const CReluNet& net, const Dataset& data,
                               const SpuriousBudget& budget) {
    check_real(data);
    const double target = crelu_loss(net, data);
    const double step = 0.05;
    double best = std::numeric_limits<double>::infinity();

    for (int init = 0; init < budget.inits; ++init) {
        Rng rng = Rng::substream(budget.seed, static_cast<std::uint64_t>(init));
        CReluNet cand(rng.complex_normal_matrix(net.k(), net.d()),
                      rng.complex_normal_vector(net.k()),
                      rng.complex_normal_vector(net.k()), rng.complex_normal(), net.act);
        for (int it = 0; it < budget.iters; ++it) {
            best = std::min(best, crelu_loss(cand, data));
            CReluGradient g = crelu_gradient(cand, data);
            cand.w1 -= step * g.w1;
            cand.b1 -= step * g.b1;
            cand.w2 -= step * g.w2;
            cand.b2 -= step * g.b2;
        }
        best = std::min(best, crelu_loss(cand, data));
    }

    SpuriousReport rep;
    if (best < target - 1e-6) {
        rep.better_loss_found = best;
        rep.is_spurious = true;
    }
    return rep;
}

} // namespace cvnl::crelu
