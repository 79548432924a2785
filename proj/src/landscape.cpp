#include "cvnl/landscape.hpp"

#include "cvnl/linalg.hpp"
#include "cvnl/rng.hpp"

#include <cmath>
#include <utility>

namespace cvnl::landscape {

using quadratic_net::grad_v;
using quadratic_net::grad_w;
using quadratic_net::loss;
using quadratic_net::residuals;

CMatrix optimality_residual(const QuadNet& net, const Dataset& data) {
    require(net.d() == data.d(), "optimality_residual: dimension mismatch");
    const Index n = data.n();
    CVector r = residuals(net, data);
    CMatrix m = CMatrix::Zero(data.d(), data.d());
    for (Index i = 0; i < n; ++i) {
        CVector xi = data.x.col(i);
        m += std::conj(r(i)) * (xi * xi.transpose());
    }
    return m / (2.0 * static_cast<double>(n));
}

GlobalMinimum global_min_oracle(const Dataset& data) {
    const Index d = data.d(), n = data.n();
    // x^T M x depends only on the symmetric part of M, so parametrize by the
    // upper triangle: unknown u_(j,l) with coefficient x_j x_l (j == l) or
    // 2 x_j x_l (j < l).
    const Index m = d * (d + 1) / 2;
    CMatrix a(n, m);
    for (Index i = 0; i < n; ++i) {
        CVector xi = data.x.col(i);
        Index c = 0;
        for (Index j = 0; j < d; ++j)
            for (Index l = j; l < d; ++l, ++c)
                a(i, c) = (j == l) ? xi(j) * xi(l) : 2.0 * xi(j) * xi(l);
    }
    CVector u = linalg::lstsq(a, data.y);
    CMatrix mstar(d, d);
    Index c = 0;
    for (Index j = 0; j < d; ++j)
        for (Index l = j; l < d; ++l, ++c) mstar(j, l) = mstar(l, j) = u(c);
    double min_loss = 0.0;
    CVector res = a * u - data.y;
    for (Index i = 0; i < n; ++i) min_loss += std::norm(res(i));
    min_loss /= 2.0 * static_cast<double>(n);
    return {std::move(mstar), min_loss};
}

QuadNet net_from_symmetric(const CMatrix& m) {
    CMatrix w = linalg::takagi_factor(m);
    return QuadNet(std::move(w), CVector::Ones(m.rows()));
}

namespace {

double data_scale(const Dataset& data) {
    double xmax = data.x.cwiseAbs().maxCoeff();
    double ymax = data.y.cwiseAbs().maxCoeff();
    return ymax + xmax * xmax;
}

} // namespace

OptimalityReport certify(const QuadNet& net, const Dataset& data) {
    OptimalityReport rep;
    rep.residual_matrix = optimality_residual(net, data);
    rep.residual_norm = linalg::frobenius(rep.residual_matrix);
    rep.loss_at_point = loss(net, data);
    GlobalMinimum g = global_min_oracle(data);
    rep.global_min_loss = g.min_loss;
    rep.gap = rep.loss_at_point - rep.global_min_loss;
    rep.tolerance = 1e-8 * (1.0 + data_scale(data));
    rep.is_global = rep.residual_norm <= rep.tolerance;
    return rep;
}

namespace {

// Search D_v^-1 Null(W^T) for a vector a with a^T D_v a != 0. The quadratic
// form restricted to the null space is c -> c^T S c with
// S[j,l] = z_j^T D_v^-1 z_l, so a nonzero S entry hands us a choice of c.
std::optional<CVector> null_direction(const CMatrix& w, const CVector& v) {
    CMatrix basis = linalg::null_space(w.transpose());
    const Index m = basis.cols();
    if (m == 0) return std::nullopt;
    CVector vinv = v.cwiseInverse();
    CMatrix s(m, m);
    for (Index j = 0; j < m; ++j)
        for (Index l = 0; l < m; ++l)
            s(j, l) = basis.col(j).cwiseProduct(vinv).cwiseProduct(basis.col(l)).sum();
    double smax = s.cwiseAbs().maxCoeff();
    double floor = 1e-12 * vinv.cwiseAbs().maxCoeff();
    if (smax <= floor) return std::nullopt;
    Index bj = 0, bl = 0;
    // prefer a diagonal entry
    double bestdiag = 0;
    for (Index j = 0; j < m; ++j)
        if (std::abs(s(j, j)) > bestdiag) { bestdiag = std::abs(s(j, j)); bj = bl = j; }
    if (bestdiag <= floor) {
        double best = 0;
        for (Index j = 0; j < m; ++j)
            for (Index l = j + 1; l < m; ++l)
                if (std::abs(s(j, l)) > best) { best = std::abs(s(j, l)); bj = j; bl = l; }
    }
    CVector z = basis.col(bj);
    if (bl != bj) z += basis.col(bl);
    CVector a = vinv.cwiseProduct(z);
    a /= a.norm();
    return a;
}

} // namespace

SaddleCertificate saddle_direction(const QuadNet& net, const Dataset& data) {
    const Index d = net.d();
    CMatrix dvw = net.v.asDiagonal() * net.w;
    if (linalg::numerical_rank(dvw) >= d)
        throw FullRank("saddle_direction: rank(D_v W) = d; no null direction exists");

    CMatrix res = optimality_residual(net, data);
    if (linalg::frobenius(res) <= 1e-8)
        throw AlreadyOptimal("saddle_direction: optimality residual vanishes");

    std::optional<CVector> a = null_direction(net.w, net.v);
    if (!a) {
        // a^T D_v a vanishes on the whole null space. Rescale one row
        // (v_i -> v_i/4, w_i -> 2 w_i), which changes neither the loss nor
        // the residual, search there, and pull the direction back.
        CMatrix basis = linalg::null_space(net.w.transpose());
        if (basis.cols() == 0)
            throw FullRank("saddle_direction: Null(W^T) is trivial");
        CVector a0 = net.v.cwiseInverse().cwiseProduct(basis.col(0));
        Index i;
        a0.cwiseAbs().maxCoeff(&i);
        CMatrix w2 = net.w;
        w2.row(i) *= 2.0;
        CVector v2 = net.v;
        v2(i) *= 0.25;
        std::optional<CVector> a2 = null_direction(w2, v2);
        if (!a2)
            throw Error("saddle_direction: degenerate null-space quadratic form persists after rescaling");
        CVector pulled = *a2;
        pulled(i) *= 0.5;
        pulled /= pulled.norm();
        a = pulled;
    }

    Complex z1 = a->cwiseProduct(net.v).cwiseProduct(*a).sum(); // a^T D_v a
    if (std::abs(z1) <= 1e-12)
        throw Error("saddle_direction: a^T D_v a is numerically zero");

    // b per the residual's entries: a diagonal entry if one is usable, else
    // the largest off-diagonal pair; then rotate the phase of b so that
    // Re(z1 * b^T R b) is maximally negative.
    double rscale = res.cwiseAbs().maxCoeff();
    Index bi = 0, bj = 0;
    double bestdiag = 0;
    for (Index i = 0; i < d; ++i)
        if (std::abs(res(i, i)) > bestdiag) { bestdiag = std::abs(res(i, i)); bi = bj = i; }
    CVector b0 = CVector::Zero(d);
    if (bestdiag > 1e-12 * rscale) {
        b0(bi) = 1.0;
    } else {
        double best = 0;
        for (Index i = 0; i < d; ++i)
            for (Index j = i + 1; j < d; ++j)
                if (std::abs(res(i, j)) > best) { best = std::abs(res(i, j)); bi = i; bj = j; }
        b0(bi) = b0(bj) = M_SQRT1_2;
    }
    Complex z2 = b0.cwiseProduct(res * b0).sum(); // b^T R b
    double phi = M_PI - std::arg(z1) - std::arg(z2);
    CVector b = std::polar(1.0, phi / 2.0) * b0;

    SaddleCertificate cert;
    cert.a = *a;
    cert.b = b;
    Complex z2r = b.cwiseProduct(res * b).sum();
    cert.alg_value = 4.0 * (z1 * z2r).real();
    CMatrix u = cert.a * cert.b.transpose();
    cert.quad_value = quadratic_net::quad_form(quadratic_net::hessian_w(net, data), u);
    return cert;
}

TrapFixture trap_fixture() {
    CMatrix x(2, 3);
    x << 1.0, 0.0, 0.5,
         0.0, 1.0, 0.5;
    CVector y(3);
    y << 0.0, 0.0, 1.0;
    CMatrix w = CMatrix::Ones(2, 2);
    CVector v(2);
    v << Complex(1.0 / 6.0), Complex(1.0 / 6.0);
    return TrapFixture{Dataset(std::move(x), std::move(y)), std::move(w), std::move(v)};
}

TrapEscapePoint trap_escape_point(int n) {
    if (n < 1 || n > 15)
        throw RangeError("trap_escape_point: n must lie in [1, 15]");
    double t = std::pow(10.0, -n);
    Complex it(0.0, t);
    CMatrix w(2, 2);
    w << Complex(1.0) + it, Complex(1.0) - it,
         Complex(1.0) - it, Complex(1.0) + it;
    TrapEscapePoint p;
    p.w_hat = std::move(w);
    p.gap_below_trap = (2.0 * t * t - t * t * t * t) / 27.0;
    p.loss_closed_form = 1.0 / 9.0 - p.gap_below_trap;
    return p;
}

namespace {

struct State {
    CMatrix w;
    CVector v;
};

void project_real(State& s) {
    s.w = s.w.real().cast<Complex>();
    s.v = s.v.real().cast<Complex>();
}

double raw_loss(const State& s, const Dataset& data) {
    const Index n = data.n();
    double acc = 0;
    for (Index i = 0; i < n; ++i) {
        CVector pre = s.w * data.x.col(i);
        Complex out = 0;
        for (Index q = 0; q < s.v.size(); ++q) out += s.v(q) * pre(q) * pre(q);
        acc += std::norm(out - data.y(i));
    }
    return acc / (2.0 * static_cast<double>(n));
}

} // namespace

DescendResult descend(const QuadNet& net, const Dataset& data, const DescendConfig& cfg) {
    if (cfg.step <= 0) throw RangeError("descend: step must be positive");
    require(net.d() == data.d(), "descend: dimension mismatch");

    Rng rng(cfg.seed);
    GlobalMinimum oracle = global_min_oracle(data);

    State s{net.w, net.v};
    if (cfg.real_projection) project_real(s);
    double step = cfg.step;
    int perturbations = 0;
    DescendResult out{net, 0, 0, 0, 0, {}};
    out.trajectory.reserve(static_cast<size_t>(cfg.max_iters));

    double cur = raw_loss(s, data);
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        out.trajectory.push_back(cur);
        if (cur > 1e12) throw Divergence("descend: loss exceeded 1e12");

        // gradients at the current point (same formulas as quadratic_net,
        // inline on the raw state so v may pass through zero)
        const Index n = data.n();
        CMatrix m = CMatrix::Zero(data.d(), data.d());
        CVector gv = CVector::Zero(s.v.size());
        for (Index i = 0; i < n; ++i) {
            CVector xi = data.x.col(i);
            CVector pre = s.w * xi;
            Complex outv = 0;
            for (Index q = 0; q < s.v.size(); ++q) outv += s.v(q) * pre(q) * pre(q);
            Complex rc = std::conj(outv - data.y(i));
            m += rc * (xi * xi.transpose());
            gv += pre.cwiseProduct(pre) * rc;
        }
        m /= static_cast<double>(n);
        gv /= 2.0 * static_cast<double>(n);
        CMatrix gw = s.v.asDiagonal() * s.w * m;

        double gnorm = std::sqrt(gw.squaredNorm() + gv.squaredNorm());
        if (gnorm < cfg.grad_tol) {
            bool near_oracle = (cur - oracle.min_loss) <= cfg.oracle_tol;
            if (near_oracle || perturbations >= 10 || cfg.perturb_radius == 0.0) break;
            s.w += cfg.perturb_radius * rng.complex_normal_matrix(s.w.rows(), s.w.cols());
            s.v += cfg.perturb_radius * rng.complex_normal_vector(s.v.size());
            if (cfg.real_projection) project_real(s);
            ++perturbations;
            cur = raw_loss(s, data);
            continue;
        }

        // descent along the real-embedding gradient, i.e. -2 conj(d/dW),
        // with backtracking and mild step growth
        double trial = step;
        State cand = s;
        double cand_loss = cur;
        for (int half = 0; half < 40; ++half) {
            cand.w = s.w - 2.0 * trial * gw.conjugate();
            cand.v = s.v - 2.0 * trial * gv.conjugate();
            if (cfg.real_projection) project_real(cand);
            cand_loss = raw_loss(cand, data);
            if (cand_loss < cur) break;
            trial *= 0.5;
        }
        if (cand_loss >= cur) break; // no descent direction at fp resolution
        s = cand;
        cur = cand_loss;
        step = std::min(trial * 1.3, 0.25);
    }

    // final gradient norm
    CMatrix gw;
    CVector gv;
    {
        const Index n = data.n();
        CMatrix m = CMatrix::Zero(data.d(), data.d());
        gv = CVector::Zero(s.v.size());
        for (Index i = 0; i < n; ++i) {
            CVector xi = data.x.col(i);
            CVector pre = s.w * xi;
            Complex outv = 0;
            for (Index q = 0; q < s.v.size(); ++q) outv += s.v(q) * pre(q) * pre(q);
            Complex rc = std::conj(outv - data.y(i));
            m += rc * (xi * xi.transpose());
            gv += pre.cwiseProduct(pre) * rc;
        }
        m /= static_cast<double>(n);
        gv /= 2.0 * static_cast<double>(n);
        gw = s.v.asDiagonal() * s.w * m;
    }

    out.final_net = QuadNet(s.w, s.v);
    out.final_loss = cur;
    out.final_grad_norm = std::sqrt(gw.squaredNorm() + gv.squaredNorm());
    out.iterations = it;
    out.perturbations = perturbations;
    return out;
}

ExperimentSummary descent_gap_experiment(const ExperimentConfig& cfg) {
    if (cfg.k < cfg.d)
        throw RangeError("descent_gap_experiment: requires k >= d");
    ExperimentSummary sum;
    sum.config = cfg;

    for (int inst = 0; inst < cfg.instances; ++inst) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(inst));
        Dataset data = cfg.start_at_trap
                           ? trap_fixture().dataset
                           : Dataset(rng.complex_normal_matrix(cfg.d, cfg.n),
                                     rng.complex_normal_vector(cfg.n));
        GlobalMinimum oracle = global_min_oracle(data);
        ++sum.instances_run;

        for (int init = 0; init < cfg.inits; ++init) {
            try {
                QuadNet start = [&]() {
                    if (cfg.start_at_trap) {
                        TrapFixture f = trap_fixture();
                        return QuadNet(f.w_bar, f.v_bar);
                    }
                    return QuadNet(rng.complex_normal_matrix(cfg.k, cfg.d),
                                   rng.complex_normal_vector(cfg.k));
                }();
                DescendConfig dc;
                dc.step = cfg.step;
                dc.max_iters = cfg.max_iters;
                dc.perturb_radius = cfg.perturb_radius;
                dc.grad_tol = cfg.tol;
                dc.seed = cfg.seed ^ (static_cast<std::uint64_t>(inst) << 20) ^
                          static_cast<std::uint64_t>(init);
                dc.real_projection = cfg.real_projection;
                DescendResult r = descend(start, data, dc);

                ExperimentRun run;
                run.instance_index = inst;
                run.init_index = init;
                run.final_loss = r.final_loss;
                run.grad_norm = r.final_grad_norm;
                run.gap = r.final_loss - oracle.min_loss;
                run.iterations = r.iterations;
                run.converged = r.final_grad_norm < cfg.tol;
                if (run.converged) {
                    ++sum.converged_runs;
                    sum.max_gap = std::max(sum.max_gap, run.gap);
                }
                sum.runs.push_back(run);
            } catch (const std::exception& e) {
                sum.failures.push_back("instance " + std::to_string(inst) + " init " +
                                       std::to_string(init) + ": " + e.what());
            }
        }
    }
    return sum;
}

} // namespace cvnl::landscape
