// Acceptance suite: runs every published criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include "cvnl/crelu_net.hpp"
#include "cvnl/gallery.hpp"
#include "cvnl/landscape.hpp"
#include "cvnl/linalg.hpp"
#include "cvnl/quadratic_net.hpp"
#include "cvnl/rng.hpp"
#include "cvnl/wirtinger.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cvnl;
using namespace cvnl::quadratic_net;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int number;
    std::string detail;
    bool pass = true;
    double budget_ms;

    void expect(bool cond, const std::string& why) {
        if (!cond) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + why;
        }
    }
};

void run(int number, const char* title, double budget_ms,
         const std::function<void(Criterion&)>& body) {
    Criterion c{number, "", true, budget_ms};
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (ms > budget_ms) {
        c.pass = false;
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %2d: %s (%.2f ms, budget %.0f ms)%s%s\n",
                c.pass ? "PASS" : "FAIL", number, title, ms, budget_ms,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.pass) ++failures;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

} // namespace

int main() {
    landscape::TrapFixture fx = landscape::trap_fixture();
    QuadNet trap_net(fx.w_bar, fx.v_bar);

    // 1. fixture loss
    run(1, "trap fixture loss equals 1/9", 1.0, [&](Criterion& c) {
        double l = loss(trap_net, fx.dataset);
        c.expect(std::abs(l - 1.0 / 9.0) <= 1e-14, "loss deviates from 1/9");
    });

    // 2. real-embedding Hessian
    run(2, "real Hessian matches the published matrix and is PSD", 10.0, [&](Criterion& c) {
        RMatrix h = hessian_real_embedding(trap_net, fx.dataset);
        RMatrix expected(4, 4);
        expected << 7, -1, 5, 1, -1, 7, 1, 5, 5, 1, 7, -1, 1, 5, -1, 7;
        expected /= 108.0;
        c.expect((h - expected).cwiseAbs().maxCoeff() <= 1e-14, "entrywise mismatch");
        RVector ev = linalg::eig_sym_real(h);
        c.expect(ev(0) >= -1e-10, "negative eigenvalue");
    });

    // 3. complex-embedding Hessian
    run(3, "complex Hessian reproduces the block pattern with one negative eigenvalue", 10.0,
        [&](Criterion& c) {
            WirtingerHessian wh = hessian_w(trap_net, fx.dataset);
            RMatrix h1(2, 2), h2(2, 2);
            h1 << 5, 1, 1, 5;
            h1 /= 216.0;
            h2 << 1, -1, -1, 1;
            h2 /= 108.0;
            double block_err = 0.0;
            for (int p = 0; p < 2; ++p) {
                for (int q = 0; q < 2; ++q) {
                    CMatrix mixed = wh.w_wc.block(2 * p, 2 * q, 2, 2);
                    CMatrix pure = wh.ww.block(2 * p, 2 * q, 2, 2);
                    RMatrix want = (p == q) ? h2 : RMatrix::Zero(2, 2);
                    block_err =
                        std::max({block_err, (mixed.real() - h1).cwiseAbs().maxCoeff(),
                                  mixed.imag().cwiseAbs().maxCoeff(),
                                  (pure.real() - want).cwiseAbs().maxCoeff(),
                                  pure.imag().cwiseAbs().maxCoeff()});
                }
            }
            c.expect(block_err <= 1e-14, "Wirtinger blocks deviate from the pattern");

            // the real-coordinates assembly must encode the same blocks
            RMatrix h = hessian_complex_embedding(trap_net, fx.dataset);
            RMatrix a = RMatrix::Zero(4, 4), b = RMatrix::Zero(4, 4);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) a.block(2 * p, 2 * q, 2, 2) = h1;
            b.block(0, 0, 2, 2) = h2;
            b.block(2, 2, 2, 2) = h2;
            RMatrix want = RMatrix::Zero(8, 8);
            want.topLeftCorner(4, 4) = 2.0 * (a + b);
            want.bottomRightCorner(4, 4) = 2.0 * (a - b);
            c.expect((h - want).cwiseAbs().maxCoeff() <= 1e-14, "embedding mismatch");

            RVector ev = linalg::eig_sym_real(h);
            int neg = 0, pos = 0;
            for (Index i = 0; i < ev.size(); ++i) {
                if (ev(i) < -1e-8) ++neg;
                if (ev(i) > 1e-8) ++pos;
            }
            c.expect(neg == 1, "expected exactly one negative eigenvalue");
            c.expect(pos >= 1, "expected a positive eigenvalue");
        });

    // 4. escape point closed form
    run(4, "escape-point closed form matches direct loss and beats the trap", 10.0,
        [&](Criterion& c) {
            for (int n = 1; n <= 8; ++n) {
                landscape::TrapEscapePoint p = landscape::trap_escape_point(n);
                double direct = loss(QuadNet(p.w_hat, fx.v_bar), fx.dataset);
                c.expect(rel_err(direct, p.loss_closed_form) <= 1e-12,
                         "closed form vs direct at n=" + std::to_string(n));
                c.expect(p.gap_below_trap > 0.0, "gap not positive at n=" + std::to_string(n));
                c.expect(p.loss_closed_form <= 1.0 / 9.0,
                         "closed form above 1/9 at n=" + std::to_string(n));
            }
        });

    // 5. derivative oracle
    run(5, "analytic derivatives match finite differences on 200 random instances", 5000.0,
        [&](Criterion& c) {
            Rng rng(1001);
            double worst = 0.0;
            bool ratios_ok = true;
            for (int trial = 0; trial < 200; ++trial) {
                Index d = 1 + static_cast<Index>(rng.next_u64() % 3);
                Index k = d + static_cast<Index>(rng.next_u64() % (6 - d));
                Index n = 1 + static_cast<Index>(rng.next_u64() % 8);
                QuadNet net(rng.complex_normal_matrix(k, d), rng.complex_normal_vector(k));
                Dataset data(rng.complex_normal_matrix(d, n), rng.complex_normal_vector(n));

                auto f_w = [&](const CVector& wv) {
                    return Complex(loss(QuadNet(linalg::unvec(wv, k, d), net.v), data));
                };
                auto fd_w = wirtinger::fd_wirtinger(f_w, linalg::vec(net.w));
                worst = std::max(worst, (linalg::vec(grad_w(net, data)) - fd_w.d_z).norm() /
                                            (1e-12 + fd_w.d_z.norm()));

                auto f_v = [&](const CVector& vv) {
                    QuadNet moved = net;
                    moved.v = vv;
                    return Complex(loss(moved, data));
                };
                auto fd_v = wirtinger::fd_wirtinger(f_v, net.v);
                worst = std::max(worst, (grad_v(net, data) - fd_v.d_z).norm() /
                                            (1e-12 + fd_v.d_z.norm()));

                // second-difference convergence sweep for the quadratic form
                WirtingerHessian h = hessian_w(net, data);
                CMatrix u = rng.complex_normal_matrix(k, d);
                double qf = quad_form(h, u);
                double base = loss(net, data);
                CVector w0 = linalg::vec(net.w);
                CVector du = linalg::vec(u);
                double prev = -1.0;
                double t = 0.2;
                for (int step = 0; step < 3; ++step) {
                    double second =
                        (f_w(w0 + t * du).real() + f_w(w0 - t * du).real() - 2 * base) / (t * t);
                    double err = std::abs(second - qf);
                    if (prev > 0 && err > 1e-9) {
                        double ratio = prev / err;
                        ratios_ok = ratios_ok && ratio > 3.5 && ratio < 4.5;
                    }
                    prev = err;
                    t /= 2;
                }
            }
            c.expect(worst < 1e-5, "gradient relative error " + std::to_string(worst));
            c.expect(ratios_ok, "second-difference convergence is not O(t^2)");
        });

    // 6. certificate vs oracle
    run(6, "optimality certificate agrees with the global oracle", 2000.0, [&](Criterion& c) {
        Rng rng(1002);
        for (int trial = 0; trial < 50; ++trial) {
            Index d = 2 + static_cast<Index>(rng.next_u64() % 2);
            Index n = 2 + static_cast<Index>(rng.next_u64() % 8);
            Dataset data(rng.complex_normal_matrix(d, n), rng.complex_normal_vector(n));
            auto g = landscape::global_min_oracle(data);
            QuadNet net = landscape::net_from_symmetric(g.m_star);
            landscape::OptimalityReport rep = landscape::certify(net, data);
            c.expect(rep.residual_norm < 1e-7, "constructed point residual too large");
            c.expect(rep.gap < 1e-7 && rep.gap >= -1e-9, "constructed point gap out of range");
        }
        landscape::OptimalityReport trap = landscape::certify(trap_net, fx.dataset);
        c.expect(trap.residual_norm > 1e-8, "trap residual unexpectedly zero");
        c.expect(trap.gap > 1e-2, "trap gap too small");
    });

    // 7. saddle certificates
    run(7, "saddle certificates carry negative curvature with matching closed form", 2000.0,
        [&](Criterion& c) {
            Rng rng(1003);
            int produced = 0;
            while (produced < 50) {
                Index d = 2 + static_cast<Index>(rng.next_u64() % 2);
                Index k = d + static_cast<Index>(rng.next_u64() % 2);
                CMatrix w = rng.complex_normal_matrix(k, d - 1) *
                            rng.complex_normal_matrix(d - 1, d);
                QuadNet net(w, rng.complex_normal_vector(k));
                Dataset data(rng.complex_normal_matrix(d, 2 * d),
                             rng.complex_normal_vector(2 * d));
                if (linalg::frobenius(landscape::optimality_residual(net, data)) <= 1e-8)
                    continue;
                landscape::SaddleCertificate cert = landscape::saddle_direction(net, data);
                c.expect(cert.quad_value < -1e-10, "certificate curvature not negative");
                c.expect(cert.alg_value < 0 && cert.quad_value < 0,
                         "sign mismatch between closed form and quadratic form");
                c.expect(std::abs(cert.quad_value - cert.alg_value) <=
                             1e-8 * (1.0 + std::abs(cert.quad_value)),
                         "closed form deviates from the assembled quadratic form");
                ++produced;
            }
        });

    // 8. desk-scale no-spurious experiment
    run(8, "descent reaches the oracle minimum whenever it converges", 60000.0,
        [&](Criterion& c) {
            int total_converged = 0;
            for (Index k : {2, 3}) {
                landscape::ExperimentConfig cfg;
                cfg.d = 2;
                cfg.k = k;
                cfg.n = 6;
                cfg.instances = 20;
                cfg.inits = 10;
                cfg.seed = 7;
                cfg.tol = 1e-8;
                cfg.max_iters = 20000;
                landscape::ExperimentSummary s = landscape::descent_gap_experiment(cfg);
                c.expect(s.failures.empty(), "runs failed");
                c.expect(s.max_gap < 1e-4,
                         "gap " + std::to_string(s.max_gap) + " at k=" + std::to_string(k));
                total_converged += s.converged_runs;
            }
            c.expect(total_converged > 0, "no run converged; experiment vacuous");
            if (c.pass) c.detail = std::to_string(total_converged) + "/400 runs converged";
        });

    // 9. real weights stay trapped, complex weights escape
    run(9, "real-projected descent is pinned at the trap while complex descent escapes", 5000.0,
        [&](Criterion& c) {
            // 1000 explicit steps with real projection: the gradient vanishes
            // so the loss must hold 1/9 to machine precision at every step
            CMatrix w = fx.w_bar;
            CVector v = fx.v_bar;
            const double step = 0.05;
            for (int it = 0; it < 1000 && c.pass; ++it) {
                QuadNet net(w, v);
                double l = loss(net, fx.dataset);
                c.expect(std::abs(l - 1.0 / 9.0) <= 1e-12,
                         "real-projected loss moved at iteration " + std::to_string(it));
                CMatrix gw = grad_w(net, fx.dataset);
                CVector gv = grad_v(net, fx.dataset);
                w = (w - 2.0 * step * gw.conjugate()).real().cast<Complex>();
                v = (v - 2.0 * step * gv.conjugate()).real().cast<Complex>();
            }

            landscape::DescendConfig cfg;
            cfg.perturb_radius = 1e-3;
            cfg.max_iters = 5000;
            cfg.seed = 7;
            landscape::DescendResult r = landscape::descend(trap_net, fx.dataset, cfg);
            c.expect(r.final_loss < 1.0 / 9.0 - 1e-3,
                     "complex escape reached only " + std::to_string(r.final_loss));
        });

    // 10. piecewise-activation construction
    run(10, "constructed piecewise-linear point: baseline loss, local min, spurious", 30000.0,
        [&](Criterion& c) {
            crelu::LinearBaseline base = crelu::linear_baseline(fx.dataset);
            for (double alpha : {0.5, 1.0, 2.0}) {
                crelu::CReluNet net = crelu::construct_local_min(
                    fx.dataset, 2, alpha, crelu::PiecewiseActivation::crelu());
                double l = crelu::crelu_loss(net, fx.dataset);
                c.expect(std::abs(l - base.ell) <= 1e-10,
                         "constructed loss differs from the baseline at alpha=" +
                             std::to_string(alpha));
            }
            crelu::CReluNet net = crelu::construct_local_min(
                fx.dataset, 2, 1.0, crelu::PiecewiseActivation::crelu());
            crelu::LocalMinReport lm = crelu::verify_local_min(net, fx.dataset, 1e-4, 500, 91);
            c.expect(lm.is_local_min_sampled && lm.worst_violation <= 1e-12,
                     "sampled perturbations beat the constructed point");
            crelu::SpuriousBudget budget{4, 5000, 3};
            crelu::SpuriousReport sp = crelu::verify_spurious(net, fx.dataset, budget);
            c.expect(sp.is_spurious, "no strictly better network found");
            if (sp.better_loss_found)
                c.expect(*sp.better_loss_found < crelu::crelu_loss(net, fx.dataset) - 1e-6,
                         "better loss not strictly below the construction");
        });

    // 11. gallery minimum-modulus spot checks
    run(11, "every strict real-axis minimum escapes on a complex disk", 10000.0,
        [&](Criterion& c) {
            int checked = 0;
            for (const auto& fn : gallery::gallery_functions()) {
                for (Complex z0 : gallery::real_axis_minima(fn, -3.0, 3.0, 1e-6)) {
                    gallery::MmpReport rep = gallery::mmp_spot_check(fn, z0, 0.1, 10000);
                    c.expect(rep.escapes, "no escape for " + fn.id);
                    ++checked;
                }
            }
            c.expect(checked >= 5, "too few minima detected; scan broken");
            if (c.pass) c.detail = std::to_string(checked) + " minima checked";
        });

    if (failures)
        std::printf("%d criterion(s) FAILED\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
