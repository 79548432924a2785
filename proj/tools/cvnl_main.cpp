// cvnl: verification and experiment CLI for the complex-valued network
// landscape library. Every subcommand emits a versioned JSON report and a
// deterministic exit code:
//   0 success, 1 verification failure, 2 I/O or parse error,
//   3 not-global-with-certificate, 4 hypothesis unmet, 64 usage error.

#include "CLI11.hpp"

#include "cvnl/crelu_net.hpp"
#include "cvnl/gallery.hpp"
#include "cvnl/io.hpp"
#include "cvnl/landscape.hpp"
#include "cvnl/linalg.hpp"
#include "cvnl/quadratic_net.hpp"
#include "cvnl/wirtinger.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

using namespace cvnl;
using Json = io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kVerifyFail = 1,
    kIoError = 2,
    kNotGlobal = 3,
    kHypothesisUnmet = 4,
    kUsage = 64,
};

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    double tol_grad_fd = 1e-5;
    double tol_fixture = 1e-10;
    double tol_gap = 1e-4;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed (all randomness derives from it)");
    cmd->add_option("--out", o.out, "write the JSON report to this path");
    cmd->add_option("--format", o.format, "grid output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol-grad-fd", o.tol_grad_fd, "finite-difference gradient tolerance");
    cmd->add_option("--tol-fixture", o.tol_fixture, "fixture comparison tolerance");
    cmd->add_option("--tol-gap", o.tol_gap, "acceptable loss gap to the oracle minimum");
}

Json report_shell(const std::string& command, const CommonOpts& o) {
    Json j;
    j["schema"] = "v1";
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = o.seed;
    return j;
}

int finish(Json& report, const CommonOpts& o,
           std::chrono::steady_clock::time_point t0, int code) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    report["wall_clock_ms"] = ms;
    report["exit_code"] = code;
    std::cout << report.dump(2) << std::endl;
    if (!o.out.empty()) {
        try {
            io::save_json_file(report, o.out);
        } catch (const IoError& e) {
            std::cerr << "error: " << e.what() << std::endl;
            return kIoError;
        }
    }
    return code;
}

// ---------------------------------------------------------------------------
// verify-fixtures
// ---------------------------------------------------------------------------

int cmd_verify_fixtures(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Json rep = report_shell("verify-fixtures", o);
    rep["config"] = {{"tol_fixture", o.tol_fixture}, {"tol_grad_fd", o.tol_grad_fd}};
    Json& res = rep["results"];
    bool ok = true;

    landscape::TrapFixture fx = landscape::trap_fixture();
    QuadNet net(fx.w_bar, fx.v_bar);

    {
        double l = quadratic_net::loss(net, fx.dataset);
        double err = std::abs(l - 1.0 / 9.0);
        bool pass = err <= o.tol_fixture;
        res["fixture_loss"] = {{"value", l}, {"abs_err", err}, {"pass", pass}};
        ok = ok && pass;
    }
    {
        // the fixture is a critical point; both the analytic gradient and the
        // finite-difference probe must vanish
        double ga = quadratic_net::grad_w(net, fx.dataset).norm();
        auto f = [&](const CVector& wv) {
            return Complex(quadratic_net::loss(QuadNet(linalg::unvec(wv, 2, 2), net.v),
                                               fx.dataset));
        };
        auto fd = wirtinger::fd_wirtinger(f, linalg::vec(net.w));
        double gf = fd.d_z.norm();
        bool pass = ga <= o.tol_grad_fd && gf <= o.tol_grad_fd;
        res["gradient_zero"] = {{"analytic_norm", ga}, {"fd_norm", gf}, {"pass", pass}};
        ok = ok && pass;
    }
    {
        RMatrix h = quadratic_net::hessian_real_embedding(net, fx.dataset);
        RMatrix expected(4, 4);
        expected << 7, -1, 5, 1, -1, 7, 1, 5, 5, 1, 7, -1, 1, 5, -1, 7;
        expected /= 108.0;
        double err = (h - expected).cwiseAbs().maxCoeff();
        RVector ev = linalg::eig_sym_real(h);
        bool pass = err <= o.tol_fixture && ev(0) >= -1e-10;
        res["h_real"] = {{"max_abs_err", err}, {"min_eigenvalue", ev(0)}, {"pass", pass}};
        ok = ok && pass;
    }
    {
        WirtingerHessian wh = quadratic_net::hessian_w(net, fx.dataset);
        RMatrix h1(2, 2), h2(2, 2);
        h1 << 5, 1, 1, 5;
        h1 /= 216.0;
        h2 << 1, -1, -1, 1;
        h2 /= 108.0;
        double block_err = 0;
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
                CMatrix mixed = wh.w_wc.block(2 * p, 2 * q, 2, 2);
                CMatrix pure = wh.ww.block(2 * p, 2 * q, 2, 2);
                RMatrix want = (p == q) ? h2 : RMatrix::Zero(2, 2);
                block_err = std::max(block_err, (mixed.real() - h1).cwiseAbs().maxCoeff());
                block_err = std::max(block_err, mixed.imag().cwiseAbs().maxCoeff());
                block_err = std::max(block_err, (pure.real() - want).cwiseAbs().maxCoeff());
                block_err = std::max(block_err, pure.imag().cwiseAbs().maxCoeff());
            }
        }
        RMatrix h = quadratic_net::hessian_complex_embedding(net, fx.dataset);
        RVector ev = linalg::eig_sym_real(h);
        int neg = 0, pos = 0;
        for (Index i = 0; i < ev.size(); ++i) {
            if (ev(i) < -1e-8) ++neg;
            if (ev(i) > 1e-8) ++pos;
        }
        bool pass = block_err <= o.tol_fixture && neg == 1 && pos >= 1;
        res["h_complex"] = {{"max_block_err", block_err},
                            {"negative_eigs", neg},
                            {"positive_eigs", pos},
                            {"min_eigenvalue", ev(0)},
                            {"pass", pass}};
        ok = ok && pass;
    }
    {
        Json entries = Json::array();
        bool pass = true;
        for (int n = 1; n <= 8; ++n) {
            landscape::TrapEscapePoint p = landscape::trap_escape_point(n);
            QuadNet moved(p.w_hat, fx.v_bar);
            double direct = quadratic_net::loss(moved, fx.dataset);
            double rel = std::abs(direct - p.loss_closed_form) / p.loss_closed_form;
            bool below = p.gap_below_trap > 0.0 && p.loss_closed_form <= 1.0 / 9.0;
            bool match = rel <= 1e-12;
            entries.push_back({{"n", n},
                               {"loss", p.loss_closed_form},
                               {"direct_loss", direct},
                               {"gap_below_trap", p.gap_below_trap},
                               {"rel_err", rel},
                               {"below_trap", below},
                               {"closed_form_matches", match}});
            pass = pass && below && match;
        }
        res["escape_point"] = {{"entries", entries}, {"pass", pass}};
        ok = ok && pass;
    }

    res["all_pass"] = ok;
    return finish(rep, o, t0, ok ? kOk : kVerifyFail);
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

int cmd_certify(const std::string& weights_file, const std::string& dataset_file,
                const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Json rep = report_shell("certify", o);
    auto [net, data] = [&] {
        try {
            return std::pair(io::load_quadnet(weights_file), io::load_dataset(dataset_file));
        } catch (const Error& e) {
            throw IoError(e.what()); // any load-time defect counts as a parse failure
        }
    }();

    rep["config"] = {{"weights", weights_file}, {"dataset", dataset_file}};
    landscape::OptimalityReport r = landscape::certify(net, data);
    Json& res = rep["results"];
    res["residual_norm"] = r.residual_norm;
    res["loss_at_point"] = r.loss_at_point;
    res["global_min_loss"] = r.global_min_loss;
    res["gap"] = r.gap;
    res["tolerance"] = r.tolerance;
    res["is_global"] = r.is_global;

    if (r.is_global) return finish(rep, o, t0, kOk);

    try {
        landscape::SaddleCertificate cert = landscape::saddle_direction(net, data);
        Json a = Json::array(), b = Json::array();
        for (Index i = 0; i < cert.a.size(); ++i) a.push_back(io::complex_to_json(cert.a(i)));
        for (Index i = 0; i < cert.b.size(); ++i) b.push_back(io::complex_to_json(cert.b(i)));
        res["saddle_certificate"] = {{"a", a},
                                     {"b", b},
                                     {"quad_value", cert.quad_value},
                                     {"alg_value", cert.alg_value}};
    } catch (const FullRank& e) {
        res["saddle_unavailable"] = e.what();
    } catch (const AlreadyOptimal& e) {
        res["saddle_unavailable"] = e.what();
    } catch (const Error& e) {
        res["saddle_unavailable"] = e.what();
    }
    return finish(rep, o, t0, kNotGlobal);
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

int cmd_experiment(const landscape::ExperimentConfig& cfg, const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Json rep = report_shell("experiment", o);
    landscape::ExperimentSummary s = landscape::descent_gap_experiment(cfg);

    Json runs = Json::array();
    for (const auto& r : s.runs) {
        runs.push_back({{"instance_index", r.instance_index},
                        {"init_index", r.init_index},
                        {"final_loss", r.final_loss},
                        {"grad_norm", r.grad_norm},
                        {"gap", r.gap},
                        {"iterations", r.iterations},
                        {"converged", r.converged}});
    }
    Json& res = rep["results"];
    res["config"] = {{"d", cfg.d},
                     {"k", cfg.k},
                     {"n", cfg.n},
                     {"instances", cfg.instances},
                     {"inits", cfg.inits},
                     {"step", cfg.step},
                     {"tol", cfg.tol},
                     {"max_iters", cfg.max_iters},
                     {"perturb_radius", cfg.perturb_radius},
                     {"real_projection", cfg.real_projection},
                     {"start_at_trap", cfg.start_at_trap}};
    res["per_instance"] = runs;
    res["instances_run"] = s.instances_run;
    res["converged_runs"] = s.converged_runs;
    res["max_gap"] = s.max_gap;
    res["failures"] = s.failures;

    bool ok = s.converged_runs == 0 ? s.instances_run >= 0 : s.max_gap < o.tol_gap;
    if (cfg.instances == 0) ok = true;
    res["gap_within_tolerance"] = ok;
    return finish(rep, o, t0, ok ? kOk : kVerifyFail);
}

// ---------------------------------------------------------------------------
// crelu
// ---------------------------------------------------------------------------

struct CreluOpts {
    std::string dataset_file;
    Index k = 2;
    double alpha = 1.0;
    double s_plus = 1.0;
    double s_minus = 0.0;
    double radius = 0.0; // 0: choose a margin-safe radius automatically
    int samples = 500;
    int inits = 4;
    int iters = 5000;
};

int cmd_crelu(const CreluOpts& c, const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Json rep = report_shell("crelu", o);
    rep["config"] = {{"dataset", c.dataset_file}, {"k", c.k},           {"alpha", c.alpha},
                     {"s_plus", c.s_plus},        {"s_minus", c.s_minus}, {"samples", c.samples},
                     {"inits", c.inits},          {"iters", c.iters}};
    Dataset data = io::load_dataset(c.dataset_file);
    Json& res = rep["results"];

    crelu::PiecewiseActivation act(c.s_plus, c.s_minus);
    crelu::CReluNet net = crelu::construct_local_min(data, c.k, c.alpha, act);
    crelu::LinearBaseline base = crelu::linear_baseline(data);
    double net_loss = crelu::crelu_loss(net, data);
    double margin = crelu::preactivation_margin(net, data);
    double xmax = data.x.cwiseAbs().maxCoeff();
    double radius = c.radius > 0 ? c.radius
                                 : std::min(1e-4, 0.5 * margin / (2.0 * (1.0 + xmax)));

    res["linear_baseline_ell"] = base.ell;
    res["constructed_loss"] = net_loss;
    res["construction_matches_baseline"] = std::abs(net_loss - base.ell) <= 1e-10;
    res["preactivation_margin"] = margin;
    res["radius"] = radius;
    res["weights"] = io::crelu_to_json(net);

    crelu::LocalMinReport lm = crelu::verify_local_min(net, data, radius, c.samples, o.seed);
    res["local_min"] = {{"is_local_min_sampled", lm.is_local_min_sampled},
                        {"min_sampled_loss", lm.min_sampled_loss},
                        {"worst_violation", lm.worst_violation},
                        {"samples", c.samples}};

    crelu::SpuriousBudget budget{c.inits, c.iters, o.seed};
    crelu::SpuriousReport sp = crelu::verify_spurious(net, data, budget);
    res["spurious"] = {{"is_spurious", sp.is_spurious},
                       {"better_loss_found",
                        sp.better_loss_found ? Json(*sp.better_loss_found) : Json(nullptr)}};

    bool ok = res["construction_matches_baseline"].get<bool>() && lm.is_local_min_sampled &&
              sp.is_spurious;
    res["all_pass"] = ok;
    return finish(rep, o, t0, ok ? kOk : kVerifyFail);
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

struct GalleryOpts {
    std::string function = "all";
    double re_lo = -3, re_hi = 3, im_lo = -3, im_hi = 3;
    int resolution = 201;
    std::string outdir = ".";
    double mmp_radius = 0.1;
    int mmp_samples = 10000;
};

int cmd_gallery(const GalleryOpts& g, const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Json rep = report_shell("gallery", o);
    rep["config"] = {{"function", g.function},   {"re_lo", g.re_lo},
                     {"re_hi", g.re_hi},         {"im_lo", g.im_lo},
                     {"im_hi", g.im_hi},         {"resolution", g.resolution},
                     {"outdir", g.outdir},       {"mmp_radius", g.mmp_radius},
                     {"mmp_samples", g.mmp_samples}};
    Json& res = rep["results"];

    std::vector<gallery::GalleryFunction> fns;
    if (g.function == "all") {
        fns = gallery::gallery_functions();
    } else {
        fns.push_back(gallery::gallery_function(g.function)); // RangeError -> usage
    }

    std::filesystem::create_directories(g.outdir);
    gallery::GridFormat fmt =
        o.format == "csv" ? gallery::GridFormat::csv : gallery::GridFormat::json;
    const char* ext = o.format == "csv" ? "csv" : "json";

    Json entries = Json::array();
    bool all_escape = true;
    int files = 0;
    for (const auto& fn : fns) {
        gallery::SurfaceGrid surface =
            gallery::sample_surface(fn, g.re_lo, g.re_hi, g.im_lo, g.im_hi, g.resolution);
        gallery::SurfaceGrid line =
            gallery::sample_real_line(fn, g.re_lo, g.re_hi, g.resolution);
        std::string base = g.outdir + "/" + fn.id;
        gallery::emit_grid_file(surface, fmt, base + "_complex." + ext);
        gallery::emit_grid_file(line, fmt, base + "_real." + ext);
        files += 2;

        Json minima = Json::array();
        for (Complex z0 : gallery::real_axis_minima(fn, g.re_lo, g.re_hi)) {
            gallery::MmpReport mr =
                gallery::mmp_spot_check(fn, z0, g.mmp_radius, g.mmp_samples);
            minima.push_back({{"x", z0.real()},
                              {"center_value", mr.center_value},
                              {"min_on_disk", mr.min_on_disk},
                              {"escapes", mr.escapes}});
            all_escape = all_escape && mr.escapes;
        }
        entries.push_back({{"id", fn.id}, {"label", fn.label}, {"minima", minima}});
    }
    res["functions"] = entries;
    res["files_written"] = files;
    res["all_escape"] = all_escape;
    return finish(rep, o, t0, all_escape ? kOk : kVerifyFail);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex-valued network landscape toolbox"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts common;

    auto* vf = app.add_subcommand("verify-fixtures",
                                  "check the built-in trap fixture against its published values");
    CommonOpts vf_o = common;
    vf_o.tol_fixture = 1e-14; // the fixture values are exact; hold them tight
    add_common(vf, vf_o);

    auto* ce = app.add_subcommand("certify", "global-optimality certificate for stored weights");
    CommonOpts ce_o = common;
    add_common(ce, ce_o);
    std::string weights_file, dataset_file;
    ce->add_option("weights", weights_file, "weights JSON file")->required();
    ce->add_option("dataset", dataset_file, "dataset JSON file")->required();

    auto* ex = app.add_subcommand("experiment", "randomized descent-gap experiment");
    CommonOpts ex_o = common;
    add_common(ex, ex_o);
    landscape::ExperimentConfig ecfg;
    ex->add_option("--d", ecfg.d, "input dimension");
    ex->add_option("--k", ecfg.k, "hidden width");
    ex->add_option("--n", ecfg.n, "points per instance");
    ex->add_option("--instances", ecfg.instances, "number of random instances");
    ex->add_option("--inits", ecfg.inits, "random starts per instance");
    ex->add_option("--step", ecfg.step, "initial descent step");
    ex->add_option("--max-iters", ecfg.max_iters, "iteration budget per run");
    ex->add_option("--conv-tol", ecfg.tol, "gradient norm that counts as converged");
    ex->add_option("--perturb-radius", ecfg.perturb_radius, "saddle-escape perturbation radius");
    ex->add_flag("--real-projected", ecfg.real_projection, "project weights to R each step");
    ex->add_flag("--start-at-trap", ecfg.start_at_trap, "seed every run at the trap fixture");

    auto* cr = app.add_subcommand("crelu", "piecewise-activation local-minimum construction");
    CommonOpts cr_o = common;
    add_common(cr, cr_o);
    CreluOpts copts;
    cr->add_option("dataset", copts.dataset_file, "dataset JSON file")->required();
    cr->add_option("--k", copts.k, "hidden width (>= 2)");
    cr->add_option("--alpha", copts.alpha, "construction scale (> 0)");
    cr->add_option("--s-plus", copts.s_plus, "positive slope");
    cr->add_option("--s-minus", copts.s_minus, "negative slope");
    cr->add_option("--radius", copts.radius, "sampling radius (0 = margin-safe default)");
    cr->add_option("--samples", copts.samples, "perturbation samples");
    cr->add_option("--inits", copts.inits, "training restarts");
    cr->add_option("--iters", copts.iters, "training iterations per restart");

    auto* ga = app.add_subcommand("gallery", "modulus surfaces of the analytic gallery");
    CommonOpts ga_o = common;
    add_common(ga, ga_o);
    GalleryOpts gopts;
    ga->add_option("--function", gopts.function, "function id or 'all'");
    ga->add_option("--re-lo", gopts.re_lo, "real-axis lower bound");
    ga->add_option("--re-hi", gopts.re_hi, "real-axis upper bound");
    ga->add_option("--im-lo", gopts.im_lo, "imaginary-axis lower bound");
    ga->add_option("--im-hi", gopts.im_hi, "imaginary-axis upper bound");
    ga->add_option("--resolution", gopts.resolution, "samples per axis");
    ga->add_option("--outdir", gopts.outdir, "directory for grid files");
    ga->add_option("--mmp-radius", gopts.mmp_radius, "spot-check disk radius");
    ga->add_option("--mmp-samples", gopts.mmp_samples, "spot-check samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (vf->parsed()) return cmd_verify_fixtures(vf_o);
        if (ce->parsed()) return cmd_certify(weights_file, dataset_file, ce_o);
        if (ex->parsed()) {
            ecfg.seed = ex_o.seed;
            return cmd_experiment(ecfg, ex_o);
        }
        if (cr->parsed()) return cmd_crelu(copts, cr_o);
        if (ga->parsed()) return cmd_gallery(gopts, ga_o);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kIoError;
    } catch (const LinearlyFittable& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kHypothesisUnmet;
    } catch (const NotReal& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kHypothesisUnmet;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kVerifyFail;
    }
    return kUsage;
}
