#pragma once

#include "cvnl/quadratic_net.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cvnl::landscape {

/// Residual matrix (1/2n) sum_i conj(r_i) x_i x_i^T. It vanishes exactly at
/// the global minima of the loss, which makes it a checkable certificate.
CMatrix optimality_residual(const QuadNet& net, const Dataset& data);

struct GlobalMinimum {
    CMatrix m_star; // d x d complex symmetric
    double min_loss = 0.0;
};

/// Global minimum of the loss over all networks, obtained from the convex
/// reformulation in M = W^T diag(v) W: a linear least-squares problem over
/// symmetric M (upper-triangle unknowns).
GlobalMinimum global_min_oracle(const Dataset& data);

/// Realize a symmetric target M as a network with v = 1 via takagi_factor.
QuadNet net_from_symmetric(const CMatrix& m);

struct OptimalityReport {
    CMatrix residual_matrix;
    double residual_norm = 0.0;
    double global_min_loss = 0.0;
    double loss_at_point = 0.0;
    double gap = 0.0;
    bool is_global = false;
    double tolerance = 0.0;
};

OptimalityReport certify(const QuadNet& net, const Dataset& data);

/// Negative-curvature certificate for a rank-deficient non-optimal point.
/// U = a b^T with D_v a in Null(W^T); quad_value is the verified curvature
/// term from quadratic_net::quad_form and alg_value the closed-form
/// 4 Re((a^T D_v a) b^T R b) with R the optimality residual.
struct SaddleCertificate {
    CVector a;
    CVector b;
    double quad_value = 0.0;
    double alg_value = 0.0;
};

SaddleCertificate saddle_direction(const QuadNet& net, const Dataset& data);

/// The known trap configuration: a dataset and real weights that form a
/// strict-in-loss local minimum of the real-weights network (loss 1/9) but
/// only a saddle point once the weights may be complex.
struct TrapFixture {
    Dataset dataset;
    CMatrix w_bar;
    CVector v_bar;
};

TrapFixture trap_fixture();

/// A point in the 10^-n neighborhood of the trap weights whose loss provably
/// drops below 1/9: W = w_bar + (i/10^n) [[1,-1],[-1,1]]. The closed-form
/// loss is 1/9 - gap with gap = (2*10^-2n - 10^-4n)/27 > 0, returned
/// separately so strictness survives rounding for large n.
struct TrapEscapePoint {
    CMatrix w_hat;
    double loss_closed_form = 0.0;
    double gap_below_trap = 0.0;
};

TrapEscapePoint trap_escape_point(int n);

struct DescendConfig {
    double step = 0.05;
    int max_iters = 5000;
    double perturb_radius = 1e-3;
    double grad_tol = 1e-8;
    std::uint64_t seed = 0;
    double oracle_tol = 1e-7; // stop when loss is this close to the oracle minimum
    bool real_projection = false;
};

struct DescendResult {
    QuadNet final_net;
    double final_loss = 0.0;
    double final_grad_norm = 0.0;
    int iterations = 0;
    int perturbations = 0;
    std::vector<double> trajectory;
};

/// Wirtinger steepest descent with backtracking and random restarts of
/// radius perturb_radius near flat points that are not oracle-optimal.
DescendResult descend(const QuadNet& net, const Dataset& data, const DescendConfig& cfg);

struct ExperimentConfig {
    Index d = 2;
    Index k = 2;
    Index n = 6;
    int instances = 20;
    int inits = 10;
    std::uint64_t seed = 0;
    double step = 0.05;
    double tol = 1e-8; // gradient norm below which a run counts as converged
    int max_iters = 20000;
    double perturb_radius = 1e-3;
    bool real_projection = false;
    bool start_at_trap = false;
};

struct ExperimentRun {
    int instance_index = 0;
    int init_index = 0;
    double final_loss = 0.0;
    double grad_norm = 0.0;
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct ExperimentSummary {
    ExperimentConfig config;
    int instances_run = 0;
    int converged_runs = 0;
    double max_gap = 0.0; // over converged runs
    std::vector<ExperimentRun> runs;
    std::vector<std::string> failures;
};

/// Randomized descent sweep; every converged run is compared against the
/// global-minimum oracle. Instance data and inits derive from per-index
/// substreams of the seed.
ExperimentSummary descent_gap_experiment(const ExperimentConfig& cfg);

} // namespace cvnl::landscape
