#pragma once

#include "cvnl/quadratic_net.hpp"

#include <cstdint>
#include <optional>

namespace cvnl::crelu {

/// Piecewise-linear activation applied separately to real and imaginary
/// parts: h(z) = hhat(Re z) + i hhat(Im z) with
/// hhat(x) = max(0, s_plus x) + min(0, s_minus x).
/// CReLU is the member (s_plus, s_minus) = (1, 0).
struct PiecewiseActivation {
    double s_plus = 1.0;
    double s_minus = 0.0;

    PiecewiseActivation(double sp, double sm);
    static PiecewiseActivation crelu() { return {1.0, 0.0}; }
};

Complex apply_h(const PiecewiseActivation& act, Complex z);

/// One-hidden-layer network x -> W2 h(W1 x + b1) + b2 with complex weights;
/// hidden width k must be at least 2.
struct CReluNet {
    CMatrix w1;  // k x d
    CVector b1;  // k
    CVector w2;  // k (the 1 x k output row)
    Complex b2;
    PiecewiseActivation act;

    CReluNet(CMatrix w1_, CVector b1_, CVector w2_, Complex b2_, PiecewiseActivation act_);

    Index k() const { return w1.rows(); }
    Index d() const { return w1.cols(); }
};

/// Loss (1/2n) || W2 h(W1 X + b1 1^T) + b2 1^T - y ||_F^2 for a real dataset.
double crelu_loss(const CReluNet& net, const Dataset& data);

/// Least-squares linear fit over the augmented inputs [x; 1].
struct LinearBaseline {
    CVector w_bar; // length d+1
    CVector y_bar; // length n
    double ell = 0.0;
};

LinearBaseline linear_baseline(const Dataset& data);

/// The explicit network whose loss equals the linear baseline and whose
/// pre-activations sit strictly inside the positive quadrant, making the
/// activation locally linear with slope s_plus. Requires a real dataset that
/// is not linearly fittable.
CReluNet construct_local_min(const Dataset& data, Index k, double alpha,
                             const PiecewiseActivation& act);

/// Smallest real or imaginary part over all pre-activations of the dataset.
double preactivation_margin(const CReluNet& net, const Dataset& data);

struct LocalMinReport {
    bool is_local_min_sampled = false;
    double min_sampled_loss = 0.0;
    double worst_violation = 0.0;
};

/// Random perturbations (eps1, delta1, eps2, delta2), each of Frobenius norm
/// `radius`, may not reduce the loss below net's own; radius must keep every
/// pre-activation inside the positive quadrant (else RadiusTooLarge).
LocalMinReport verify_local_min(const CReluNet& net, const Dataset& data,
                                double radius, int samples, std::uint64_t seed);

struct SpuriousBudget {
    int inits = 4;
    int iters = 5000;
    std::uint64_t seed = 0;
};

struct SpuriousReport {
    std::optional<double> better_loss_found;
    bool is_spurious = false;
};

/// Plain subgradient descent on the real embedding from random inits; any
/// run that beats the net's loss by more than 1e-6 witnesses spuriousness.
SpuriousReport verify_spurious(const CReluNet& net, const Dataset& data,
                               const SpuriousBudget& budget);

/// Real-embedding gradient of crelu_loss (test oracle hook and training
/// step); h' at a kink takes the s_plus branch.
struct CReluGradient {
    CMatrix w1;
    CVector b1;
    CVector w2;
    Complex b2;
};

CReluGradient crelu_gradient(const CReluNet& net, const Dataset& data);

} // namespace cvnl::crelu
