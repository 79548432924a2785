#pragma once

#include "cvnl/types.hpp"

#include <functional>

namespace cvnl::wirtinger {

// The finite-difference oracle for every analytic derivative in this
// repository. Conventions:
//   df/dz_j  = (df/dx_j - i df/dy_j) / 2
//   df/dz*_j = (df/dx_j + i df/dy_j) / 2
// computed with central differences of step h.

struct WirtingerPair {
    CVector d_z;
    CVector d_zc;
};

constexpr double kFirstOrderStep = 1e-6;
constexpr double kSecondOrderStep = 1e-4;

using ScalarField = std::function<Complex(const CVector&)>;

WirtingerPair fd_wirtinger(const ScalarField& f, const CVector& z,
                           double h = kFirstOrderStep);

/// Scalar convenience for f : C -> C.
WirtingerPair fd_wirtinger_scalar(const std::function<Complex(Complex)>& f,
                                  Complex z, double h = kFirstOrderStep);

struct CauchyRiemannReport {
    bool satisfies_cre = false;
    bool satisfies_ccrc = false;
    double cre_residual = 0.0;
    double ccrc_residual = 0.0;
};

/// Central-difference test of the Cauchy-Riemann equations and their
/// conjugate counterparts; booleans compare the residual against 100 h^2.
CauchyRiemannReport check_cre(const std::function<Complex(Complex)>& f,
                              Complex z, double h = kSecondOrderStep);

/// Second-order Taylor remainder probe for a real-valued f. quad_term must
/// return the full second-order term of the expansion (including its 1/2
/// factor). Returns max over trials of
///   |f(z+h) - f(z) - 2 Re(d_z . h) - quad_term(h)| / radius^2.
double taylor2_check(const std::function<double(const CVector&)>& f,
                     const CVector& z, const WirtingerPair& grad,
                     const std::function<double(const CVector&)>& quad_term,
                     double radius, int trials, std::uint64_t seed = 0);

struct RuleViolations {
    double linearity = 0.0;
    double product = 0.0;
    double chain = 0.0;
    double max() const;
};

/// Randomized check of linearity, product and chain rules for the
/// finite-difference derivatives on polynomial / conjugate-polynomial test
/// functions. Returns the largest violation seen per rule.
RuleViolations check_calculus_rules(std::uint64_t seed);

} // namespace cvnl::wirtinger
