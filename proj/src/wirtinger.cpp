#include "cvnl/wirtinger.hpp"

#include "cvnl/rng.hpp"

#include <cmath>
#include <vector>

namespace cvnl::wirtinger {

namespace {

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

Complex eval_checked(const ScalarField& f, const CVector& z) {
    Complex v = f(z);
    if (!finite(v)) throw NonFiniteValue("fd_wirtinger: function value is not finite");
    return v;
}

} // namespace

WirtingerPair fd_wirtinger(const ScalarField& f, const CVector& z, double h) {
    if (h <= 0) throw RangeError("fd_wirtinger: step must be positive");
    const Index n = z.size();
    WirtingerPair out{CVector(n), CVector(n)};
    CVector p = z;
    const Complex ih(0.0, h);
    for (Index j = 0; j < n; ++j) {
        const Complex zj = z(j);
        p(j) = zj + h;
        Complex fxp = eval_checked(f, p);
        p(j) = zj - h;
        Complex fxm = eval_checked(f, p);
        p(j) = zj + ih;
        Complex fyp = eval_checked(f, p);
        p(j) = zj - ih;
        Complex fym = eval_checked(f, p);
        p(j) = zj;
        Complex dx = (fxp - fxm) / (2.0 * h);
        Complex dy = (fyp - fym) / (2.0 * h);
        out.d_z(j) = 0.5 * (dx - Complex(0, 1) * dy);
        out.d_zc(j) = 0.5 * (dx + Complex(0, 1) * dy);
    }
    return out;
}

WirtingerPair fd_wirtinger_scalar(const std::function<Complex(Complex)>& f,
                                  Complex z, double h) {
    CVector zv(1);
    zv(0) = z;
    return fd_wirtinger([&](const CVector& w) { return f(w(0)); }, zv, h);
}

CauchyRiemannReport check_cre(const std::function<Complex(Complex)>& f,
                              Complex z, double h) {
    if (h <= 0) throw RangeError("check_cre: step must be positive");
    auto val = [&](Complex w) {
        Complex v = f(w);
        if (!finite(v)) throw NonFiniteValue("check_cre: function value is not finite");
        return v;
    };
    Complex fxp = val(z + h), fxm = val(z - h);
    Complex fyp = val(z + Complex(0, h)), fym = val(z - Complex(0, h));
    double ux = (fxp.real() - fxm.real()) / (2 * h);
    double vx = (fxp.imag() - fxm.imag()) / (2 * h);
    double uy = (fyp.real() - fym.real()) / (2 * h);
    double vy = (fyp.imag() - fym.imag()) / (2 * h);

    CauchyRiemannReport rep;
    rep.cre_residual = std::abs(ux - vy) + std::abs(uy + vx);
    rep.ccrc_residual = std::abs(ux + vy) + std::abs(uy - vx);
    double tol = 100.0 * h * h;
    rep.satisfies_cre = rep.cre_residual < tol;
    rep.satisfies_ccrc = rep.ccrc_residual < tol;
    return rep;
}

double taylor2_check(const std::function<double(const CVector&)>& f,
                     const CVector& z, const WirtingerPair& grad,
                     const std::function<double(const CVector&)>& quad_term,
                     double radius, int trials, std::uint64_t seed) {
    if (radius <= 0) throw RangeError("taylor2_check: radius must be positive");
    if (trials < 1) throw RangeError("taylor2_check: trials must be >= 1");
    Rng rng(seed);
    double f0 = f(z);
    if (!std::isfinite(f0)) throw NonFiniteValue("taylor2_check: base value not finite");
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        CVector dir = rng.complex_normal_vector(z.size());
        dir *= radius / dir.norm();
        double fv = f(z + dir);
        if (!std::isfinite(fv)) throw NonFiniteValue("taylor2_check: sample value not finite");
        Complex lin = grad.d_z.transpose() * dir;
        double remainder = fv - f0 - 2.0 * lin.real() - quad_term(dir);
        worst = std::max(worst, std::abs(remainder) / (radius * radius));
    }
    return worst;
}

double RuleViolations::max() const { return std::max({linearity, product, chain}); }

namespace {

// Mixed polynomial in z and z*: sum_j a_j z^j + b_j (z*)^j. Differentiable in
// the real sense everywhere, analytic only when all b_j vanish.
struct MixedPoly {
    std::vector<Complex> a;
    std::vector<Complex> b;

    Complex operator()(Complex z) const {
        Complex acc = 0, zp = 1, cp = 1, zc = std::conj(z);
        for (size_t j = 0; j < a.size(); ++j) {
            acc += a[j] * zp + b[j] * cp;
            zp *= z;
            cp *= zc;
        }
        return acc;
    }
};

MixedPoly random_poly(Rng& rng, int degree, bool conjugate_part) {
    MixedPoly p;
    for (int j = 0; j <= degree; ++j) {
        p.a.push_back(rng.complex_normal());
        p.b.push_back(conjugate_part ? rng.complex_normal() : Complex(0));
    }
    return p;
}

} // namespace

RuleViolations check_calculus_rules(std::uint64_t seed) {
    Rng rng(seed);
    RuleViolations v;
    const double h = 1e-5;

    auto fd = [&](const std::function<Complex(Complex)>& f, Complex z) {
        return fd_wirtinger_scalar(f, z, h);
    };

    for (int trial = 0; trial < 12; ++trial) {
        MixedPoly f = random_poly(rng, 3, trial % 2 == 0);
        MixedPoly g = random_poly(rng, 2, trial % 3 == 0);
        Complex z = 0.8 * rng.complex_normal();
        Complex alpha = rng.complex_normal();
        Complex beta = rng.complex_normal();

        auto df = fd(f, z);
        auto dg = fd(g, z);

        // linearity
        auto lin = fd([&](Complex w) { return alpha * f(w) + beta * g(w); }, z);
        v.linearity = std::max(v.linearity,
                               std::abs(lin.d_z(0) - (alpha * df.d_z(0) + beta * dg.d_z(0))));
        v.linearity = std::max(v.linearity,
                               std::abs(lin.d_zc(0) - (alpha * df.d_zc(0) + beta * dg.d_zc(0))));

        // product rule
        auto prod = fd([&](Complex w) { return f(w) * g(w); }, z);
        v.product = std::max(v.product,
                             std::abs(prod.d_z(0) - (df.d_z(0) * g(z) + dg.d_z(0) * f(z))));
        v.product = std::max(v.product,
                             std::abs(prod.d_zc(0) - (df.d_zc(0) * g(z) + dg.d_zc(0) * f(z))));

        // chain rule: d(f o g)/dz = f_z(g) g_z + f_zc(g) (g^C)_z, and the
        // conjugate slot likewise; (g^C)_z = conj(g_zc), (g^C)_zc = conj(g_z).
        auto dfg = fd(f, g(z));
        auto chain = fd([&](Complex w) { return f(g(w)); }, z);
        Complex rhs_z = dfg.d_z(0) * dg.d_z(0) + dfg.d_zc(0) * std::conj(dg.d_zc(0));
        Complex rhs_zc = dfg.d_z(0) * dg.d_zc(0) + dfg.d_zc(0) * std::conj(dg.d_z(0));
        v.chain = std::max(v.chain, std::abs(chain.d_z(0) - rhs_z));
        v.chain = std::max(v.chain, std::abs(chain.d_zc(0) - rhs_zc));
    }
    return v;
}

} // namespace cvnl::wirtinger
