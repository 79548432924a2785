#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cvnl/rng.hpp"
#include "cvnl/wirtinger.hpp"

#include <cmath>

using namespace cvnl;
using namespace cvnl::wirtinger;

TEST_CASE("fd_wirtinger on z^2: analytic, conjugate slot vanishes") {
    auto p = fd_wirtinger_scalar([](Complex z) { return z * z; }, Complex(1, 1), 1e-6);
    CHECK(std::abs(p.d_z(0) - Complex(2, 2)) < 1e-6);
    CHECK(std::abs(p.d_zc(0)) < 1e-6);
}

TEST_CASE("fd_wirtinger on conj(z): conjugate-analytic") {
    auto p = fd_wirtinger_scalar([](Complex z) { return std::conj(z); }, Complex(3, -2));
    CHECK(std::abs(p.d_z(0)) < 1e-9);
    CHECK(std::abs(p.d_zc(0) - Complex(1)) < 1e-9);
}

TEST_CASE("fd_wirtinger on |z|^2") {
    Complex z0(1, 1);
    auto p = fd_wirtinger_scalar([](Complex z) { return Complex(std::norm(z)); }, z0);
    CHECK(std::abs(p.d_z(0) - std::conj(z0)) < 1e-6);
    CHECK(std::abs(p.d_zc(0) - z0) < 1e-6);
}

TEST_CASE("fd_wirtinger raises on non-finite values") {
    auto bad = [](const CVector&) {
        return Complex(std::numeric_limits<double>::quiet_NaN(), 0);
    };
    CVector z(1);
    z << Complex(0);
    CHECK_THROWS_AS(fd_wirtinger(bad, z), NonFiniteValue);
}

TEST_CASE("analytic and conjugate-analytic families match the classical derivative") {
    // analytic family: Wirtinger derivative == classical derivative and the
    // conjugate slot vanishes, both to 10 h^2
    const double h = 1e-4;
    const double tol = 10 * h * h;
    struct Case {
        std::function<Complex(Complex)> f, df;
    };
    std::vector<Case> analytic = {
        {[](Complex z) { return z * z * z; }, [](Complex z) { return 3.0 * z * z; }},
        {[](Complex z) { return std::exp(z); }, [](Complex z) { return std::exp(z); }},
        {[](Complex z) { return std::sin(z); }, [](Complex z) { return std::cos(z); }},
        {[](Complex z) { return 2.0 * z + Complex(0, 1); }, [](Complex) { return Complex(2); }},
    };
    Rng rng(2);
    for (auto& c : analytic) {
        for (int t = 0; t < 5; ++t) {
            Complex z = 0.7 * rng.complex_normal();
            auto p = fd_wirtinger_scalar(c.f, z, h);
            CHECK(std::abs(p.d_z(0) - c.df(z)) < tol);
            CHECK(std::abs(p.d_zc(0)) < tol);
        }
    }
    // conjugate-analytic family: mirror statement
    for (auto& c : analytic) {
        auto g = [&](Complex z) { return c.f(std::conj(z)); };
        for (int t = 0; t < 5; ++t) {
            Complex z = 0.7 * rng.complex_normal();
            auto p = fd_wirtinger_scalar(g, z, h);
            CHECK(std::abs(p.d_z(0)) < tol);
            CHECK(std::abs(p.d_zc(0) - c.df(std::conj(z))) < tol);
        }
    }
}

TEST_CASE("real-valued functions: d_zc is the conjugate of d_z") {
    Rng rng(4);
    auto f = [](const CVector& z) {
        double acc = 0;
        for (Index i = 0; i < z.size(); ++i) acc += std::norm(z(i)) + z(i).real() * 0.5;
        return Complex(acc);
    };
    for (int t = 0; t < 10; ++t) {
        CVector z = rng.complex_normal_vector(3);
        auto p = fd_wirtinger(f, z);
        CHECK((p.d_zc - p.d_z.conjugate()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("scalar identities Re(z) and Im(z)") {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        Complex z = rng.complex_normal();
        CHECK((z + std::conj(z)) / 2.0 == Complex(z.real()));
        CHECK((z - std::conj(z)) / Complex(0, 2) == Complex(z.imag()));
    }
}

TEST_CASE("check_cre classifications") {
    auto cube = [](Complex z) { return z * z * z; };
    auto rep = check_cre(cube, Complex(1, 1));
    CHECK(rep.satisfies_cre);
    CHECK_FALSE(rep.satisfies_ccrc);

    auto conj = [](Complex z) { return std::conj(z); };
    rep = check_cre(conj, Complex(0.3, -0.8));
    CHECK(rep.satisfies_ccrc);
    CHECK_FALSE(rep.satisfies_cre);

    auto mod2 = [](Complex z) { return Complex(std::norm(z)); };
    rep = check_cre(mod2, Complex(1, 0));
    CHECK_FALSE(rep.satisfies_cre);
    CHECK_FALSE(rep.satisfies_ccrc);
}

TEST_CASE("taylor2_check: quadratic function is its own expansion") {
    auto f = [](const CVector& z) { return std::norm(z(0)) + std::norm(z(1)); };
    CVector z(2);
    z << Complex(0.3, -1), Complex(2, 0.5);
    WirtingerPair grad{CVector(2), CVector(2)};
    grad.d_z << std::conj(z(0)), std::conj(z(1));
    grad.d_zc = grad.d_z.conjugate();
    // second-order term of |z|^2 along h is exactly |h|^2; small radii sit on
    // the cancellation floor eps |f| / r^2
    auto quad = [](const CVector& h) { return h.squaredNorm(); };
    for (double r : {1.0, 0.1, 1e-3}) {
        CHECK(taylor2_check(f, z, grad, quad, r, 25) < 1e-12 + 100 * 1e-16 * f(z) / (r * r));
    }
}

TEST_CASE("taylor2_check: constant function has zero remainder") {
    auto f = [](const CVector&) { return 7.5; };
    CVector z(1);
    z << Complex(1, 2);
    WirtingerPair grad{CVector::Zero(1), CVector::Zero(1)};
    auto quad = [](const CVector&) { return 0.0; };
    CHECK(taylor2_check(f, z, grad, quad, 0.5, 10) == 0.0);
}

TEST_CASE("calculus rules hold for the finite-difference derivatives") {
    auto v = check_calculus_rules(42);
    CHECK(v.linearity < 1e-9); // linear in the differences, so near-exact
    CHECK(v.product < 1e-5);
    CHECK(v.chain < 1e-5);
}

TEST_CASE("linearity with fixed coefficients is exact up to rounding") {
    const double h = 1e-4;
    Complex alpha(2, 0), beta(0, -1);
    Complex z(0.4, -0.9);
    auto f = [](Complex w) { return w * w * w + std::conj(w); };
    auto g = [](Complex w) { return std::conj(w) * w; };
    auto df = fd_wirtinger_scalar(f, z, h);
    auto dg = fd_wirtinger_scalar(g, z, h);
    auto lin = fd_wirtinger_scalar([&](Complex w) { return alpha * f(w) + beta * g(w); }, z, h);
    CHECK(std::abs(lin.d_z(0) - (alpha * df.d_z(0) + beta * dg.d_z(0))) < 1e-10);
    CHECK(std::abs(lin.d_zc(0) - (alpha * df.d_zc(0) + beta * dg.d_zc(0))) < 1e-10);
}

TEST_CASE("product and chain rule fixtures") {
    const double h = 1e-5;
    // product: f = z^2, g = conj(z) at z = 1+i
    Complex z(1, 1);
    auto f = [](Complex w) { return w * w; };
    auto g = [](Complex w) { return std::conj(w); };
    auto df = fd_wirtinger_scalar(f, z, h);
    auto dg = fd_wirtinger_scalar(g, z, h);
    auto dfg = fd_wirtinger_scalar([&](Complex w) { return f(w) * g(w); }, z, h);
    CHECK(std::abs(dfg.d_z(0) - (df.d_z(0) * g(z) + dg.d_z(0) * f(z))) < 1e-5);
    CHECK(std::abs(dfg.d_zc(0) - (df.d_zc(0) * g(z) + dg.d_zc(0) * f(z))) < 1e-5);

    // chain: f = exp, g = z^2 at z = 0.3+0.1i (both analytic, so the rule
    // collapses to f'(g) g')
    Complex z2(0.3, 0.1);
    auto chain = fd_wirtinger_scalar([](Complex w) { return std::exp(w * w); }, z2, h);
    Complex expected = std::exp(z2 * z2) * 2.0 * z2;
    CHECK(std::abs(chain.d_z(0) - expected) < 1e-5);
    CHECK(std::abs(chain.d_zc(0)) < 1e-5);
}
