#include <cmath>

#include "bsscovar/kernels.hpp"
#include "bsscovar/rng.hpp"
#include "doctest.h"

using namespace bsscovar;

namespace {

KernelPair pair_of(double d1, double l1, double d2, double l2, double rho) {
    return KernelPair{GammaKernel{d1, l1}, GammaKernel{d2, l2}, rho};
}

}  // namespace

TEST_CASE("eval_g pointwise") {
    GammaKernel k{0.25, 1.0};
    CHECK(eval_g(k, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(eval_g(k, -0.5) == 0.0);
    CHECK(eval_g(k, 0.0) == 0.0);
    // high-precision reference for a rough kernel near the origin
    GammaKernel rough{-0.2, 2.0};
    CHECK(eval_g(rough, 0.01) == doctest::Approx(2.4621477476629303).epsilon(1e-14));
}

TEST_CASE("eval_g sign structure") {
    GammaKernel k{-0.3, 0.7};
    NormalStream z(7, 0);
    for (int i = 0; i < 200; ++i) {
        double x = std::abs(z.next()) + 1e-12;
        CHECK(eval_g(k, x) > 0.0);
        CHECK(eval_g(k, -x) == 0.0);
    }
}

TEST_CASE("kernel validity ranges") {
    CHECK(GammaKernel{0.3, 1.0}.lln_valid());
    CHECK_FALSE(GammaKernel{0.3, 1.0}.clt_valid());
    CHECK(GammaKernel{-0.4, 1.0}.clt_valid());
    CHECK_FALSE(GammaKernel{0.0, 1.0}.lln_valid());
    CHECK_THROWS_WITH_AS(validate(GammaKernel{0.0, 1.0}),
                         doctest::Contains("(-1/2, 1/2)"), std::domain_error);
    CHECK_THROWS_AS(validate(GammaKernel{0.1, 0.0}), std::domain_error);
    CHECK_THROWS_AS(validate(pair_of(0.1, 1, 0.1, 1, 1.5)), std::domain_error);
}

TEST_CASE("tau_n against the independent graded-mesh oracle") {
    GammaKernel k{0.2, 1.0};
    CHECK(tau_n(k, 16) == doctest::Approx(0.12294699864974394).epsilon(1e-9));
}

TEST_CASE("tau_n squared dominates the head integral") {
    QuadratureConfig q;
    for (GammaKernel k : {GammaKernel{0.2, 1.0}, GammaKernel{-0.3, 2.0}, GammaKernel{0.45, 0.5}}) {
        long n = 32;
        double head = integrate([&](double s) { return k.squared(s); }, 0.0, 1.0 / n, q, {}, {0.0}).value;
        double t = tau_n(k, n, q);
        CHECK(head > 0.0);
        CHECK(t * t >= head);
    }
}

TEST_CASE("tau_n small-mesh power law") {
    // tau_n / (dt^{delta+1/2} sqrt(P(delta))) -> 1 with P the small-scale
    // variance constant.
    GammaKernel k{0.1, 1.0};
    long n = 1L << 20;
    double dt = 1.0 / static_cast<double>(n);
    double predicted = std::pow(dt, k.delta + 0.5) * std::sqrt(small_scale_variance_constant(k.delta));
    CHECK(tau_n(k, n) / predicted == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("tau_n equals sqrt(rbar) on the diagonal") {
    QuadratureConfig q;
    for (double d : {0.2, -0.25}) {
        KernelPair p = pair_of(d, 1.0, d, 1.0, 1.0);
        for (long n : {4L, 64L}) {
            double t = tau_n(p.k1, n, q);
            double rb = rbar(p, 1, 1, 1.0 / static_cast<double>(n), q);
            CHECK(std::abs(t * t - rb) <= 10.0 * q.abs_tol);
        }
    }
}

TEST_CASE("rbar oracle values and ordering sensitivity") {
    KernelPair p = pair_of(0.2, 1.0, -0.1, 1.0, 0.5);
    CHECK(rbar(p, 1, 2, 0.1) == doctest::Approx(0.61852976507626089).epsilon(1e-9));
    CHECK(rbar(p, 2, 1, 0.1) == doctest::Approx(0.56731291424205057).epsilon(1e-9));
    CHECK(rbar(p, 1, 1, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("rbar is symmetric for identical kernels") {
    KernelPair p = pair_of(0.15, 1.3, 0.15, 1.3, 0.4);
    for (double t : {0.01, 0.3, 2.0}) {
        CHECK(rbar(p, 1, 2, t) == doctest::Approx(rbar(p, 2, 1, t)).epsilon(1e-11));
    }
}

TEST_CASE("c_of_x oracle and reductions") {
    KernelPair p = pair_of(0.2, 1.0, 0.1, 2.0, 0.5);
    CHECK(c_of_x(p, 0.05) == doctest::Approx(0.014948934330002104).epsilon(1e-9));

    // identical kernels: c(x) equals the diagonal variogram at x
    KernelPair ident = pair_of(0.2, 1.0, 0.2, 1.0, 1.0);
    QuadratureConfig q;
    for (double x : {0.02, 0.25}) {
        double c = c_of_x(ident, x, q);
        CHECK(c > 0.0);
        CHECK(c == doctest::Approx(rbar(ident, 1, 1, x, q)).epsilon(1e-9));
        double t = tau_at(view(ident.k1), x, q);
        CHECK(c == doctest::Approx(t * t).epsilon(1e-9));
    }
}

TEST_CASE("c_of_x agrees with the expanded cross form") {
    KernelPair p = pair_of(0.2, 1.0, -0.1, 1.5, 0.5);
    for (double x : {0.01, 0.2}) {
        CHECK(c_of_x(p, x) == doctest::Approx(c_of_x_cross_form(p, x)).epsilon(1e-8));
    }
}

TEST_CASE("c_of_x power-law prefactor stabilises near zero") {
    KernelPair p = pair_of(0.2, 1.0, 0.1, 2.0, 0.5);
    double theta = p.k1.delta + p.k2.delta + 1.0;
    double limit = h_gamma(p) * std::sqrt(small_scale_variance_constant(p.k1.delta) *
                                          small_scale_variance_constant(p.k2.delta));
    double l3 = c_of_x(p, 1e-3) / std::pow(1e-3, theta);
    double l4 = c_of_x(p, 1e-4) / std::pow(1e-4, theta);
    double l5 = c_of_x(p, 1e-5) / std::pow(1e-5, theta);
    CHECK(std::abs(l5 - limit) < std::abs(l3 - limit));
    CHECK(l5 == doctest::Approx(limit).epsilon(5e-3));
    CHECK(l4 == doctest::Approx(limit).epsilon(2e-2));
}

TEST_CASE("h_gamma closed form against the gamma-function oracle") {
    CHECK(h_gamma(pair_of(0.1, 1, 0.2, 1, 0.5)) == doctest::Approx(0.97498891276372986).epsilon(1e-13));
    CHECK(h_gamma(pair_of(-0.2, 1, 0.1, 1, 0.5)) == doctest::Approx(0.81635015893639171).epsilon(1e-13));
    CHECK(h_gamma(pair_of(0.2, 1, -0.1, 1, 0.5)) == doctest::Approx(0.81332537034872333).epsilon(1e-13));
    CHECK(h_gamma_directed(pair_of(0.1, 1, 0.2, 1, 0.5), 1, 2) ==
          doctest::Approx(1.2780612586572198).epsilon(1e-13));
    CHECK(h_gamma_directed(pair_of(0.1, 1, 0.2, 1, 0.5), 2, 1) ==
          doctest::Approx(0.67191656687023986).epsilon(1e-13));
    CHECK(h_gamma_directed(pair_of(-0.2, 1, 0.1, 1, 0.5), 1, 2) ==
          doctest::Approx(-1.8098622444070942).epsilon(1e-13));
    CHECK(h_gamma_directed(pair_of(-0.2, 1, 0.1, 1, 0.5), 2, 1) ==
          doctest::Approx(3.4425625622798777).epsilon(1e-13));
}

TEST_CASE("h_gamma is lambda-free, swap-symmetric, and 1 on equal exponents") {
    double a = h_gamma(pair_of(0.1, 1.0, 0.2, 1.0, 0.3));
    double b = h_gamma(pair_of(0.1, 3.0, 0.2, 0.5, 0.3));
    CHECK(a == b);
    CHECK(h_gamma(pair_of(0.2, 2.0, 0.1, 1.0, 0.3)) == doctest::Approx(a).epsilon(1e-14));
    CHECK(h_gamma(pair_of(0.17, 1.0, 0.17, 5.0, -0.4)) == 1.0);
    double h12 = h_gamma_directed(pair_of(0.1, 1, 0.2, 1, 0.5), 1, 2);
    double h21 = h_gamma_directed(pair_of(0.1, 1, 0.2, 1, 0.5), 2, 1);
    CHECK(0.5 * (h12 + h21) == doctest::Approx(a).epsilon(1e-14));
}

TEST_CASE("h_gamma rejects the gamma-function pole at delta1 + delta2 = 0") {
    CHECK_THROWS_WITH_AS(h_gamma(pair_of(0.2, 1.0, -0.2, 1.0, 0.5)),
                         doctest::Contains("pole"), std::domain_error);
}

TEST_CASE("quadrature ratio c / sqrt(rbar rbar) approaches h_gamma") {
    KernelPair p = pair_of(0.1, 1.0, 0.2, 3.0, 0.5);
    QuadratureConfig q;
    double x = 1e-4;
    double ratio = c_of_x(p, x, q) / std::sqrt(rbar(p, 1, 1, x, q) * rbar(p, 2, 2, x, q));
    CHECK(ratio == doctest::Approx(h_gamma(p)).epsilon(1e-2));
}

TEST_CASE("custom kernel through the extension point") {
    // plain exponential kernel: closed-form increment variance
    double lambda = 1.7;
    KernelView k{[lambda](double x) { return x <= 0.0 ? 0.0 : std::exp(-lambda * x); }, 0.0, lambda};
    double dt = 0.125;
    double expected = (1.0 - std::exp(-lambda * dt)) * (1.0 - std::exp(-lambda * dt)) / (2.0 * lambda) +
                      (1.0 - std::exp(-2.0 * lambda * dt)) / (2.0 * lambda);
    CHECK(tau_at(k, dt) == doctest::Approx(std::sqrt(expected)).epsilon(1e-10));
}
