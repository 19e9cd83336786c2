#include <cmath>

#include "bsscovar/quadrature.hpp"
#include "doctest.h"

using namespace bsscovar;

TEST_CASE("smooth integrand to tight tolerance") {
    QuadratureConfig q;
    auto out = integrate([](double x) { return std::sin(x); }, 0.0, 3.141592653589793, q);
    CHECK(out.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(out.error < 1e-9);
}

TEST_CASE("power singularity at the lower endpoint") {
    QuadratureConfig q;
    q.abs_tol = 1e-11;
    auto out = integrate([](double x) { return std::pow(x, -0.4); }, 0.0, 1.0, q, {}, {0.0});
    CHECK(out.value == doctest::Approx(1.0 / 0.6).epsilon(1e-9));
}

TEST_CASE("interior singularity handled through splits") {
    QuadratureConfig q;
    q.abs_tol = 1e-11;
    auto out = integrate([](double x) { return std::pow(std::abs(x - 0.5), -0.3); }, 0.0, 1.0, q,
                         {0.5}, {0.5});
    double expected = 2.0 * std::pow(0.5, 0.7) / 0.7;
    CHECK(out.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("tail cutoff covers the exponential tail") {
    double t = power_exp_tail_cutoff(0.4, 2.0, 1e-13);
    CHECK(power_exp_tail_bound(0.4, 2.0, t) <= 1e-13);
    QuadratureConfig q;
    auto out = integrate([](double x) { return std::exp(-2.0 * x) * std::pow(x, 0.4); }, 0.0, t, q,
                         {1.0}, {0.0});
    // Gamma(1.4) / 2^1.4
    CHECK(out.value == doctest::Approx(0.88726381750307528 / std::pow(2.0, 1.4)).epsilon(1e-10));
}

TEST_CASE("non-convergence reports the achieved error") {
    QuadratureConfig q;
    q.abs_tol = 1e-16;
    q.rel_tol = 1e-16;
    q.max_subdivisions = 8;
    CHECK_THROWS_AS(integrate([](double x) { return std::pow(x, -0.49); }, 0.0, 1.0, q),
                    QuadratureError);
    try {
        integrate([](double x) { return std::pow(x, -0.49); }, 0.0, 1.0, q);
    } catch (const QuadratureError& e) {
        CHECK(e.error_estimate() > 0.0);
        CHECK(std::isfinite(e.value()));
    }
}

TEST_CASE("halving the tolerance moves the value by less than the error estimate") {
    QuadratureConfig loose;
    loose.abs_tol = 1e-8;
    loose.rel_tol = 1e-6;
    QuadratureConfig tight;
    tight.abs_tol = 5e-9;
    tight.rel_tol = 5e-7;
    auto f = [](double x) { return std::pow(x, -0.35) * std::exp(-x); };
    auto a = integrate(f, 0.0, 10.0, loose, {1.0}, {0.0});
    auto b = integrate(f, 0.0, 10.0, tight, {1.0}, {0.0});
    CHECK(std::abs(a.value - b.value) <= a.error + b.error);
}
