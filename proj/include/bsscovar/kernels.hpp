#pragma once

#include <functional>
#include <stdexcept>

#include "bsscovar/quadrature.hpp"

namespace bsscovar {

// g(x) = x^delta e^{-lambda x} for x > 0, and 0 for x <= 0.
// delta in (-1/2, 1/2) \ {0} keeps the process outside the semimartingale
// class with square-integrable kernel; delta < 1/4 is additionally required
// for the central limit theorem.
struct GammaKernel {
    double delta = 0.1;
    double lambda = 1.0;

    double operator()(double x) const;
    double squared(double x) const;

    bool lln_valid() const;
    bool clt_valid() const;

    friend bool operator==(const GammaKernel&, const GammaKernel&) = default;
};

void validate(const GammaKernel& k);

// Two kernels plus the Brownian correlation: the full model of the Gaussian
// core. rho_of(i,j) is rho for i != j and 1 on the diagonal.
struct KernelPair {
    GammaKernel k1;
    GammaKernel k2;
    double rho = 0.0;

    const GammaKernel& kernel(int i) const;
    double rho_of(int i, int j) const { return i == j ? 1.0 : rho; }

    friend bool operator==(const KernelPair&, const KernelPair&) = default;
};

void validate(const KernelPair& p);

// Unvalidated extension point: any kernel given as an evaluator plus the
// power behaviour at 0 and an exponential decay rate for tail truncation.
// Only the Gamma kernel is certified against the cross-correlation
// assumptions; custom kernels get the same quadrature machinery, nothing more.
struct KernelView {
    std::function<double(double)> g;
    double singularity_exponent = 0.0;  // g(x) ~ x^this as x -> 0+
    double decay_rate = 1.0;            // g(x) ~ e^{-this * x} tail
};

KernelView view(const GammaKernel& k);

double eval_g(const GammaKernel& k, double x);

// Scaling factor tau_n = sqrt(E[(increment of the core at mesh 1/n)^2])
//                      = sqrt(int_0^inf (g(s+1/n)-g(s))^2 ds + int_0^{1/n} g^2).
double tau_n(const GammaKernel& k, long n, const QuadratureConfig& q = {});
double tau_n(const KernelView& k, long n, const QuadratureConfig& q = {});
double tau_at(const KernelView& k, double dt, const QuadratureConfig& q = {});

// Variogram Rbar^{i,j}(t) = E[(G^j_t - G^i_0)^2]
//                         = ||g_i||^2 + ||g_j||^2 - 2 rho_{ij} int_0^inf g_i(y) g_j(y+t) dy.
// Note the ordering matters: Rbar^{i,j} != Rbar^{j,i} when the kernels differ.
double rbar(const KernelPair& p, int i, int j, double t, const QuadratureConfig& q = {});
double rbar(const KernelView& gi, const KernelView& gj, double rho_ij, double t,
            const QuadratureConfig& q = {});

// c(x) = int_0^x g1 g2 + int_0^inf (g1(s+x)-g1(s)) (g2(s+x)-g2(s)) ds.
// Equals E[increment-x of G^1 times increment-x of G^2] / rho.
double c_of_x(const KernelPair& p, double x, const QuadratureConfig& q = {});
double c_of_x(const KernelView& g1, const KernelView& g2, double x, const QuadratureConfig& q = {});

// Same quantity through the expanded cross form
// 2 int g1 g2 - int g1(s) g2(s+x) - int g1(s+x) g2(s); internal consistency route.
double c_of_x_cross_form(const KernelPair& p, double x, const QuadratureConfig& q = {});

// Small-scale variance constant: lim_{t->0+} Rbar^{ii}(t) / t^{2 delta + 1},
// equal to Gamma(d+1) Gamma(1-2d) / ((2d+1) Gamma(1-d)); independent of lambda.
double small_scale_variance_constant(double delta);

// Directed cross constant H^{(i,j)} governing the limit of the lag-k
// correlations between components i and j, and their average H, which is the
// limit of c(x)/sqrt(Rbar^{11}(x) Rbar^{22}(x)) as x -> 0+. Lambda-free, and
// exactly 1 on the diagonal and for delta1 == delta2.
double h_gamma(const KernelPair& p);
double h_gamma_directed(const KernelPair& p, int i, int j);

}  // namespace bsscovar
