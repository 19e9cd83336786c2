#pragma once

#include <Eigen/Dense>
#include <memory>
#include <ostream>
#include <vector>

#include "bsscovar/kernels.hpp"

namespace bsscovar {

// Exact joint covariance of the scaled core increments
// (dG^1_1/tau1, ..., dG^1_N/tau1, dG^2_1/tau2, ..., dG^2_N/tau2):
// symmetric 2N x 2N with unit diagonal, stacked component-major.
struct IncrementCovariance {
    long n = 0;
    long N = 0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    Eigen::MatrixXd matrix;
};

// Exact correlation E[(dG^a_1/tau_a)(dG^b_{1+k}/tau_b)] on the mesh 1/n.
// For k >= 1 this is the second difference of the variogram,
//   (Rbar^{a,b}((k-1)/n) - 2 Rbar^{a,b}(k/n) + Rbar^{a,b}((k+1)/n)) / (2 tau_a tau_b),
// evaluated as a single integral of g_a times the second difference of g_b so
// the constant and linear parts cancel exactly. k = 0 is 1 on the diagonal
// and rho c(1/n) / (tau_a tau_b) across components. Negative k flips: see
// flip_lag.
double r_n(const KernelPair& p, long n, int a, int b, long k, const QuadratureConfig& q = {});

// Negative lags: r^{(n)}_{a,b}(k) = r^{(n)}_{b,a}(-k) for k < 0.
double flip_lag(const KernelPair& p, long n, int a, int b, long k, const QuadratureConfig& q = {});

// Lag sequence r_n(a,b,k) for k = 0..max_lag with the scaling factors
// computed once; building block for the covariance assembly.
std::vector<double> r_n_lags(const KernelPair& p, long n, int a, int b, long max_lag,
                             const QuadratureConfig& q = {});

// Assembles the 2N x 2N covariance. Results are cached per (p, n, N) for
// concurrent readers; matrices above the dimension cap are rejected.
std::shared_ptr<const IncrementCovariance> build_increment_cov(const KernelPair& p, long n, long N,
                                                               const QuadratureConfig& q = {},
                                                               long max_dim = 8192);

// Smallest eigenvalue; PSD diagnostic (jitter threshold 1e-10 in tests).
double min_eigenvalue(const IncrementCovariance& cov);

// Debug export, one matrix row per line.
void write_csv(const IncrementCovariance& cov, std::ostream& os);

}  // namespace bsscovar
