#pragma once

#include "bsscovar/kernels.hpp"

namespace bsscovar {

// Limiting description of the scaled-increment correlations: exponents
// theta_{ij} = delta_i + delta_j + 1 and the cross constants from h_gamma.
struct LimitSpec {
    KernelPair pair;
    double h = 1.0;    // H = (H^{(1,2)} + H^{(2,1)}) / 2
    double h12 = 1.0;  // H^{(1,2)}
    double h21 = 1.0;  // H^{(2,1)}
    double theta11 = 0.0;
    double theta22 = 0.0;
    double theta12 = 0.0;

    bool clt_valid() const { return pair.k1.clt_valid() && pair.k2.clt_valid(); }
};

LimitSpec make_limit_spec(const KernelPair& p);

// Limiting lag-k correlation rho_theta^{(i,j)}(k):
//   k = 0: 1 on the diagonal, rho H across components;
//   k >= 1: (1/2) rho_{ij} H^{(i,j)} ((k-1)^theta - 2 k^theta + (k+1)^theta),
// with theta = delta_i + delta_j + 1 and H^{(i,i)} = 1.
double rho_theta(const LimitSpec& spec, int i, int j, long k);

struct C11Result {
    double beta = 0.0;
    long k_used = 0;
    double tail_bound = 0.0;
};

// Limiting variance beta = C(1,1) of the centered scaled realised covariation:
//   2 sum_k ( rho^{(1,1)}(k) rho^{(2,2)}(k) + rho^{(1,2)}(k) rho^{(2,1)}(k) )
//   + 1 + rho^2 H^2,
// truncated adaptively where the analytic power tail falls below tol.
// Requires delta_1, delta_2 in (-1/2, 1/4) \ {0} so the series converges.
C11Result c11(const LimitSpec& spec, double tol = 1e-6);

// mu_n = r^{(n)}_{1,2}(0) = rho c(1/n) / (tau^1_n tau^2_n), bounded by 1 in
// magnitude; converges to rho H.
double mu_n(const KernelPair& p, long n, const QuadratureConfig& q = {});

}  // namespace bsscovar
