#include "bsscovar/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "bsscovar/covariance.hpp"
#include "bsscovar/summation.hpp"

namespace bsscovar {

namespace {

double second_difference_power(long k, double theta) {
    double km = std::pow(static_cast<double>(k - 1), theta);
    double k0 = std::pow(static_cast<double>(k), theta);
    double kp = std::pow(static_cast<double>(k + 1), theta);
    return km - 2.0 * k0 + kp;
}

void require_clt_range(const KernelPair& p) {
    if (!p.k1.clt_valid() || !p.k2.clt_valid()) {
        std::ostringstream os;
        os << "delta1=" << p.k1.delta << ", delta2=" << p.k2.delta
           << " outside the CLT range: delta^(1), delta^(2) must lie in (-1/2, 1/4) \\ {0}";
        throw std::domain_error(os.str());
    }
}

}  // namespace

LimitSpec make_limit_spec(const KernelPair& p) {
    validate(p);
    LimitSpec spec;
    spec.pair = p;
    spec.h = h_gamma(p);
    spec.h12 = h_gamma_directed(p, 1, 2);
    spec.h21 = h_gamma_directed(p, 2, 1);
    spec.theta11 = 2.0 * p.k1.delta + 1.0;
    spec.theta22 = 2.0 * p.k2.delta + 1.0;
    spec.theta12 = p.k1.delta + p.k2.delta + 1.0;
    return spec;
}

double rho_theta(const LimitSpec& spec, int i, int j, long k) {
    if ((i != 1 && i != 2) || (j != 1 && j != 2)) {
        throw std::out_of_range("component indices must be 1 or 2");
    }
    if (k < 0) throw std::invalid_argument("rho_theta requires k >= 0");
    if (k == 0) return i == j ? 1.0 : spec.pair.rho * spec.h;
    double theta, h_dir;
    if (i == j) {
        theta = (i == 1) ? spec.theta11 : spec.theta22;
        h_dir = 1.0;
    } else {
        theta = spec.theta12;
        h_dir = (i == 1) ? spec.h12 : spec.h21;
    }
    return 0.5 * spec.pair.rho_of(i, j) * h_dir * second_difference_power(k, theta);
}

C11Result c11(const LimitSpec& spec, double tol) {
    require_clt_range(spec.pair);
    if (!(tol > 0.0)) throw std::invalid_argument("c11 requires tol > 0");

    const double d1 = spec.pair.k1.delta;
    const double d2 = spec.pair.k2.delta;
    const double rho = spec.pair.rho;

    // |rho_theta(k)| <= (1/2)|rho H| theta |theta-1| (k-1)^{theta-2} for k >= 2
    // (mean-value bound on the second difference), so the tail of the series
    // is bounded by a power integral with exponent 2 d1 + 2 d2 - 2 < -1.
    auto coef = [](double rho_ij, double h_dir, double theta) {
        return 0.5 * std::abs(rho_ij * h_dir) * theta * std::abs(theta - 1.0);
    };
    const double b11 = coef(1.0, 1.0, spec.theta11);
    const double b22 = coef(1.0, 1.0, spec.theta22);
    const double b12 = coef(rho, spec.h12, spec.theta12);
    const double b21 = coef(rho, spec.h21, spec.theta12);
    const double tail_coef = 2.0 * (b11 * b22 + b12 * b21);
    const double tail_exp = 2.0 * d1 + 2.0 * d2 - 2.0;  // < -1 in the CLT range

    auto tail_bound = [&](long K) {
        // sum_{k>K} (k-1)^{tail_exp} <= int_{K-1}^inf x^{tail_exp} dx
        return tail_coef * std::pow(static_cast<double>(K - 1), tail_exp + 1.0) / (-tail_exp - 1.0);
    };

    long K = 16;
    while (K < (1L << 40) && tail_bound(K) > tol) K *= 2;

    CompensatedSum sum;
    for (long k = 1; k <= K; ++k) {
        double r11 = rho_theta(spec, 1, 1, k);
        double r22 = rho_theta(spec, 2, 2, k);
        double r12 = rho_theta(spec, 1, 2, k);
        double r21 = rho_theta(spec, 2, 1, k);
        sum.add(r11 * r22 + r12 * r21);
    }
    double beta = 2.0 * sum.value() + 1.0 + rho * rho * spec.h * spec.h;
    return C11Result{beta, K, tail_bound(K)};
}

double mu_n(const KernelPair& p, long n, const QuadratureConfig& q) {
    validate(p);
    if (n < 1) throw std::invalid_argument("mu_n requires n >= 1");
    return r_n(p, n, 1, 2, 0, q);
}

}  // namespace bsscovar
