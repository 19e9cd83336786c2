#include "bsscovar/covariance.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "bsscovar/log.hpp"

namespace bsscovar {

namespace {

void check_indices(int a, int b) {
    if ((a != 1 && a != 2) || (b != 1 && b != 2)) {
        throw std::out_of_range("component indices must be 1 or 2");
    }
}

// Integral of g_a(y) * [g_b(y+(k-1)dt) - 2 g_b(y+k dt) + g_b(y+(k+1)dt)];
// the variogram constants drop out of the second difference, so quadrature
// acts on an integrand that is already O(dt^2) in the smooth region.
double second_difference_integral(const GammaKernel& ka, const GammaKernel& kb, double dt, long k,
                                  const QuadratureConfig& q) {
    double p = ka.delta + std::max(kb.delta, 0.0);
    double rate = ka.lambda + kb.lambda;
    double tmax = q.tail_cutoff > 0.0 ? q.tail_cutoff : power_exp_tail_cutoff(p, rate, 0.1 * q.abs_tol);
    const double tm = static_cast<double>(k - 1) * dt;
    const double t0 = static_cast<double>(k) * dt;
    const double tp = static_cast<double>(k + 1) * dt;
    auto f = [&](double y) {
        return ka(y) * (kb(y + tm) - 2.0 * kb(y + t0) + kb(y + tp));
    };
    // Single integrable singularity at y = 0 (two of them when k = 1 and
    // delta_b < 0, at the same point); past ~(k+2)dt the integrand is smooth.
    std::vector<double> splits = {std::min((static_cast<double>(k) + 2.0) * dt, 0.5 * tmax),
                                  std::min(1.0, 0.5 * tmax)};
    QuadratureOutcome out = integrate(f, 0.0, tmax, q, splits, {0.0});
    return out.value;
}

double r_n_lag_given_tau(const KernelPair& p, long n, int a, int b, long k, double tau_a,
                         double tau_b, const QuadratureConfig& q) {
    const double dt = 1.0 / static_cast<double>(n);
    if (k < 0) return r_n_lag_given_tau(p, n, b, a, -k, tau_b, tau_a, q);
    if (k == 0) {
        if (a == b) return 1.0;
        return p.rho * c_of_x(p, dt, q) / (tau_a * tau_b);
    }
    double integral = second_difference_integral(p.kernel(a), p.kernel(b), dt, k, q);
    return -p.rho_of(a, b) * integral / (tau_a * tau_b);
}

struct CovKey {
    double d1, l1, d2, l2, rho;
    long n, N;
    bool operator<(const CovKey& o) const {
        return std::tie(d1, l1, d2, l2, rho, n, N) < std::tie(o.d1, o.l1, o.d2, o.l2, o.rho, o.n, o.N);
    }
};

std::shared_mutex g_cov_cache_mutex;
std::map<CovKey, std::shared_ptr<const IncrementCovariance>> g_cov_cache;

// Caching full matrices is only worthwhile at small sizes; large builds are
// one-shot consumers.
constexpr long kCacheDimCap = 2048;

}  // namespace

double r_n(const KernelPair& p, long n, int a, int b, long k, const QuadratureConfig& q) {
    validate(p);
    check_indices(a, b);
    if (n < 1) throw std::invalid_argument("r_n requires n >= 1");
    double tau_a = tau_n(p.kernel(a), n, q);
    double tau_b = (a == b) ? tau_a : tau_n(p.kernel(b), n, q);
    return r_n_lag_given_tau(p, n, a, b, k, tau_a, tau_b, q);
}

double flip_lag(const KernelPair& p, long n, int a, int b, long k, const QuadratureConfig& q) {
    if (k >= 0) throw std::invalid_argument("flip_lag handles negative lags only");
    return r_n(p, n, b, a, -k, q);
}

std::vector<double> r_n_lags(const KernelPair& p, long n, int a, int b, long max_lag,
                             const QuadratureConfig& q) {
    validate(p);
    check_indices(a, b);
    if (n < 1) throw std::invalid_argument("r_n_lags requires n >= 1");
    if (max_lag < 0) throw std::invalid_argument("r_n_lags requires max_lag >= 0");
    double tau_a = tau_n(p.kernel(a), n, q);
    double tau_b = (a == b) ? tau_a : tau_n(p.kernel(b), n, q);
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1);
    for (long k = 0; k <= max_lag; ++k) {
        lags[static_cast<std::size_t>(k)] = r_n_lag_given_tau(p, n, a, b, k, tau_a, tau_b, q);
    }
    return lags;
}

std::shared_ptr<const IncrementCovariance> build_increment_cov(const KernelPair& p, long n, long N,
                                                               const QuadratureConfig& q,
                                                               long max_dim) {
    validate(p);
    if (N < 1) throw std::invalid_argument("build_increment_cov requires N >= 1");
    if (2 * N > max_dim) {
        std::ostringstream os;
        os << "increment covariance dimension 2N=" << 2 * N << " exceeds the cap " << max_dim;
        throw std::length_error(os.str());
    }

    CovKey key{p.k1.delta, p.k1.lambda, p.k2.delta, p.k2.lambda, p.rho, n, N};
    {
        std::shared_lock lock(g_cov_cache_mutex);
        auto it = g_cov_cache.find(key);
        if (it != g_cov_cache.end()) return it->second;
    }

    auto cov = std::make_shared<IncrementCovariance>();
    cov->n = n;
    cov->N = N;
    cov->tau1 = tau_n(p.k1, n, q);
    cov->tau2 = tau_n(p.k2, n, q);

    const bool identical = p.k1 == p.k2;
    std::vector<double> r11(static_cast<std::size_t>(N)), r22, r12, r21;
    for (long k = 0; k < N; ++k) {
        r11[static_cast<std::size_t>(k)] = r_n_lag_given_tau(p, n, 1, 1, k, cov->tau1, cov->tau1, q);
    }
    if (identical) {
        // One kernel: the cross-covariances are the rho-scaled autocovariances.
        r22 = r11;
        r12.resize(r11.size());
        for (std::size_t k = 0; k < r11.size(); ++k) r12[k] = p.rho * r11[k];
        r21 = r12;
    } else {
        r22.resize(static_cast<std::size_t>(N));
        r12.resize(static_cast<std::size_t>(N));
        r21.resize(static_cast<std::size_t>(N));
        for (long k = 0; k < N; ++k) {
            r22[static_cast<std::size_t>(k)] = r_n_lag_given_tau(p, n, 2, 2, k, cov->tau2, cov->tau2, q);
            r12[static_cast<std::size_t>(k)] = r_n_lag_given_tau(p, n, 1, 2, k, cov->tau1, cov->tau2, q);
            r21[static_cast<std::size_t>(k)] = r_n_lag_given_tau(p, n, 2, 1, k, cov->tau2, cov->tau1, q);
        }
    }

    Eigen::MatrixXd& m = cov->matrix;
    m.resize(2 * N, 2 * N);
    for (long i = 0; i < N; ++i) {
        for (long j = i; j < N; ++j) {
            long k = j - i;
            m(i, j) = m(j, i) = r11[static_cast<std::size_t>(k)];
            m(N + i, N + j) = m(N + j, N + i) = r22[static_cast<std::size_t>(k)];
        }
    }
    // Cov(dG^1_i/tau1, dG^2_j/tau2) = r_{1,2}(j-i), with r_{1,2}(-k) = r_{2,1}(k).
    for (long i = 0; i < N; ++i) {
        for (long j = 0; j < N; ++j) {
            double v = (j >= i) ? r12[static_cast<std::size_t>(j - i)]
                                : r21[static_cast<std::size_t>(i - j)];
            m(i, N + j) = v;
            m(N + j, i) = v;
        }
    }

    if (2 * N <= kCacheDimCap) {
        std::unique_lock lock(g_cov_cache_mutex);
        g_cov_cache.emplace(key, cov);
    } else {
        log::debug("increment covariance 2N=" + std::to_string(2 * N) + " built uncached");
    }
    return cov;
}

double min_eigenvalue(const IncrementCovariance& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void write_csv(const IncrementCovariance& cov, std::ostream& os) {
    os << "# bsscovar increment covariance: n=" << cov.n << " N=" << cov.N
       << " tau1=" << cov.tau1 << " tau2=" << cov.tau2 << "\n";
    const Eigen::MatrixXd& m = cov.matrix;
    os.precision(17);
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
        os << '\n';
    }
}

}  // namespace bsscovar
