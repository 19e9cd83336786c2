#include "bsscovar/kernels.hpp"

#include <cmath>
#include <sstream>

namespace bsscovar {

namespace {

constexpr const char* kDeltaRangeText = "delta must lie in (-1/2, 1/2) \\ {0}";

// log|Gamma(x)| and the sign of Gamma(x); x must not be a pole.
struct SignedLogGamma {
    double log_abs;
    int sign;
};

SignedLogGamma signed_lgamma(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    double fl = std::floor(x);
    if (x == fl) throw std::domain_error("gamma function pole at " + std::to_string(x));
    int sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

double norm_squared(const KernelView& k, const QuadratureConfig& q) {
    double p = 2.0 * k.singularity_exponent;
    double rate = 2.0 * k.decay_rate;
    double tmax = q.tail_cutoff > 0.0 ? q.tail_cutoff : power_exp_tail_cutoff(p, rate, 0.1 * q.abs_tol);
    auto f = [&k](double s) { double v = k.g(s); return v * v; };
    QuadratureOutcome out = integrate(f, 0.0, tmax, q, {std::min(1.0, tmax)}, {0.0});
    return out.value;
}

// int_0^inf g_i(y) g_j(y+t) dy, t >= 0
double cross_integral(const KernelView& gi, const KernelView& gj, double t, const QuadratureConfig& q) {
    double p = gi.singularity_exponent + std::max(gj.singularity_exponent, 0.0);
    double rate = gi.decay_rate + gj.decay_rate;
    double tmax = q.tail_cutoff > 0.0 ? q.tail_cutoff : power_exp_tail_cutoff(p, rate, 0.1 * q.abs_tol);
    auto f = [&gi, &gj, t](double y) { return gi.g(y) * gj.g(y + t); };
    QuadratureOutcome out = integrate(f, 0.0, tmax, q, {std::min(1.0, 0.5 * tmax)}, {0.0});
    return out.value;
}

}  // namespace

double GammaKernel::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    return std::pow(x, delta) * std::exp(-lambda * x);
}

double GammaKernel::squared(double x) const {
    if (x <= 0.0) return 0.0;
    return std::pow(x, 2.0 * delta) * std::exp(-2.0 * lambda * x);
}

bool GammaKernel::lln_valid() const {
    return delta > -0.5 && delta < 0.5 && delta != 0.0;
}

bool GammaKernel::clt_valid() const {
    return delta > -0.5 && delta < 0.25 && delta != 0.0;
}

void validate(const GammaKernel& k) {
    if (!k.lln_valid()) {
        std::ostringstream os;
        os << "invalid Gamma kernel: delta=" << k.delta << "; " << kDeltaRangeText;
        throw std::domain_error(os.str());
    }
    if (!(k.lambda > 0.0)) {
        std::ostringstream os;
        os << "invalid Gamma kernel: lambda=" << k.lambda << " must be > 0";
        throw std::domain_error(os.str());
    }
}

const GammaKernel& KernelPair::kernel(int i) const {
    if (i == 1) return k1;
    if (i == 2) return k2;
    throw std::out_of_range("kernel index must be 1 or 2");
}

void validate(const KernelPair& p) {
    validate(p.k1);
    validate(p.k2);
    if (!(p.rho >= -1.0 && p.rho <= 1.0)) {
        std::ostringstream os;
        os << "invalid correlation rho=" << p.rho << "; must lie in [-1, 1]";
        throw std::domain_error(os.str());
    }
}

KernelView view(const GammaKernel& k) {
    return KernelView{[k](double x) { return k(x); }, k.delta, k.lambda};
}

double eval_g(const GammaKernel& k, double x) { return k(x); }

double tau_at(const KernelView& k, double dt, const QuadratureConfig& q) {
    if (!(dt > 0.0)) throw std::invalid_argument("tau requires a positive mesh");
    // int_0^{dt} g^2: singular at 0
    QuadratureOutcome head = integrate([&k](double s) { double v = k.g(s); return v * v; },
                                       0.0, dt, q, {}, {0.0});
    // int_0^inf (g(s+dt) - g(s))^2: singular at 0, kink scale dt; far tail
    // bounded by 4 g(s)^2.
    double p = 2.0 * k.singularity_exponent;
    double rate = 2.0 * k.decay_rate;
    double tmax = q.tail_cutoff > 0.0 ? q.tail_cutoff : power_exp_tail_cutoff(p, rate, 0.025 * q.abs_tol);
    auto diff2 = [&k, dt](double s) {
        double d = k.g(s + dt) - k.g(s);
        return d * d;
    };
    QuadratureOutcome body = integrate(diff2, 0.0, tmax, q,
                                       {dt, std::min(std::max(1.0, 8.0 * dt), tmax)}, {0.0});
    return std::sqrt(head.value + body.value);
}

double tau_n(const KernelView& k, long n, const QuadratureConfig& q) {
    if (n < 1) throw std::invalid_argument("tau_n requires n >= 1");
    return tau_at(k, 1.0 / static_cast<double>(n), q);
}

double tau_n(const GammaKernel& k, long n, const QuadratureConfig& q) {
    validate(k);
    return tau_n(view(k), n, q);
}

double rbar(const KernelView& gi, const KernelView& gj, double rho_ij, double t,
            const QuadratureConfig& q) {
    if (t < 0.0) throw std::invalid_argument("rbar requires t >= 0");
    double ni = norm_squared(gi, q);
    double nj = norm_squared(gj, q);
    return ni + nj - 2.0 * rho_ij * cross_integral(gi, gj, t, q);
}

double rbar(const KernelPair& p, int i, int j, double t, const QuadratureConfig& q) {
    validate(p);
    return rbar(view(p.kernel(i)), view(p.kernel(j)), p.rho_of(i, j), t, q);
}

double c_of_x(const KernelView& g1, const KernelView& g2, double x, const QuadratureConfig& q) {
    if (!(x > 0.0)) throw std::invalid_argument("c_of_x requires x > 0");
    QuadratureOutcome head = integrate([&](double s) { return g1.g(s) * g2.g(s); },
                                       0.0, x, q, {}, {0.0});
    double p = g1.singularity_exponent + g2.singularity_exponent;
    double rate = g1.decay_rate + g2.decay_rate;
    double tmax = q.tail_cutoff > 0.0 ? q.tail_cutoff : power_exp_tail_cutoff(p, rate, 0.025 * q.abs_tol);
    auto f = [&](double s) {
        return (g1.g(s + x) - g1.g(s)) * (g2.g(s + x) - g2.g(s));
    };
    QuadratureOutcome body = integrate(f, 0.0, tmax, q,
                                       {x, std::min(std::max(1.0, 8.0 * x), tmax)}, {0.0});
    return head.value + body.value;
}

double c_of_x(const KernelPair& p, double x, const QuadratureConfig& q) {
    validate(p);
    return c_of_x(view(p.k1), view(p.k2), x, q);
}

double c_of_x_cross_form(const KernelPair& p, double x, const QuadratureConfig& q) {
    validate(p);
    if (!(x > 0.0)) throw std::invalid_argument("c_of_x requires x > 0");
    KernelView g1 = view(p.k1), g2 = view(p.k2);
    double base = cross_integral(g1, g2, 0.0, q);
    return 2.0 * base - cross_integral(g1, g2, x, q) - cross_integral(g2, g1, x, q);
}

double small_scale_variance_constant(double delta) {
    if (!(delta > -0.5 && delta < 0.5)) throw std::domain_error(kDeltaRangeText);
    return std::exp(std::lgamma(delta + 1.0) + std::lgamma(1.0 - 2.0 * delta) -
                    std::lgamma(1.0 - delta)) /
           (2.0 * delta + 1.0);
}

double h_gamma_directed(const KernelPair& p, int i, int j) {
    validate(p);
    double di = p.kernel(i).delta;
    double dj = p.kernel(j).delta;
    if (i == j) return 1.0;
    double sum = di + dj;
    if (sum == 0.0) {
        throw std::domain_error(
            "H is undefined at delta1 + delta2 = 0: Gamma(-1 - delta1 - delta2) has a pole at -1");
    }
    if (sum == -1.0) {
        throw std::domain_error(
            "H is undefined at delta1 + delta2 = -1: Gamma(-1 - delta1 - delta2) has a pole at 0");
    }
    // H^{(i,j)} = -2 Gamma(di+1) Gamma(-1-di-dj) / Gamma(-dj) / sqrt(P(di) P(dj)),
    // with P the small-scale variance constant. Log-gamma with explicit signs;
    // Gamma(-1-di-dj) and Gamma(-dj) can be negative.
    SignedLogGamma top1 = signed_lgamma(di + 1.0);
    SignedLogGamma top2 = signed_lgamma(-1.0 - di - dj);
    SignedLogGamma bot = signed_lgamma(-dj);
    double log_p = 0.5 * (std::log(small_scale_variance_constant(di)) +
                          std::log(small_scale_variance_constant(dj)));
    double magnitude = std::exp(top1.log_abs + top2.log_abs - bot.log_abs - log_p);
    int sign = -top1.sign * top2.sign * bot.sign;
    return 2.0 * sign * magnitude;
}

double h_gamma(const KernelPair& p) {
    if (p.k1.delta == p.k2.delta) {
        validate(p);
        return 1.0;  // exact gamma-function identity for equal exponents
    }
    return 0.5 * (h_gamma_directed(p, 1, 2) + h_gamma_directed(p, 2, 1));
}

}  // namespace bsscovar
