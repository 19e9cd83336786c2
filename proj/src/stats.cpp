#include "bsscovar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsscovar/summation.hpp"

namespace bsscovar {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

namespace {

// Q(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2), the Kolmogorov tail.
double kolmogorov_tail(double t) {
    if (t <= 0.0) return 1.0;
    if (t > 8.0) return 0.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * t * t);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_statistic(std::span<const double> samples, const std::function<double(double)>& ref_cdf) {
    if (samples.size() < 100) {
        throw std::invalid_argument("ks_statistic requires at least 100 samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = ref_cdf(sorted[i]);
        double hi = (static_cast<double>(i) + 1.0) / n - f;
        double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return KsResult{d, kolmogorov_tail(std::sqrt(n) * d)};
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance needs at least two samples");
    double m = mean(xs);
    CompensatedSum s;
    for (double x : xs) s.add((x - m) * (x - m));
    return s.value() / (static_cast<double>(xs.size()) - 1.0);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("correlation needs equal lengths");
    if (xs.size() < 2) throw std::invalid_argument("correlation needs at least two samples");
    double mx = mean(xs), my = mean(ys);
    CompensatedSum sxy, sxx, syy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    double denom = std::sqrt(sxx.value() * syy.value());
    if (denom == 0.0) throw std::invalid_argument("correlation of a constant sample");
    return sxy.value() / denom;
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
    double hi = xs[mid];
    if (xs.size() % 2 == 1) return hi;
    double lo = *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

}  // namespace bsscovar
