#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bsscovar {

double normal_cdf(double x);

struct KsResult {
    double statistic = 0.0;  // D = sup |F_emp - F_ref|
    double pvalue = 1.0;     // asymptotic Kolmogorov distribution
};

// Two-sided one-sample Kolmogorov-Smirnov test against a reference CDF.
// Requires at least 100 samples.
KsResult ks_statistic(std::span<const double> samples, const std::function<double(double)>& ref_cdf);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased
double correlation(std::span<const double> xs, std::span<const double> ys);
double median(std::vector<double> xs);  // by copy; averages the middle pair

}  // namespace bsscovar
