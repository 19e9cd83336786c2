#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsscovar {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;
    // Upper integration limit for semi-infinite integrals; 0 means pick it
    // automatically from the kernel's exponential tail bound.
    double tail_cutoff = 0.0;
};

struct QuadratureOutcome {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error, tail bound included
    int panels = 0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double value, double error_estimate)
        : std::runtime_error(msg), value_(value), error_(error_estimate) {}
    double value() const { return value_; }
    double error_estimate() const { return error_; }

  private:
    double value_;
    double error_;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) over [a,b], refining the worst panel first.
// Panels in `splits` seed the initial mesh; callers list known singular or
// kink points there. `graded_at` adds a geometric mesh toward that point so
// integrable power singularities x^p, p > -1, converge without thrashing the
// error heap. Throws QuadratureError when the budget is exhausted.
QuadratureOutcome integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                            const std::vector<double>& splits = {},
                            const std::vector<double>& graded_at = {});

// Smallest T >= lo with (2/q) * max(T,1)^p * exp(-q T) below tol; used to cut
// off integrals of c * s^p e^{-q s} tails.
double power_exp_tail_cutoff(double p, double q, double tol, double lo = 1.0);

// The bound itself, added to quadrature error estimates after truncation.
double power_exp_tail_bound(double p, double q, double t);

}  // namespace bsscovar
