#pragma once

#include <complex>
#include <functional>

#include "cavlase/errors.hpp"

namespace cavlase {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Thrown when the subdivision budget runs out before the requested tolerance
// is met; `partial` holds the best estimate accumulated so far.
struct QuadratureFailure : NumericError {
    QuadratureFailure(const std::string& msg, QuadratureResult p)
        : NumericError(msg), partial(p) {}
    QuadratureResult partial;
};

// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b] to absolute
// tolerance abs_tol. Works for complex-valued integrands; endpoints are
// never evaluated.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           double abs_tol = 1e-10, int max_intervals = 4000);

// Cauchy principal value of  ∫_a^b f(w) / (x0 - w) dw  with x0 strictly
// inside (a, b). The singularity is removed by subtracting f(x0); the
// remaining log term is added in closed form, and x0 is a panel boundary
// so nodes never land on it.
QuadratureResult principal_value(const Integrand& f, double x0, double a,
                                 double b, double abs_tol = 1e-10,
                                 int max_intervals = 4000);

}  // namespace cavlase
