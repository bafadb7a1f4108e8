#pragma once

#include <complex>
#include <functional>

#include "cavlase/errors.hpp"

namespace cavlase {

struct RootResult {
    std::complex<double> root{0.0, 0.0};
    double residual = 0.0;
    int iterations = 0;
};

// Thrown on non-convergence; `last` is the final iterate with its residual.
struct RootFailure : NumericError {
    RootFailure(const std::string& msg, RootResult r)
        : NumericError(msg), last(r) {}
    RootResult last;
};

// Damped Newton iteration for an analytic F, with the derivative taken by
// central differencing. Succeeds only when |F(root)| <= f_tol.
RootResult find_root_complex(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    std::complex<double> seed, double f_tol, int max_iter = 60);

}  // namespace cavlase
