#include "cavlase/rootfind.hpp"

#include <cmath>

namespace cavlase {

RootResult find_root_complex(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    std::complex<double> seed, double f_tol, int max_iter) {
    using C = std::complex<double>;
    if (!(f_tol > 0.0)) throw RegimeError("find_root_complex: f_tol must be > 0");
    C s = seed;
    C fs = F(s);
    RootResult res{s, std::abs(fs), 0};
    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fs) <= f_tol) {
            res = {s, std::abs(fs), it - 1};
            return res;
        }
        const double h = 1e-7 * std::max(1.0, std::abs(s));
        const C dF = (F(s + h) - F(s - h)) / (2.0 * h);
        if (std::abs(dF) == 0.0 || !std::isfinite(std::abs(dF)))
            throw RootFailure("find_root_complex: vanishing derivative",
                              {s, std::abs(fs), it});
        C step = fs / dF;
        double damp = 1.0;
        C s_next = s - step;
        C f_next = F(s_next);
        for (int k = 0; k < 25 && !(std::abs(f_next) < std::abs(fs)); ++k) {
            damp *= 0.5;
            s_next = s - damp * step;
            f_next = F(s_next);
        }
        s = s_next;
        fs = f_next;
        res = {s, std::abs(fs), it};
    }
    if (std::abs(fs) <= f_tol) return res;
    throw RootFailure("find_root_complex: no convergence", res);
}

}  // namespace cavlase
