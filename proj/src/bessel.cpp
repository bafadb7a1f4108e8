#include "cavlase/bessel.hpp"

#include <cmath>

#include "cavlase/errors.hpp"

namespace cavlase {

namespace {

constexpr double kSeriesCutoff = 15.0;
constexpr long double kPi = 3.141592653589793238462643383279503L;

// Ascending series, accumulated in extended precision so alternating-term
// cancellation near the cutoff stays well under 1e-12.
double series_j(int n, double x) {
    const long double half = 0.5L * static_cast<long double>(x);
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / k;
    long double sum = term;
    const long double h2 = half * half;
    for (int k = 1; k < 200; ++k) {
        term *= -h2 / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (std::fabs(static_cast<double>(term)) <
            1e-20 * (std::fabs(static_cast<double>(sum)) + 1e-30))
            break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion, truncated where the terms stop shrinking.
double asymptotic_j(int n, double x) {
    const long double mu = 4.0L * n * n;
    const long double xi = 1.0L / (8.0L * static_cast<long double>(x));
    long double p = 1.0L;
    long double q = 0.0L;
    long double ak = 1.0L;
    long double prev = 1.0L;
    for (int k = 1; k < 40; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        ak *= (mu - odd * odd) * xi / k;
        if (std::fabs(static_cast<double>(ak)) >
            std::fabs(static_cast<double>(prev)))
            break;
        prev = ak;
        const int phase = (k / 2) % 2 ? -1 : 1;
        if (k % 2 == 1)
            q += phase * ak;
        else
            p += phase * ak;
        if (std::fabs(static_cast<double>(ak)) < 1e-19) break;
    }
    const long double chi =
        static_cast<long double>(x) - (2 * n + 1) * 0.25L * kPi;
    const long double amp =
        std::sqrt(2.0L / (kPi * static_cast<long double>(x)));
    return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

}  // namespace

double bessel_j(int n, double x) {
    if (n != 0 && n != 1)
        throw RegimeError("bessel_j: only orders 0 and 1 are supported");
    if (x < 0.0) return n == 0 ? bessel_j(0, -x) : -bessel_j(1, -x);
    if (x < kSeriesCutoff) return series_j(n, x);
    return asymptotic_j(n, x);
}

}  // namespace cavlase
