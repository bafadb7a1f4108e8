#pragma once

namespace cavlase {

// Bessel function J_n(x) of integer order n in {0, 1}, any real x.
// Absolute error stays below 1e-12 for |x| <= 100.
double bessel_j(int n, double x);

}  // namespace cavlase
