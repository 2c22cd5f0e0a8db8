#pragma once

#include <complex>

namespace gps {

// Gamma on (0, inf); +inf at 0.
double gamma_fn(double x);
// 1/Gamma(x) for x >= 0, exactly 0 at x = 0, no overflow for large x.
double rgamma(double x);
// c / Gamma(x) and c * Gamma(x) without intermediate overflow when the
// result is representable.
std::complex<double> div_gamma(std::complex<double> c, double x);
std::complex<double> mul_gamma(std::complex<double> c, double x);

}  // namespace gps
