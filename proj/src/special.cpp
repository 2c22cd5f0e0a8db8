#include "gps/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gps {

namespace {
constexpr double kGammaDirectMax = 170.0;
}

double gamma_fn(double x) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    return std::tgamma(x);
}

double rgamma(double x) {
    if (x == 0.0) return 0.0;
    if (x <= kGammaDirectMax) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));
}

std::complex<double> div_gamma(std::complex<double> c, double x) {
    if (x == 0.0) return 0.0;
    if (x <= kGammaDirectMax) return c / std::tgamma(x);
    double mag = std::abs(c);
    if (mag == 0.0) return 0.0;
    return c / mag * std::exp(std::log(mag) - std::lgamma(x));
}

std::complex<double> mul_gamma(std::complex<double> c, double x) {
    if (x == 0.0) throw std::domain_error("Gamma(0) is infinite");
    if (x <= kGammaDirectMax) return c * std::tgamma(x);
    double mag = std::abs(c);
    if (mag == 0.0) return 0.0;
    double lg = std::log(mag) + std::lgamma(x);
    if (lg > 709.0) throw std::overflow_error("coefficient times Gamma overflows");
    return c / mag * std::exp(lg);
}

}  // namespace gps
