#pragma once

#include <cstddef>
#include <vector>

#include "gps/quadrature.hpp"
#include "gps/series.hpp"
#include "gps/transforms.hpp"

namespace gps {

struct DemoValue {
    double value = 0.0;
    double error = 0.0;
    bool certified = true;
};

// B_2, B_4, ..., B_{2 count}.
std::vector<double> bernoulli_even(std::size_t count);

// sum_{n=1}^{terms} B_{2n} / (2n (2n-1)) X^{2n-1}, the divergent Stirling
// series of mu(x) = log Gamma(x) - (x - 1/2) log x + x - log(2 pi)/2 in X = 1/x.
GenSeries stirling_series(std::size_t terms);

// Closed form of the Borel sum of the Stirling series:
// g(zeta) = 1/(e^zeta - 1) - 1/zeta + 1/2, as a log function of eta = log zeta
// on |Im eta| < 3/2 (the poles sit on Im eta = pi/2).
LogFunction binet_borel_sum();

// log Gamma(x) = (x - 1/2) log x - x + log(2 pi)/2 + L(g)(-log x); x < 1 is
// lifted through Gamma(x + 1) = x Gamma(x).
DemoValue log_gamma(double x, const QuadOptions& q = {});

// sum_{n <= N} n^{-s} plus the Euler-Maclaurin correction of the tail; error
// is the first omitted Euler-Maclaurin term plus a rounding allowance.
DemoValue zeta_sum(double s, std::size_t N = 100000);

// sum_{n <= N} X^{log n}, with the tail certificate at r = e^{-2}.
GenSeries zeta_series(std::size_t N);

// sum_{n < terms} (-1)^n n! X^{n+1}.
GenSeries euler_series(std::size_t terms);

}  // namespace gps
