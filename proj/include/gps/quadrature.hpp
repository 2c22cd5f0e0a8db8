#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gps/kernels.hpp"

namespace gps {

// One integrand sample: the complex value being integrated and a nonnegative
// side channel integrated along with it (used to carry error envelopes of
// nested evaluations).
struct QuadSample {
    std::complex<double> value;
    double aux = 0.0;
};

using Integrand = std::function<QuadSample(double)>;

struct QuadOptions {
    double rel_tol = 1e-9;      // per segment, relative to the segment integral
    double abs_tol = 1e-16;     // floor, spread over [a, b] by width
    int max_depth = 40;
    kernels::Exec exec = kernels::Exec::automatic;
};

struct QuadOutcome {
    std::complex<double> value;
    double aux = 0.0;
    double error = 0.0;   // sum of |whole - halves| over accepted segments
    std::size_t panels = 0;
    bool converged = true;
};

// Adaptive 15-point Gauss-Legendre with bisection over each of the given
// panels (breakpoints must be increasing). Panels are independent; the
// parallel form runs them on threads and sums in panel order.
QuadOutcome integrate_panels_serial(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o = {});
QuadOutcome integrate_panels_omp(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o = {});
QuadOutcome integrate_panels(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o = {});

// [a, b] cut into panels of width at most max_width.
QuadOutcome integrate(const Integrand& f, double a, double b, const QuadOptions& o = {}, double max_width = 1.0);

// Complex-valued convenience wrapper.
QuadOutcome integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                      const QuadOptions& o = {}, double max_width = 1.0);

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace gps
