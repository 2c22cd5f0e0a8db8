#pragma once

#include <vector>

#include "gps/log_point.hpp"
#include "gps/terms.hpp"

// Hot loops, each in a serial reference form and an OpenMP form. The OpenMP
// forms must agree with the serial ones up to floating-point reassociation;
// the tests hold them to that.
namespace gps::kernels {

enum class Exec { serial, parallel, automatic };

struct ProductResult {
    TermMap terms;
    // Sum of |a||b| r^(alpha+beta) over pairs that fell outside the box; only
    // filled when a weight radius is supplied.
    double dropped_mass = 0.0;
};

ProductResult cauchy_product_serial(const TermMap& a, const TermMap& b, const JetBox& box,
                                    const std::vector<double>* weight_radius = nullptr);
ProductResult cauchy_product_omp(const TermMap& a, const TermMap& b, const JetBox& box,
                                 const std::vector<double>* weight_radius = nullptr);
ProductResult cauchy_product(const TermMap& a, const TermMap& b, const JetBox& box,
                             const std::vector<double>* weight_radius = nullptr, Exec exec = Exec::automatic);

// Evaluates sum a e^{alpha . w} (Y variables must be absent) at every point.
std::vector<cplx> logsum_grid_serial(const TermMap& t, const std::vector<LogPoint>& points);
std::vector<cplx> logsum_grid_omp(const TermMap& t, const std::vector<LogPoint>& points);
std::vector<cplx> logsum_grid(const TermMap& t, const std::vector<LogPoint>& points, Exec exec = Exec::automatic);

cplx logsum_at(const TermMap& t, const LogPoint& w);

// True when the automatic policy should use threads for a job of this size.
bool use_threads(std::size_t work);

}  // namespace gps::kernels
