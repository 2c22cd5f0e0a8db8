#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "gps/exponent.hpp"

namespace gps {

using cplx = std::complex<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponent multi-index: real exponents for the Gevrey variables X, integer
// degrees for the convergent variables Y (empty for plain series).
struct Monomial {
    std::vector<Exponent> x;
    std::vector<std::uint32_t> y;

    double x_total() const;
    std::uint32_t y_total() const;
};

Monomial operator+(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, cplx, MonomialLess>;

// Truncation box: per-variable X cutoffs (inclusive) and a total Y degree
// cutoff (inclusive, negative means none).
struct JetBox {
    std::vector<double> x_cutoff;
    int y_degree = -1;

    bool inside(const Monomial& m) const;
    static JetBox meet(const JetBox& a, const JetBox& b);
};

// Adds c to the coefficient of m, erasing the entry if it becomes exactly 0.
void accumulate(TermMap& t, const Monomial& m, cplx c);

// Sum over the stored terms of |a| r^alpha (Y variables weighted by ry).
double weighted_abs_sum(const TermMap& t, const std::vector<double>& rx, double ry = 1.0);

}  // namespace gps
