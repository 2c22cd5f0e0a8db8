#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace gps {

using cplx = std::complex<double>;

// A coordinate in the logarithmic chart: a finite complex u+iv, or the
// added origin -inf (Re = -inf, Im = 0).
class LogCoord {
public:
    LogCoord() = default;
    LogCoord(cplx v) : value_(v) {}  // NOLINT
    LogCoord(double v) : value_(v, 0.0) {}  // NOLINT

    static LogCoord minus_infinity() {
        LogCoord c;
        c.neg_inf_ = true;
        return c;
    }

    bool is_minus_infinity() const { return neg_inf_; }
    double re() const { return neg_inf_ ? -std::numeric_limits<double>::infinity() : value_.real(); }
    double im() const { return neg_inf_ ? 0.0 : value_.imag(); }
    // Finite value; meaningless at -inf.
    cplx value() const { return value_; }
    // e^w with e^{-inf} = 0.
    cplx exp() const { return neg_inf_ ? cplx(0.0) : std::exp(value_); }
    // e^{a w} for real a >= 0, with 0^0 = 1.
    cplx exp_scaled(double a) const {
        if (a == 0.0) return 1.0;
        return neg_inf_ ? cplx(0.0) : std::exp(a * value_);
    }

private:
    cplx value_{0.0, 0.0};
    bool neg_inf_ = false;
};

using LogPoint = std::vector<LogCoord>;

}  // namespace gps
