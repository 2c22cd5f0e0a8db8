#pragma once

#include <string>
#include <vector>

#include "gps/series.hpp"

namespace gps {

// F = sum_beta F_beta(X) Y^beta: m Gevrey variables X with real exponents and
// n convergent variables Y with integer degrees. Stored as a jet below
// per-variable X cutoffs and a total Y-degree cutoff.
class MixedSeries {
public:
    MixedSeries() : MixedSeries(0, 0) {}
    MixedSeries(std::size_t m, std::size_t n, std::vector<double> x_cutoff = {}, int y_degree = -1);

    static MixedSeries constant(cplx c, std::size_t m, std::size_t n, std::vector<double> x_cutoff = {},
                                int y_degree = -1);
    // Embeds a plain series (no Y dependence).
    static MixedSeries from_series(const GenSeries& f, std::size_t n = 0, int y_degree = -1);
    // X_i (0-based) or Y_j (0-based) as a series in the given box.
    static MixedSeries x_var(std::size_t i, std::size_t m, std::size_t n, std::vector<double> x_cutoff = {},
                             int y_degree = -1);
    static MixedSeries y_var(std::size_t j, std::size_t m, std::size_t n, std::vector<double> x_cutoff = {},
                             int y_degree = -1);

    MixedSeries& add_term(const std::vector<Exponent>& x, const std::vector<std::uint32_t>& y, cplx c);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    const TermMap& terms() const { return jet_; }
    TermMap& mutable_terms() { return jet_; }
    const JetBox& box() const { return box_; }
    const std::vector<double>& x_cutoff() const { return box_.x_cutoff; }
    int y_degree() const { return box_.y_degree; }
    bool is_zero() const { return jet_.empty(); }
    std::size_t size() const { return jet_.size(); }

    cplx coefficient(const std::vector<double>& x, const std::vector<std::uint32_t>& y) const;
    cplx constant_term() const;
    // F_beta as a plain series in X.
    GenSeries y_coefficient(const std::vector<std::uint32_t>& beta) const;
    // Only the real parts are nonzero.
    bool is_real() const;

    // Same box arity and stored terms equal to tol (relative; 0 = exact).
    bool same_jet(const MixedSeries& other, double tol = 0.0) const;
    std::string to_string() const;

private:
    std::size_t m_, n_;
    TermMap jet_;
    JetBox box_;
};

MixedSeries add(const MixedSeries& f, const MixedSeries& g);
MixedSeries sub(const MixedSeries& f, const MixedSeries& g);
MixedSeries scale(const MixedSeries& f, cplx c);
MixedSeries mul(const MixedSeries& f, const MixedSeries& g);
inline MixedSeries operator+(const MixedSeries& f, const MixedSeries& g) { return add(f, g); }
inline MixedSeries operator-(const MixedSeries& f, const MixedSeries& g) { return sub(f, g); }
inline MixedSeries operator*(const MixedSeries& f, const MixedSeries& g) { return mul(f, g); }
inline MixedSeries operator*(cplx c, const MixedSeries& f) { return scale(f, c); }
// f^k by repeated multiplication (k >= 0).
MixedSeries power(const MixedSeries& f, unsigned k);
// Drops every term outside the box.
MixedSeries truncate(const MixedSeries& f, std::vector<double> x_cutoff, int y_degree);

// Multiplicative inverse up to the cutoffs; needs a nonzero constant term.
MixedSeries invert(const MixedSeries& f);

// Substitutes X_i = e^a (a = -inf sets X_i to 0) and removes that variable.
MixedSeries restrict_fiber(const MixedSeries& f, std::size_t i, LogCoord a);

// sum a e^{alpha.w} y^beta.
cplx eval(const MixedSeries& f, const LogPoint& w, const std::vector<cplx>& y);

}  // namespace gps
