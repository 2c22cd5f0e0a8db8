#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gps/log_point.hpp"
#include "gps/support.hpp"
#include "gps/terms.hpp"

namespace gps {

// Certificate for the unstored part: sum over exponents above the cutoff of
// |a_alpha| r^alpha <= bound. radius = +inf with bound 0 means the jet is the
// whole series.
struct TailBound {
    std::vector<double> radius;
    double bound = 0.0;

    bool exact() const;
    static TailBound exact_tail(std::size_t nvars);
    static TailBound at(std::size_t nvars, double r, double bound);
};

struct CertifiedReal {
    double value = 0.0;
    double tail = 0.0;               // included in value when certified
    bool lower_bound_only = false;   // no usable tail certificate
};

struct CertifiedComplex {
    cplx value{};
    double error = 0.0;
    bool certified = true;
};

// Generalized power series sum a_alpha X^alpha with real exponents and
// natural support, stored as a jet below per-variable cutoffs.
class GenSeries {
public:
    GenSeries() : GenSeries(1) {}
    // Empty series. Infinite cutoffs with no explicit tail mean the jet is
    // exact; finite cutoffs start out uncertified.
    explicit GenSeries(std::size_t nvars, std::vector<double> cutoff = {},
                       std::vector<SupportDescriptor> supports = {});

    static GenSeries constant(cplx c, std::size_t nvars = 1);
    // c X^e.
    static GenSeries monomial(std::vector<Exponent> e, cplx c = 1.0);
    // One-variable convenience: pairs (exponent, coefficient), exact unless
    // some term lies beyond the cutoff.
    static GenSeries univariate(const std::vector<std::pair<Exponent, cplx>>& terms, double cutoff = kInf);

    // Builder: adds c X^e; terms beyond the cutoff are ignored.
    GenSeries& add_term(const std::vector<Exponent>& e, cplx c);
    GenSeries& add_term(Exponent e, cplx c) { return add_term(std::vector<Exponent>{e}, c); }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<double>& cutoff() const { return box_.x_cutoff; }
    const JetBox& box() const { return box_; }
    // Declared supports, or finite lists of the stored exponents when none
    // were declared.
    std::vector<SupportDescriptor> supports() const;
    bool has_declared_supports() const { return !supports_.empty(); }
    const std::optional<TailBound>& tail() const { return tail_; }
    bool is_exact() const { return tail_ && tail_->exact(); }

    cplx coefficient(const std::vector<double>& alpha) const;
    cplx coefficient(double alpha) const { return coefficient(std::vector<double>{alpha}); }
    cplx constant_term() const;

    GenSeries with_tail(std::optional<TailBound> t) const;
    GenSeries with_supports(std::vector<SupportDescriptor> s) const;
    // Lowers the cutoffs; dropped mass moves into the tail when certified.
    GenSeries truncated(const std::vector<double>& cutoff) const;

    // Same stored terms (to tol, relative to the larger magnitude) and cutoffs.
    bool same_jet(const GenSeries& other, double tol = 0.0) const;
    std::string to_string() const;

    // Direct term access for transforms that rebuild series.
    TermMap& mutable_terms() {
        origin_.reset();
        return terms_;
    }

private:
    std::size_t nvars_;
    TermMap terms_;
    JetBox box_;
    std::vector<SupportDescriptor> supports_;
    std::optional<TailBound> tail_;

    // Set by the formal transforms: this series is B^lambda (sign -1) or
    // L^lambda (sign +1) of *origin. Lets the inverse transform return the
    // pre-image itself, so L(B F) = F holds exactly rather than to 1 ulp.
    struct Origin {
        std::shared_ptr<const GenSeries> series;
        double lambda;
        int sign;
    };
    std::shared_ptr<const Origin> origin_;

    friend GenSeries formal_borel(const GenSeries&, double);
    friend GenSeries formal_laplace(const GenSeries&, double);
    friend GenSeries formal_gamma_weight(const GenSeries&, double, int);
};

GenSeries add(const GenSeries& f, const GenSeries& g);
GenSeries sub(const GenSeries& f, const GenSeries& g);
GenSeries scale(const GenSeries& f, cplx c);
GenSeries mul(const GenSeries& f, const GenSeries& g);
inline GenSeries operator+(const GenSeries& f, const GenSeries& g) { return add(f, g); }
inline GenSeries operator-(const GenSeries& f, const GenSeries& g) { return sub(f, g); }
inline GenSeries operator*(const GenSeries& f, const GenSeries& g) { return mul(f, g); }
inline GenSeries operator*(cplx c, const GenSeries& f) { return scale(f, c); }

CertifiedReal norm_r(const GenSeries& f, const std::vector<double>& r);
inline CertifiedReal norm_r(const GenSeries& f, double r) { return norm_r(f, std::vector<double>(f.nvars(), r)); }

double ord(const GenSeries& f);
double ord_i(const GenSeries& f, std::size_t i);

GenSeries monomial_divide(const GenSeries& f, std::size_t i, Exponent gamma);

// a_alpha -> a_alpha / Gamma(alpha lambda); the constant term goes to 0.
GenSeries formal_borel(const GenSeries& f, double lambda);
// a_alpha -> Gamma(alpha lambda) a_alpha for alpha > 0; constant passes.
GenSeries formal_laplace(const GenSeries& f, double lambda);
// The coefficient map alone (sign -1 Borel, +1 Laplace), with no pre-image
// shortcut. Agrees with the transforms to rounding.
GenSeries formal_gamma_weight(const GenSeries& f, double lambda, int sign);

CertifiedComplex eval_logsum(const GenSeries& f, const LogPoint& w);
inline CertifiedComplex eval_logsum(const GenSeries& f, LogCoord w) { return eval_logsum(f, LogPoint{w}); }

// Substitutes X_i = e^a and sums out that variable.
GenSeries restrict_fiber(const GenSeries& f, std::size_t i, LogCoord a);

struct MonomialPiece {
    std::size_t var;
    Exponent gamma;
    GenSeries factor;
};
// F = sum_i X_i^{gamma_i} F_i, each term going to its lowest variable with a
// positive exponent.
std::vector<MonomialPiece> split_by_monomials(const GenSeries& f);

}  // namespace gps
