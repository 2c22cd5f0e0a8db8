#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gps/log_geometry.hpp"
#include "gps/params.hpp"
#include "gps/series.hpp"
#include "gps/transforms.hpp"

namespace gps {

// One summand of g = sum_p f_p: a convergent series F_p and a function f_p on
// S^tau_p with f_p = log-sum of F_p on H(log rho_p).
struct TougeronPiece {
    GenSeries F;
    LogFunction f;
    double F_norm = 0.0;  // certified bound for ||F_p||_{rho_p}
    double f_norm = 0.0;  // certified bound for sup |f_p| on S^tau_p
};

struct TougeronDecomposition {
    SummabilityParams tau;
    std::vector<TougeronPiece> pieces;
    // Bounds for the omitted pieces p > P of the two weighted norm sums.
    double tail_F = 0.0;
    double tail_f = 0.0;
    // Bound for |sum_{p>P} f_p| on the domain.
    double tail_value = 0.0;

    // sum_p ||F_p|| r^p and sum_p ||f_p|| r^p, tails included.
    double F_norm_sum() const;
    double f_norm_sum() const;
    // sum_p f_p(w) over the stored pieces.
    cplx sum(cplx w) const;
};

// Coefficientwise sum of the F_p, cut at the given exponent.
GenSeries assemble_T(const TougeronDecomposition& d, double cutoff = kInf);

// max of the two weighted sums for this decomposition (an upper bound for
// the inf over all decompositions).
double decomposition_norm(const TougeronDecomposition& d);

// Pieces scaled by c.
TougeronDecomposition scale(const TougeronDecomposition& d, cplx c);
// Cauchy product decomposition h_p = sum_{i+j=p} f_i g_j.
TougeronDecomposition product_decomposition(const TougeronDecomposition& a, const TougeronDecomposition& b);
// Piecewise union with re-indexing (pieces added where both exist).
TougeronDecomposition direct_sum(const TougeronDecomposition& a, const TougeronDecomposition& b);

// The Euler function x int_0^inf e^{-t}/(1+xt) dt, split at t = p*width for
// K = {1}. Pieces carry exponents X^1..X^{N+1}.
struct EulerDecompositionOptions {
    double R = 0.5;
    double r = 2.0;
    double theta = 3 * M_PI / 4;
    std::size_t pieces = 60;
    std::size_t terms = 20;
    double width = 1.0;
};
TougeronDecomposition euler_decomposition(const EulerDecompositionOptions& o = {});
// Exact value of the Euler function at x > 0 is not computed here; see tests.

// f_0 = log-sum of F, f_p = 0 otherwise.
TougeronDecomposition convergent_decomposition(const GenSeries& F, const SummabilityParams& tau);

// Adds c X^alpha to the series of piece p and nothing to its function: an
// invalid decomposition used as a negative control.
TougeronDecomposition perturbed(const TougeronDecomposition& d, std::size_t p, double alpha, cplx c);

// Appends a piece whose series and function are both the log-sum of G.
TougeronDecomposition with_extra_piece(const TougeronDecomposition& d, const GenSeries& G);

// Replaces f_p by f_p + g_p - g_{p-1} and F_p likewise (g_{-1} = g_P = 0).
TougeronDecomposition telescoped(const TougeronDecomposition& d, const std::vector<GenSeries>& g);

struct GevreyRow {
    double beta = 0.0;
    double q = 0.0;           // max over the grid of remainder / (Gamma(beta M_K) |e^{beta w}|)
    double left_slope = 0.0;  // slope of log ratio against Re w on the leftmost third
    std::size_t used = 0;     // grid points above the noise floor
    bool ok = true;
};

struct GevreyReport {
    bool ok = true;
    double D = 0.0, E = 0.0;
    std::vector<GevreyRow> rows;
    std::optional<double> failed_beta;
    std::string message;
};

// Checks |g(w) - sum_{alpha<beta} a_alpha e^{alpha w}| <= D E^beta Gamma(beta M_K) |e^{beta w}|
// for g = sum_p f_p and T = assemble_T(d), fitting D and E.
GevreyReport gevrey_check(const TougeronDecomposition& d, const LogRegion& subsector, const std::vector<double>& betas,
                          const std::vector<cplx>& w_grid);

// K' = {k - lambda : k > lambda} (or {0}), R', r'. Throws std::domain_error
// with the largest admissible R' when (R')^{1/lambda} > R^{1/lambda}/e * log(r/r').
SummabilityParams borel_param_update(const SummabilityParams& tau, double lambda, double r_prime, double R_prime);
double max_admissible_R(const SummabilityParams& tau, double lambda, double r_prime);

// Bound on the Borel-series coefficients that the input does not store:
// they sit at exponents cutoff + j step (j >= 1) with |b| <= C rho^-beta.
struct BorelTailBound {
    double C = 1.0;
    double rho = 1.0;
    double step = 1.0;
};

struct MultisumOptions {
    // Growth of the Borel sum beyond the series' radius. Estimated from
    // samples near the edge when absent, and the result is then uncertified.
    std::optional<GrowthCertificate> growth;
    // Without it the Borel-series tail comes from a coefficient fit.
    std::optional<BorelTailBound> borel_tail;
    double safety = 0.9;  // radius shrink factor after the fit
    QuadOptions quad;
};

struct MultisumResult {
    cplx value;
    double error = 0.0;
    bool certified = true;
    double log_radius = kInf;  // of the fully Borel-transformed series
    std::vector<double> kappa;
    std::string note;
};

// f = (L^{k_1} o ... o L^{k_l}) of the log-sum of (B^{k_l} o ... o B^{k_1})(Tf), with
// kappa_1 = k_1 and kappa_i = k_i - k_{i-1}.
MultisumResult multisum(const GenSeries& Tf, std::vector<double> K, cplx w, const MultisumOptions& o = {});

// Log-radius of convergence estimated from the top decade of exponents.
double estimate_log_radius(const GenSeries& f);

// Numeric L(B f)(w) for f the log-sum of F, both transforms by quadrature;
// the constant term, which B removes, is added back.
QuadratureResult laplace_of_borel(const GenSeries& F, cplx w, std::optional<double> radius = std::nullopt,
                                  const QuadOptions& quad = {});

struct QuasianalyticityReport {
    double T_discrepancy = 0.0;      // max coefficient difference below the common cutoff
    double value_discrepancy = 0.0;  // max |sum f_p - sum f'_p| over the grid
    cplx worst_point;
};
QuasianalyticityReport quasianalyticity_probe(const TougeronDecomposition& a, const TougeronDecomposition& b,
                                              const std::vector<cplx>& w_grid);

// max over alpha >= 0 of sigma^alpha / Gamma(alpha), and the maximizer.
double binet_constant(double sigma, double* argmax = nullptr);

}  // namespace gps
