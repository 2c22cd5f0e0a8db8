#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gps/log_geometry.hpp"
#include "gps/mixed.hpp"
#include "gps/params.hpp"

namespace gps {

// Normal substitutions X_i -> a_i + X'^gamma_i (lambda_i + H_i), acting on jets
// of mixed series. Indices are 0-based throughout.
//
// Target arities:
//   permutation       (m, n)          X_i -> X'_perm[i]
//   ramification      (m, n)          X_i0 -> X'_i0^alpha
//   regular_blowup    (m-1, n+1)      X_i -> X'_j (lambda + V), V the new
//                                     convergent variable Y'_0; old Y_k -> Y'_{k+1}
//   singular_blowup   (m, n)          X_i -> X'_j X'_i
//   translation       (m0, n+m-m0)    X with a = 0 keep their order as X';
//                                     X with a > 0 go to a + Y'_0, Y'_1, ...;
//                                     Y_k -> b_k + Y'_{m-m0+k}
//   infinitesimal     (m+extra, n')   X_i -> X'_i, Y_k -> targets[k]
//   identify          (m-1, n)        X_i -> X'_j (j renumbered after removing i)
//   set_zero          (m-1, n)        X_i -> 0
struct Substitution {
    enum class Kind {
        permutation,
        ramification,
        regular_blowup,
        singular_blowup,
        translation,
        infinitesimal,
        identify,
        set_zero
    };

    Kind kind = Kind::permutation;
    std::size_t m = 0, n = 0;  // source arity

    std::vector<std::size_t> perm;
    std::size_t i = 0, j = 0;  // i0 for ramification, i -> j otherwise
    double alpha = 1.0;
    double lambda = 1.0;
    std::vector<double> a, b;
    std::vector<MixedSeries> targets;
    // Optional convergence radii of the source variables, used to certify
    // admissibility of translations and infinitesimal substitutions.
    std::vector<double> radius_x, radius_y;
    // Y-degree cutoff of the output. Needed when the output picks up a
    // binomial series in a new convergent variable and the source has none.
    int out_y_degree = -1;

    static Substitution permutation(std::size_t m, std::size_t n, std::vector<std::size_t> perm);
    static Substitution ramification(std::size_t m, std::size_t n, std::size_t i0, double alpha);
    static Substitution regular_blowup(std::size_t m, std::size_t n, std::size_t i, std::size_t j, double lambda,
                                       int out_y_degree = -1);
    static Substitution singular_blowup(std::size_t m, std::size_t n, std::size_t i, std::size_t j);
    static Substitution translation(std::vector<double> a, std::vector<double> b, int out_y_degree = -1);
    static Substitution infinitesimal(std::size_t m, std::vector<MixedSeries> targets);
    static Substitution identify(std::size_t m, std::size_t n, std::size_t i, std::size_t j);
    static Substitution set_zero(std::size_t m, std::size_t n, std::size_t i);

    std::size_t target_m() const;
    std::size_t target_n() const;
    std::string describe() const;
    // Throws std::invalid_argument when some sigma(X_i) is not normal.
    void validate() const;
};

MixedSeries apply(const Substitution& s, const MixedSeries& f);

// Image of a target point under sigma~: the log-chart point (w, y) at which F
// is evaluated to get (sigma F)(w', y').
std::pair<LogPoint, std::vector<cplx>> sigma_tilde(const Substitution& s, const LogPoint& w,
                                                   const std::vector<cplx>& y);

struct TransportedParams {
    SummabilityParams tau;
    std::vector<double> rho;
    double rho0 = 0.0;  // blow-up only: radius of the new convergent variable
};

struct TransportOptions {
    double rho0 = 0.1;  // blow-up
    // Parameters of the infinitesimal targets (tau', rho').
    std::optional<SummabilityParams> target_tau;
    std::vector<double> target_rho;
};

// tau' and rho' as built in the corresponding proofs. Throws
// std::domain_error naming the violated inequality when no admissible
// choice exists. Parameters use the several-variable convention.
TransportedParams param_transport(const Substitution& s, const SummabilityParams& tau, const std::vector<double>& rho,
                                  const TransportOptions& opt = {});

struct ConsistencyReport {
    double max_discrepancy = 0.0;
    std::size_t worst_index = 0;
    std::size_t samples = 0;
};

struct ConsistencySample {
    LogPoint w;
    std::vector<cplx> y;
};

// Compares (sigma F)(w', y') with F(sigma~(w', y')) using the jets as
// polynomials. With a domain given, every w' must lie in it.
ConsistencyReport numeric_consistency(const Substitution& s, const MixedSeries& f,
                                      const std::vector<ConsistencySample>& samples,
                                      const std::optional<LogRegion>& domain = std::nullopt);

// F = G H with G a unit and H = Y_last^d + sum_{k<d} h_k Y_last^k, h_k(0) = 0.
struct WeierstrassResult {
    MixedSeries G, H;
    std::size_t iterations = 0;
};
WeierstrassResult weierstrass_prepare(const MixedSeries& f, unsigned d);

// Counting helpers.
// #{beta in N^n : |beta| = k}.
std::uint64_t count_multi_indices(unsigned n, unsigned k);
// Ordered ways to write gamma in N^n as a sum of exactly k nonzero elements.
std::uint64_t count_compositions(const std::vector<unsigned>& gamma, unsigned k);
// Ordered ways to write gamma as a sum of at most |gamma| nonzero elements.
std::uint64_t count_compositions_any(const std::vector<unsigned>& gamma);

// Binomial coefficient binom(r, k) for real r.
double real_binomial(double r, unsigned k);

}  // namespace gps
