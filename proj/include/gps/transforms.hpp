#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gps/log_geometry.hpp"
#include "gps/quadrature.hpp"
#include "gps/series.hpp"

namespace gps {

// |f(eta)| <= C exp(D e^{q Re eta}) on the domain.
struct GrowthCertificate {
    double C = 1.0;
    double D = 0.0;
    double q = 1.0;
};

// |f(eta)| <= C e^{alpha Re eta} for Re eta <= edge.
struct FlatnessCertificate {
    double C = 1.0;
    double alpha = 0.0;
    double edge = kInf;
};

// A log-holomorphic function of one variable given by an evaluator. The
// evaluator must be re-entrant: quadrature panels may call it concurrently.
struct LogFunction {
    LogRegion domain = LogRegion::disk(kInf);
    std::function<cplx(cplx)> eval;
    std::optional<GrowthCertificate> growth;
    std::optional<FlatnessCertificate> flatness;
    // For finite exponential sums sum a e^{beta eta}: pairs (|a|, beta). Lets
    // growth certificates be regenerated for any D.
    std::optional<std::vector<std::pair<double, double>>> exp_poly;
    // Error envelope of the evaluator itself (0 when exact).
    std::function<double(cplx)> eval_error;
    bool certified = true;

    cplx operator()(cplx w) const { return eval(w); }

    // e^{alpha w} on the whole chart.
    static LogFunction power(double alpha, cplx coefficient = 1.0);
    // Log-sum of a one-variable series. Exact jets become entire exponential
    // sums; otherwise the domain is H(log r) for the given radius, which must
    // lie inside the tail certificate when one exists.
    static LogFunction log_sum(const GenSeries& f, std::optional<double> radius = std::nullopt);
};

// Growth certificate for an exponential sum: C = sum |a| (beta/(D e))^beta.
GrowthCertificate exp_poly_growth(const std::vector<std::pair<double, double>>& terms, double D);

// f o m_lambda: eta -> f(lambda eta), with domain and certificates carried over.
LogFunction ramify(const LogFunction& f, double lambda);

LogFunction operator+(const LogFunction& f, const LogFunction& g);
LogFunction operator*(cplx c, const LogFunction& f);

struct QuadratureResult {
    cplx value;
    double abs_error_estimate = 0.0;  // quadrature plus propagated evaluator error
    double truncation_bound = 0.0;    // dropped tails of the integral
    std::size_t panels = 0;
    bool certified = true;
    std::string note;

    double total_error() const { return abs_error_estimate + truncation_bound; }
};

struct BorelContour {
    double d = 0.0;
    std::optional<double> r;      // vertical segment at Re eta = r
    std::optional<double> theta;  // half-opening, in (pi/2, pi]
};

struct BorelOptions {
    BorelContour contour;
    QuadOptions quad;
    double decay = 40.0;  // tail cut where |cos| e^{Re(w - eta)} reaches this
};

struct LaplaceOptions {
    double d = 0.0;
    std::optional<double> L1, L2;  // integrate over [-L1, L2]
    // Right-edge margin below the domain's log-radius.
    double edge_margin = 1e-3;
    // Throw when the dropped tails exceed this.
    double max_truncation = kInf;
    QuadOptions quad;
};

// B f(w) = (1/2 pi i) int over the boundary of S(d, r', theta') of
// exp((w - eta) + e^{w - eta}) f(eta) d eta.
QuadratureResult log_borel(const LogFunction& f, cplx w, const BorelOptions& o = {});
// L f(w) = int over Im eta = d of e^{-e^{eta - w}} f(eta) d eta.
QuadratureResult log_laplace(const LogFunction& f, cplx w, const LaplaceOptions& o = {});

// Ramified versions: (B (f o m_lambda)) o m_{1/lambda}, same for L.
QuadratureResult log_borel_lambda(const LogFunction& f, double lambda, cplx w, const BorelOptions& o = {});
QuadratureResult log_laplace_lambda(const LogFunction& f, double lambda, cplx w, const LaplaceOptions& o = {});

// A priori bound on |B f| over the image sector for f bounded by norm on
// S(d, r, theta), with the contour S(d, r', theta').
double borel_sup_bound(double norm, double theta, double theta_prime, double r, double r_prime);

}  // namespace gps
