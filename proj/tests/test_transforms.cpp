#include <cmath>
#include <random>

#include "doctest.h"
#include "gps/gps_io.hpp"
#include "gps/resummation.hpp"
#include "gps/transforms.hpp"

#include <boost/math/special_functions/gamma.hpp>

using namespace gps;

namespace {

GenSeries uni(std::initializer_list<std::pair<double, double>> t) {
    std::vector<std::pair<Exponent, cplx>> v;
    for (auto [e, c] : t) v.emplace_back(Exponent(e), c);
    return GenSeries::univariate(v);
}

}  // namespace

TEST_CASE("power identities") {
    for (double a : {0.5, 1.0, 2.0, M_E})
        for (double w : {-4.0, -2.0, -1.0, 0.0}) {
            LogFunction p = LogFunction::power(a);
            QuadratureResult L = log_laplace(p, w), B = log_borel(p, w);
            const double g = boost::math::tgamma(a);
            CHECK(std::abs(L.value - g * std::exp(a * w)) <= 1e-9);
            CHECK(std::abs(B.value - std::exp(a * w) / g) <= 1e-9);
            CHECK(L.abs_error_estimate >= 0.0);
            CHECK(B.truncation_bound >= 0.0);
        }
    CHECK(log_borel(LogFunction::power(1.0), -1.0).value.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(log_borel(LogFunction::power(0.5), 0.0).value.real() == doctest::Approx(1 / std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(log_laplace(LogFunction::power(1.0), -2.0).value.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(log_laplace(LogFunction::power(0.5), 0.0).value.real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("Borel of a log-sum matches the formal Borel transform") {
    GenSeries F = uni({{0, 1}, {1, 1}});
    LogFunction f = LogFunction::log_sum(F);
    QuadratureResult b = log_borel(f, -3.0);
    CHECK(std::abs(b.value - std::exp(-3.0)) <= 1e-10);
    CHECK(std::abs(b.value - eval_logsum(formal_borel(F, 1.0), LogCoord(-3.0)).value) <= 1e-10);
}

TEST_CASE("formal/numeric commutation on a tail-certified series") {
    GpsFile g = load_gps(GPS_DATA_DIR "/convergent-demo.gps");
    LogFunction f = LogFunction::log_sum(g.series, 1.0);
    GenSeries BF = formal_borel(g.series, 1.0);
    for (int i = 0; i < 10; ++i) {
        double w = -6.0 + 5.0 * i / 9.0;  // Re w <= log r - 1
        QuadratureResult b = log_borel(f, w);
        CHECK(std::abs(b.value - eval_logsum(BF, LogCoord(w)).value) <= 1e-6);
    }
}

TEST_CASE("ramified transforms") {
    LogFunction p1 = LogFunction::power(1.0);
    CHECK(std::abs(log_borel_lambda(p1, 2.0, -1.0).value - std::exp(-1.0)) <= 1e-9);
    CHECK(std::abs(log_borel_lambda(p1, 0.5, -1.0).value - std::exp(-1.0) / std::sqrt(M_PI)) <= 1e-9);
    for (double a : {0.5, 1.5})
        for (double lam : {0.5, 2.0}) {
            const double w = -1.3;
            cplx B = log_borel_lambda(LogFunction::power(a), lam, w).value;
            cplx L = log_laplace_lambda(LogFunction::power(a), lam, w).value;
            CHECK(std::abs(B - std::exp(a * w) / boost::math::tgamma(a * lam)) <= 1e-9);
            CHECK(std::abs(L - std::exp(a * w) * boost::math::tgamma(a * lam)) <= 1e-9);
        }
}

TEST_CASE("L^lambda B^lambda f = f for the log-sum of X + X^2") {
    GenSeries F = uni({{1, 1}, {2, 1}});
    LogFunction f = LogFunction::log_sum(F);
    for (double lam : {0.5, 2.0}) {
        LogFunction g;
        g.eval = [f, lam](cplx eta) { return log_borel_lambda(f, lam, eta).value; };
        const double b1 = 1 / boost::math::tgamma(lam), b2 = 1 / boost::math::tgamma(2 * lam);
        g.exp_poly = std::vector<std::pair<double, double>>{{b1, 1.0}, {b2, 2.0}};
        g.flatness = FlatnessCertificate{b1 + b2, 1.0, 0.0};
        for (double w : {-2.0, -1.0}) {
            LaplaceOptions lo;
            lo.quad.abs_tol = 1e-12;
            QuadratureResult r = log_laplace_lambda(g, lam, w, lo);
            CHECK(std::abs(r.value - (std::exp(w) + std::exp(2 * w))) <= 1e-6);
        }
    }
}

TEST_CASE("round trip L(Bf) = f for 1 + X + X^{3/2}") {
    GenSeries F = uni({{0, 1}, {1, 1}, {1.5, 1}});
    for (int i = 0; i < 10; ++i) {
        double w = -4.0 + 3.5 * i / 9.0;
        QuadratureResult r = laplace_of_borel(F, w);
        CHECK(std::abs(r.value - eval_logsum(F, LogCoord(w)).value) <= 1e-6);
    }
}

TEST_CASE("borel_sup_bound") {
    CHECK(borel_sup_bound(1.0, M_PI, 3 * M_PI / 4, -1.0, 0.0) == doctest::Approx(M_E / std::sin(M_PI / 8)));
    CHECK(borel_sup_bound(1.0, M_PI, 3 * M_PI / 4, -1.0, 0.0) == doctest::Approx(7.103).epsilon(1e-3));
    // Continuity at r = r'.
    CHECK(borel_sup_bound(2.0, M_PI, 3 * M_PI / 4, 0.0, 0.0) ==
          doctest::Approx(borel_sup_bound(2.0, M_PI, 3 * M_PI / 4, -1e-12, 0.0)));
    CHECK(borel_sup_bound(1.0, M_PI, 3 * M_PI / 4, 1.0, 0.0) > borel_sup_bound(1.0, M_PI, 3 * M_PI / 4, 0.0, 0.0));
    CHECK_THROWS(borel_sup_bound(1.0, 3 * M_PI / 4, M_PI, 0.0, 0.0));
    CHECK_THROWS(borel_sup_bound(1.0, M_PI, 0.4 * M_PI, 0.0, 0.0));

    // Sampling: f = p_1 on S(0, 1/2, pi) has sup e^{1/2}; the contour sits at r' = 0.
    const double bound = borel_sup_bound(std::exp(0.5), M_PI, 3 * M_PI / 4, 0.5, 0.0);
    LogFunction p1 = LogFunction::power(1.0);
    p1.domain = LogRegion::sector(0.0, 0.5, M_PI);
    BorelOptions bo;
    bo.contour = BorelContour{0.0, 0.0, 3 * M_PI / 4};
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> re(-8, 0), im(-M_PI / 4, M_PI / 4);
    for (int i = 0; i < 1000; ++i) {
        cplx w(re(rng), im(rng));
        CHECK(std::abs(log_borel(p1, w, bo).value) <= bound);
    }
}

TEST_CASE("contour independence and linearity") {
    GenSeries F = uni({{0, 1}, {1, 1}, {1.5, 1}});
    LogFunction f = LogFunction::log_sum(F);
    BorelOptions a, b;
    a.contour = BorelContour{0.0, 0.5, 2.0};
    b.contour = BorelContour{0.0, 1.5, 2.8};
    for (double w : {-3.0, -1.0, 0.0}) {
        QuadratureResult ra = log_borel(f, w, a), rb = log_borel(f, w, b);
        CHECK(std::abs(ra.value - rb.value) <= ra.total_error() + rb.total_error() + 1e-12);
    }
    LogFunction g = LogFunction::power(0.5), h = LogFunction::power(2.0);
    LogFunction comb = cplx(2.0, 1.0) * g + cplx(-0.5) * h;
    for (double w : {-2.0, -0.5}) {
        cplx lhs = log_laplace(comb, w).value;
        cplx rhs = cplx(2.0, 1.0) * log_laplace(g, w).value + cplx(-0.5) * log_laplace(h, w).value;
        CHECK(std::abs(lhs - rhs) <= 1e-9);
        cplx blhs = log_borel(comb, w).value;
        cplx brhs = cplx(2.0, 1.0) * log_borel(g, w).value + cplx(-0.5) * log_borel(h, w).value;
        CHECK(std::abs(blhs - brhs) <= 1e-9);
    }
}

TEST_CASE("Borel keeps flatness at -inf") {
    // f = e^{eta/2} / (1 + e^eta), poles at Im eta = pi.
    LogFunction f;
    f.domain = LogRegion::sector(0.0, kInf, 2.5);
    f.eval = [](cplx eta) { return std::exp(0.5 * eta) / (1.0 + std::exp(eta)); };
    BorelOptions bo;
    bo.contour = BorelContour{0.0, 0.0, 2.2};
    double lo = kInf, hi = 0;
    for (double w = -30; w <= -2; w += 2) {
        double ratio = std::abs(log_borel(f, w, bo).value) / std::exp(0.5 * w);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi <= 2 * lo);
    // Leading behaviour e^{w/2}/Gamma(1/2).
    double r30 = std::abs(log_borel(f, -30.0, bo).value) / std::exp(-15.0);
    CHECK(r30 == doctest::Approx(1 / std::sqrt(M_PI)).epsilon(1e-6));
}

TEST_CASE("Laplace needs a growth certificate") {
    LogFunction f;
    f.eval = [](cplx eta) { return std::exp(eta); };
    CHECK_THROWS(log_laplace(f, -1.0));
}
