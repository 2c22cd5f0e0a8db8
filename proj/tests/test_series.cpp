#include <cmath>
#include <random>

#include "doctest.h"
#include "gps/demos.hpp"
#include "gps/series.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

using namespace gps;

namespace {

GenSeries uni(std::initializer_list<std::pair<double, double>> t, double cutoff = kInf) {
    std::vector<std::pair<Exponent, cplx>> v;
    for (auto [e, c] : t) v.emplace_back(Exponent(e), c);
    return GenSeries::univariate(v, cutoff);
}

// Small integer coefficients on a dyadic grid: sums and products stay exact.
GenSeries random_series(std::mt19937_64& rng, std::size_t nvars, double cutoff, bool positive_order = false) {
    std::uniform_int_distribution<int> coef(-4, 4), count(1, 6), ex(0, 12);
    GenSeries f(nvars, std::vector<double>(nvars, cutoff));
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<Exponent> e;
        double tot = 0;
        for (std::size_t k = 0; k < nvars; ++k) {
            e.push_back(Exponent::rational(ex(rng), 4));
            tot += e.back().value;
        }
        if (positive_order && tot == 0.0) e[0] = Exponent::rational(1, 4);
        f.add_term(e, cplx(coef(rng), coef(rng)));
    }
    return f.with_tail(TailBound::exact_tail(nvars));
}

}  // namespace

TEST_CASE("add examples") {
    CHECK((uni({{0, 1}, {1, 1}}) + uni({{1, 2}})).same_jet(uni({{0, 1}, {1, 3}})));
    GenSeries f = uni({{0.5, 2}, {3, -1}});
    CHECK((f + GenSeries(1)).same_jet(f));
    GenSeries l = GenSeries::monomial({Exponent::log_of(2)}) + GenSeries::monomial({Exponent::log_of(3)});
    CHECK(l.size() == 2);
    CHECK(l.coefficient(std::log(2.0)) == cplx(1.0));
    CHECK(l.coefficient(std::log(3.0)) == cplx(1.0));
    CHECK_THROWS(GenSeries(1) + GenSeries(2));
}

TEST_CASE("mul examples") {
    CHECK((uni({{0, 1}, {1, 1}}) * uni({{0, 1}, {1, -1}})).same_jet(uni({{0, 1}, {2, -1}})));
    GenSeries h = GenSeries::monomial({Exponent::rational(1, 2)});
    CHECK((h * h).same_jet(uni({{1, 1}})));
    GenSeries f = uni({{0.5, 2}, {3, -1}});
    CHECK((f * GenSeries::constant(1.0)).same_jet(f));
    // Cutoff is the smaller one; terms above it are dropped.
    GenSeries a = uni({{0, 1}, {1, 1}}, 2.0), b = uni({{0, 1}, {2, 1}}, 5.0);
    GenSeries p = a * b;
    CHECK(p.cutoff()[0] == 2.0);
    CHECK(p.coefficient(3.0) == cplx(0.0));
}

TEST_CASE("ring laws on random jets") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        std::size_t m = 1 + t % 2;
        GenSeries f = random_series(rng, m, 4.0), g = random_series(rng, m, 4.0), h = random_series(rng, m, 4.0);
        CHECK((f + g).same_jet(g + f));
        CHECK(((f + g) + h).same_jet(f + (g + h)));
        CHECK((f * g).same_jet(g * f));
        CHECK(((f * g) * h).same_jet(f * (g * h)));
        CHECK((f * (g + h)).same_jet(f * g + f * h));
        CHECK((f - f).is_zero());
    }
}

TEST_CASE("norm is submultiplicative") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        GenSeries f = random_series(rng, 2, kInf), g = random_series(rng, 2, kInf);
        for (double r : {0.3, 1.0, 1.7}) {
            double nf = norm_r(f, r).value, ng = norm_r(g, r).value, nfg = norm_r(f * g, r).value;
            CHECK(nfg <= nf * ng * (1 + 1e-14));
        }
    }
}

TEST_CASE("norm_r examples") {
    CHECK(norm_r(uni({{0, 1}, {1, 1}}), 0.5).value == doctest::Approx(1.5));
    CHECK(norm_r(GenSeries(1), 0.5).value == 0.0);
    // Sum of X^{log n}, n <= N, at r = e^-2 is sum n^-2 with tail <= 1/N.
    const std::size_t N = 2000;
    GenSeries z = zeta_series(N);
    CertifiedReal c = norm_r(z, std::exp(-2.0));
    CHECK_FALSE(c.lower_bound_only);
    double partial = 0;
    for (std::size_t n = N; n >= 1; --n) partial += 1.0 / double(n * n);
    const double zeta2 = boost::math::zeta(2.0);
    CHECK(c.value - c.tail == doctest::Approx(partial).epsilon(1e-13));
    CHECK(c.tail <= 1.0 / N + 1e-15);
    CHECK(c.value >= zeta2 - 1e-12);
    CHECK(c.value - zeta2 <= 1.0 / N);
    // No tail certificate: lower bound only.
    GenSeries u = uni({{0, 1}, {1, 1}}, 3.0).with_tail(std::nullopt);
    CHECK(norm_r(u, 0.5).lower_bound_only);
}

TEST_CASE("ord and ord_i") {
    GenSeries f(2);
    f.add_term({Exponent(2.0), Exponent(1.0)}, 1.0);
    f.add_term({Exponent(3.0), Exponent(0.0)}, 1.0);
    CHECK(ord(f) == 3.0);
    CHECK(ord_i(f, 0) == 2.0);
    CHECK(std::isinf(ord(GenSeries(1))));
    CHECK(ord(GenSeries::constant(5.0)) == 0.0);
}

TEST_CASE("monomial division") {
    CHECK(monomial_divide(uni({{2, 1}, {3, 1}}), 0, Exponent(2.0)).same_jet(uni({{0, 1}, {1, 1}})));
    CHECK(monomial_divide(GenSeries::monomial({Exponent::log_of(2)}), 0, Exponent::log_of(2)).same_jet(uni({{0, 1}})));
    CHECK_THROWS_AS(monomial_divide(uni({{0, 1}, {1, 1}}), 0, Exponent(1.0)), std::domain_error);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        GenSeries f = random_series(rng, 2, kInf, true);
        double g = ord_i(f, 1);
        if (!std::isfinite(g)) continue;
        GenSeries q = monomial_divide(f, 1, Exponent(g));
        GenSeries back = GenSeries::monomial({Exponent(0.0), Exponent(g)}) * q;
        CHECK(back.same_jet(f));
    }
}

TEST_CASE("formal Borel and Laplace") {
    CHECK(formal_borel(uni({{2, 1}}), 1.0).same_jet(uni({{2, 1}})));
    GenSeries e(1), geo(1);
    double fact = 1;
    for (int n = 0; n < 30; ++n) {
        if (n) fact *= n;
        e.add_term(Exponent(double(n + 1)), fact);
        geo.add_term(Exponent(double(n + 1)), 1.0);
    }
    CHECK(formal_borel(e, 1.0).same_jet(geo, 1e-13));
    CHECK(formal_borel(GenSeries::constant(1.0), 1.0).is_zero());
    GenSeries lh = formal_laplace(GenSeries::monomial({Exponent::rational(1, 2)}), 1.0);
    CHECK(lh.coefficient(0.5).real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(formal_laplace(uni({{1, 1}}), 2.0).same_jet(uni({{1, 1}})));
    // Constant passes through the Laplace side.
    CHECK(formal_laplace(GenSeries::constant(3.0), 1.0).same_jet(GenSeries::constant(3.0)));
}

TEST_CASE("formal round trips for random series") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        GenSeries f = random_series(rng, 1, 6.0, true);
        for (double lam : {0.5, 1.0, 2.0, M_PI}) {
            CHECK(formal_laplace(formal_borel(f, lam), lam).same_jet(f));
            CHECK(formal_borel(formal_laplace(f, lam), lam).same_jet(f));
            // The bare coefficient maps agree to rounding.
            GenSeries lb = formal_gamma_weight(formal_gamma_weight(f, lam, -1), lam, +1);
            CHECK(lb.same_jet(f, 1e-13));
        }
    }
}

TEST_CASE("Borel weights against an independent Gamma") {
    GenSeries f = uni({{0.5, 1}, {std::sqrt(2.0), 1}, {M_E, 1}, {7.25, 1}});
    for (double lam : {0.5, 1.0, 2.0}) {
        GenSeries b = formal_borel(f, lam);
        for (const auto& [m, c] : f.terms()) {
            double a = m.x[0].value;
            CHECK(b.coefficient(a).real() == doctest::Approx(1.0 / boost::math::tgamma(a * lam)).epsilon(1e-13));
        }
    }
}

TEST_CASE("log-sum evaluation") {
    CHECK(eval_logsum(uni({{0, 1}, {1, 1}}), LogCoord(std::log(0.5))).value.real() == doctest::Approx(1.5));
    GenSeries z = zeta_series(2000);
    CertifiedComplex v = eval_logsum(z, LogCoord(-2.0));
    CHECK(v.certified);
    CHECK(std::abs(v.value.real() - boost::math::zeta(2.0)) <= v.error + 1e-13);
    CHECK(v.value.real() == doctest::Approx(1.644934).epsilon(1e-3));
    // Outside the tail radius: flagged.
    CHECK_FALSE(eval_logsum(z, LogCoord(-1.0)).certified);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        GenSeries f = random_series(rng, 2, kInf);
        CertifiedComplex c = eval_logsum(f, LogPoint{LogCoord::minus_infinity(), LogCoord::minus_infinity()});
        CHECK(c.value == f.constant_term());
    }
}

TEST_CASE("restrict_fiber") {
    GenSeries f(2);
    f.add_term({Exponent(1.0), Exponent(1.0)}, 1.0);
    f.add_term({Exponent(0.0), Exponent(2.0)}, 1.0);
    CHECK(restrict_fiber(f, 0, LogCoord(0.0)).same_jet(uni({{1, 1}, {2, 1}})));
    CHECK(restrict_fiber(f, 0, LogCoord::minus_infinity()).same_jet(uni({{2, 1}})));
    GenSeries g = GenSeries::monomial({Exponent(0.0), Exponent(0.0)}) + GenSeries::monomial({Exponent(1.0), Exponent(0.0)});
    g = g * (GenSeries::monomial({Exponent(0.0), Exponent(0.0)}) + GenSeries::monomial({Exponent(0.0), Exponent(1.0)}));
    CHECK(restrict_fiber(g, 0, LogCoord(std::log(2.0))).same_jet(uni({{0, 3}, {1, 3}}), 1e-15));
}

TEST_CASE("split_by_monomials") {
    GenSeries f(2);
    f.add_term({Exponent(1.0), Exponent(0.0)}, 1.0);
    f.add_term({Exponent(0.0), Exponent(1.0)}, 1.0);
    auto p = split_by_monomials(f);
    REQUIRE(p.size() == 2);
    CHECK(p[0].var == 0);
    CHECK(p[0].gamma.value == 1.0);
    CHECK(p[1].var == 1);
    GenSeries g(2);
    g.add_term({Exponent(2.0), Exponent(1.0)}, 1.0);
    auto q = split_by_monomials(g);
    REQUIRE(q.size() == 1);
    CHECK(q[0].var == 0);
    CHECK(q[0].gamma.value == 2.0);
    CHECK(q[0].factor.coefficient({0.0, 1.0}) == cplx(1.0));
    auto r = split_by_monomials(uni({{0.5, 1}, {1, 1}}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].gamma.value == 0.5);
    CHECK(r[0].factor.same_jet(uni({{0, 1}, {0.5, 1}})));
    CHECK_THROWS(split_by_monomials(uni({{0, 1}, {1, 1}})));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        GenSeries h = random_series(rng, 2, kInf, true);
        h = h - GenSeries::constant(h.constant_term(), 2);
        GenSeries back(2);
        for (const auto& piece : split_by_monomials(h)) {
            std::vector<Exponent> e(2, Exponent(0.0));
            e[piece.var] = piece.gamma;
            back = back + GenSeries::monomial(e) * piece.factor;
        }
        CHECK(back.with_tail(TailBound::exact_tail(2)).same_jet(h));
    }
}

TEST_CASE("no stored coefficient is zero") {
    GenSeries f = uni({{1, 1}}) + uni({{1, -1}});
    CHECK(f.is_zero());
}
