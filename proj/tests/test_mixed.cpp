#include <cmath>
#include <random>

#include "doctest.h"
#include "gps/mixed.hpp"

using namespace gps;

namespace {

MixedSeries random_mixed(std::mt19937_64& rng, std::size_t m, std::size_t n, double xc, int yd) {
    std::uniform_int_distribution<int> coef(-3, 3), count(1, 6), ex(0, 8), yd_(0, 3);
    MixedSeries f(m, n, std::vector<double>(m, xc), yd);
    int c = count(rng);
    for (int i = 0; i < c; ++i) {
        std::vector<Exponent> x;
        std::vector<std::uint32_t> y;
        for (std::size_t k = 0; k < m; ++k) x.push_back(Exponent::rational(ex(rng), 2));
        for (std::size_t k = 0; k < n; ++k) y.push_back(yd_(rng));
        f.add_term(x, y, cplx(coef(rng), coef(rng)));
    }
    return f;
}

}  // namespace

TEST_CASE("invert examples") {
    MixedSeries f = MixedSeries::constant(1.0, 0, 1, {}, 6) - MixedSeries::y_var(0, 0, 1, {}, 6);
    MixedSeries g = invert(f);
    for (std::uint32_t k = 0; k <= 6; ++k) CHECK(g.coefficient({}, {k}) == cplx(1.0));
    CHECK(g.size() == 7);
    CHECK(invert(MixedSeries::constant(2.0, 1, 0)).constant_term() == cplx(0.5));
    CHECK_THROWS_AS(invert(MixedSeries::x_var(0, 1, 0, {3.0})), std::domain_error);
}

TEST_CASE("invert: F times its inverse is 1 below the cutoffs") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 60; ++t) {
        MixedSeries f = random_mixed(rng, 1 + t % 2, 1 + t % 3 / 2, 4.0, 5);
        f = f + MixedSeries::constant(5.0 + f.constant_term(), f.m(), f.n(), f.x_cutoff(), f.y_degree());
        MixedSeries p = f * invert(f);
        for (const auto& [mono, c] : p.terms()) {
            if (mono.x_total() == 0.0 && mono.y_total() == 0) CHECK(std::abs(c - 1.0) <= 1e-12);
            else CHECK(std::abs(c) <= 1e-12 * std::max(1.0, std::abs(f.constant_term())));
        }
    }
}

TEST_CASE("power, truncate, product cutoffs") {
    MixedSeries x = MixedSeries::x_var(0, 1, 1, {3.0}, 2), y = MixedSeries::y_var(0, 1, 1, {3.0}, 2);
    MixedSeries s = power(x + y, 3);
    // (X+Y)^3 with total Y degree <= 2.
    CHECK(s.coefficient({3.0}, {0}) == cplx(1.0));
    CHECK(s.coefficient({2.0}, {1}) == cplx(3.0));
    CHECK(s.coefficient({1.0}, {2}) == cplx(3.0));
    CHECK(s.coefficient({0.0}, {3}) == cplx(0.0));
    CHECK(power(x, 0).same_jet(MixedSeries::constant(1.0, 1, 1, {3.0}, 2)));
    MixedSeries t = truncate(s, {2.0}, 1);
    CHECK(t.coefficient({3.0}, {0}) == cplx(0.0));
    CHECK(t.coefficient({2.0}, {1}) == cplx(3.0));
    CHECK(t.coefficient({1.0}, {2}) == cplx(0.0));
}

TEST_CASE("ring laws on random mixed jets") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        auto f = random_mixed(rng, 2, 1, 5.0, 4), g = random_mixed(rng, 2, 1, 5.0, 4), h = random_mixed(rng, 2, 1, 5.0, 4);
        CHECK((f * g).same_jet(g * f));
        CHECK(((f * g) * h).same_jet(f * (g * h)));
        CHECK((f * (g + h)).same_jet(f * g + f * h));
    }
}

TEST_CASE("y coefficients and evaluation") {
    MixedSeries f(1, 1);
    f.add_term({Exponent(0.5)}, {0}, 2.0);
    f.add_term({Exponent(1.0)}, {2}, 3.0);
    GenSeries f2 = f.y_coefficient({2});
    CHECK(f2.coefficient(1.0) == cplx(3.0));
    // 2 x^(1/2) + 3 x y^2 at x = 1/4, y = 2.
    cplx v = eval(f, LogPoint{LogCoord(std::log(0.25))}, {cplx(2.0)});
    CHECK(v.real() == doctest::Approx(2 * 0.5 + 3 * 0.25 * 4));
    CHECK(eval(f, LogPoint{LogCoord::minus_infinity()}, {cplx(5.0)}) == cplx(0.0));
    CHECK(f.is_real());
}

TEST_CASE("mixed restrict_fiber") {
    MixedSeries f(2, 1);
    f.add_term({Exponent(1.0), Exponent(1.0)}, {0}, 1.0);
    f.add_term({Exponent(0.0), Exponent(2.0)}, {1}, 1.0);
    MixedSeries r = restrict_fiber(f, 0, LogCoord::minus_infinity());
    CHECK(r.m() == 1);
    CHECK(r.size() == 1);
    CHECK(r.coefficient({2.0}, {1}) == cplx(1.0));
    MixedSeries r0 = restrict_fiber(f, 0, LogCoord(0.0));
    CHECK(r0.coefficient({1.0}, {0}) == cplx(1.0));
}
