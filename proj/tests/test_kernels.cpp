#include <omp.h>

#include <cmath>
#include <random>

#include "doctest.h"
#include "gps/kernels.hpp"
#include "gps/series.hpp"

using namespace gps;

namespace {

TermMap random_terms(std::mt19937_64& rng, std::size_t nvars, int count) {
    std::uniform_real_distribution<double> c(-1, 1);
    std::uniform_int_distribution<int> e(0, 40);
    TermMap t;
    for (int i = 0; i < count; ++i) {
        Monomial m;
        for (std::size_t k = 0; k < nvars; ++k) m.x.push_back(Exponent(e(rng) * 0.25));
        accumulate(t, m, cplx(c(rng), c(rng)));
    }
    return t;
}

double max_rel_diff(const TermMap& a, const TermMap& b) {
    if (a.size() != b.size()) return kInf;
    double d = 0;
    auto ib = b.begin();
    for (const auto& [m, c] : a) {
        if (MonomialLess{}(m, ib->first) || MonomialLess{}(ib->first, m)) return kInf;
        d = std::max(d, std::abs(c - ib->second) / std::max(1.0, std::abs(c)));
        ++ib;
    }
    return d;
}

}  // namespace

TEST_CASE("Cauchy product: OpenMP matches the serial reference") {
    std::mt19937_64 rng(41);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        for (int t = 0; t < 20; ++t) {
            TermMap a = random_terms(rng, 2, 150), b = random_terms(rng, 2, 150);
            JetBox box{{6.0, 6.0}, -1};
            std::vector<double> r{0.9, 0.8};
            auto s = kernels::cauchy_product_serial(a, b, box, &r);
            auto p = kernels::cauchy_product_omp(a, b, box, &r);
            CHECK(max_rel_diff(s.terms, p.terms) <= 1e-12);
            CHECK(s.dropped_mass == doctest::Approx(p.dropped_mass).epsilon(1e-12));
        }
    }
    omp_set_num_threads(1);
}

TEST_CASE("Cauchy product against a brute-force double loop") {
    std::mt19937_64 rng(43);
    TermMap a = random_terms(rng, 1, 30), b = random_terms(rng, 1, 30);
    JetBox box{{7.0}, -1};
    TermMap ref;
    double dropped = 0;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma + mb;
            if (box.inside(m)) accumulate(ref, m, ca * cb);
            else dropped += std::abs(ca) * std::abs(cb) * std::pow(0.5, m.x[0].value);
        }
    std::vector<double> r{0.5};
    auto s = kernels::cauchy_product(a, b, box, &r, kernels::Exec::serial);
    CHECK(max_rel_diff(s.terms, ref) <= 1e-14);
    CHECK(s.dropped_mass == doctest::Approx(dropped).epsilon(1e-13));
}

TEST_CASE("log-sum grid: OpenMP matches serial and pointwise evaluation") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-4, 0.5), v(-1, 1);
    TermMap t = random_terms(rng, 2, 200);
    std::vector<LogPoint> pts;
    for (int i = 0; i < 500; ++i) pts.push_back(LogPoint{LogCoord(cplx(u(rng), v(rng))), LogCoord(cplx(u(rng), v(rng)))});
    pts.push_back(LogPoint{LogCoord::minus_infinity(), LogCoord(-1.0)});
    for (int threads : {1, 4}) {
        omp_set_num_threads(threads);
        auto s = kernels::logsum_grid_serial(t, pts), p = kernels::logsum_grid_omp(t, pts);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i] == p[i]);
            CHECK(std::abs(s[i] - kernels::logsum_at(t, pts[i])) <= 1e-12 * std::max(1.0, std::abs(s[i])));
        }
    }
    omp_set_num_threads(1);
    // Direct sum as oracle.
    for (std::size_t i = 0; i < 20; ++i) {
        cplx ref = 0;
        for (const auto& [m, c] : t) {
            cplx e = 1;
            for (std::size_t k = 0; k < 2; ++k) e *= pts[i][k].exp_scaled(m.x[k].value);
            ref += c * e;
        }
        CHECK(std::abs(kernels::logsum_at(t, pts[i]) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("automatic policy uses threads only for large jobs") {
    CHECK_FALSE(kernels::use_threads(10));
}
