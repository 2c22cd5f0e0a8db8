#include <cmath>
#include <random>

#include "doctest.h"
#include "gps/log_geometry.hpp"

using namespace gps;

TEST_CASE("membership examples") {
    CHECK(LogRegion::disk(0.0).contains(LogCoord::minus_infinity()));
    CHECK_FALSE(LogRegion::sector(0.0, 0.0, M_PI / 2).contains(LogCoord(cplx(-1.0, 2.0))));
    CHECK(LogRegion::sector(0.0, 0.0, M_PI / 2).contains(LogCoord(cplx(-1.0, 1.0))));
    CHECK(LogRegion::sector(0.0, 0.0, M_PI / 2).contains(LogCoord::minus_infinity()));
    LogRegion hk = LogRegion::polydisk({1, 1}, {0, 0}, 1);
    CHECK(hk.contains(LogPoint{LogCoord(-1.0), LogCoord(-1.0)}));
    CHECK_FALSE(hk.contains(LogPoint{LogCoord(-0.3), LogCoord(-0.3)}));
    // Strict inequalities: boundary excluded, closure includes it.
    CHECK_FALSE(LogRegion::disk(0.0).contains(LogCoord(0.0)));
    CHECK(LogRegion::disk(0.0).closure().contains(LogCoord(0.0)));
    CHECK(LogRegion::line(0.5).contains(LogCoord(cplx(3.0, 0.5))));
    CHECK_FALSE(LogRegion::line(0.5).contains(LogCoord(cplx(3.0, 0.6))));
    // V(0, 1): cos(Im w) > e^{Re w}.
    CHECK(LogRegion::borel_disk(0.0, 1.0).contains(LogCoord(cplx(-1.0, 0.5))));
    CHECK_FALSE(LogRegion::borel_disk(0.0, 1.0).contains(LogCoord(cplx(0.1, 0.0))));
    LogRegion ps = LogRegion::polysector({1, 2}, {0, 0}, 1.0);
    CHECK(ps.contains(LogPoint{LogCoord(cplx(-1, 0.5)), LogCoord(cplx(-1, 0.2))}));
    CHECK_FALSE(ps.contains(LogPoint{LogCoord(cplx(-1, 0.5)), LogCoord(cplx(-1, 0.3))}));
}

TEST_CASE("rho_p examples") {
    auto one = SummabilityParams::one_variable({1.0}, 1.0, 2.0, 2.0);
    CHECK(rho_p(one, 0)[0] == doctest::Approx(1.0));
    auto two = SummabilityParams::one_variable({2.0}, 1.0, 2.0, 2.0);
    CHECK(rho_p(two, 3)[0] == doctest::Approx(1.0 / 16));
    auto sev = SummabilityParams::several({{1.0, 2.0}}, {1.0, 4.0}, 2.0, 2.0);
    auto r = rho_p(sev, 1);
    CHECK(r[0] == doctest::Approx(0.5));
    CHECK(r[1] == doctest::Approx(4.0 / std::sqrt(2.0)));
}

TEST_CASE("containment chain") {
    auto tau = SummabilityParams::several({{1.0, 1.0}}, {1.0, 1.0}, 2.0, 2.0);
    auto rep = containment_check(tau, 5, 1000);
    CHECK(rep.ok);
    CHECK(rep.tested[0] > 0);
    auto rep0 = containment_check(tau, 0, 1000);
    CHECK(rep0.ok);
    // Doubling rho breaks the chain in one variable. With K = {(1,1)} the first
    // link only needs rho_1 rho_2 < R^2/(1+p), so there the factor must be larger.
    auto tau1 = SummabilityParams::several({{1.0}}, {1.0}, 2.0, 2.0);
    auto doubled = rho_p(tau1, 5);
    doubled[0] *= 2;
    auto bad = containment_check(tau1, 5, 1000, 1, doubled);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.failed_link == 0);
    auto tripled = rho_p(tau, 5);
    for (double& x : tripled) x *= 3;
    auto bad2 = containment_check(tau, 5, 1000, 1, tripled);
    CHECK_FALSE(bad2.ok);
    CHECK(bad2.witness.has_value());
}

TEST_CASE("monotonicity in p") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> re(-8, 1), im(-3, 3);
    auto tau = SummabilityParams::several({{1.0, 0.5}, {0.5, 1.0}}, {1.0, 2.0}, 2.0, 1.5);
    for (std::uint64_t p : {0u, 1u, 4u}) {
        LogRegion sp = tau_sector_p(tau, p), sq = tau_sector_p(tau, p + 3);
        for (int i = 0; i < 2000; ++i) {
            LogPoint w{LogCoord(cplx(re(rng), im(rng))), LogCoord(cplx(re(rng), im(rng)))};
            if (sq.contains(w)) CHECK(sp.contains(w));
        }
    }
}

TEST_CASE("translation closure of S^K_p") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> re(-6, 1), im(-3, 3), tt(-5, 0);
    LogRegion s = LogRegion::polysector_p({{1.0, 0.5}, {0.5, 1.0}}, {0.0, 0.5}, 1.2, 3);
    int inside = 0;
    for (int i = 0; i < 5000; ++i) {
        cplx a(re(rng), im(rng)), b(re(rng), im(rng));
        if (!s.contains(LogPoint{LogCoord(a), LogCoord(b)})) continue;
        ++inside;
        double t = tt(rng);
        CHECK(s.contains(LogPoint{LogCoord(a + t), LogCoord(b + t)}));
    }
    CHECK(inside > 100);
}

TEST_CASE("exp of the log polydisk is the disk-form set") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-4, 1), ph(-M_PI, M_PI);
    const std::vector<double> k{1.0, 2.0}, r{0.0, 0.3};
    for (std::uint64_t p : {0u, 2u, 9u}) {
        LogRegion h = LogRegion::polydisk(k, r, p);
        for (int i = 0; i < 3000; ++i) {
            cplx w0(u(rng), ph(rng)), w1(u(rng), ph(rng));
            cplx z0 = std::exp(w0), z1 = std::exp(w1);
            bool disk_form = std::abs(z0) < std::exp(r[0]) && std::abs(z1) < std::exp(r[1]) &&
                             std::pow(std::abs(z0), k[0]) * std::pow(std::abs(z1), k[1]) <
                                 std::exp(k[0] * r[0] + k[1] * r[1]) / double(1 + p);
            CHECK(h.contains(LogPoint{LogCoord(w0), LogCoord(w1)}) == disk_form);
        }
    }
}

TEST_CASE("log radius of described regions") {
    CHECK(LogRegion::disk(-1.5).log_radius() == -1.5);
    CHECK(LogRegion::sector(0, 2.0, 1.0).log_radius() == 2.0);
    CHECK(LogRegion::intersection({LogRegion::disk(1.0), LogRegion::disk(-2.0)}).log_radius() == -2.0);
    CHECK(LogRegion::union_of({LogRegion::disk(1.0), LogRegion::disk(-2.0)}).log_radius() == 1.0);
}
