#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "gps/substitutions.hpp"
#include "subst_cases.hpp"

using namespace gps;
using namespace gps::testing;

TEST_CASE("apply examples") {
    MixedSeries f(1, 0, {4.0});
    f.add_term({Exponent(0.5)}, {}, 1.0).add_term({Exponent(1.0)}, {}, 1.0);
    MixedSeries g = apply(Substitution::ramification(1, 0, 0, 2.0), f);
    CHECK(g.size() == 2);
    CHECK(g.coefficient({1.0}, {}) == cplx(1.0));
    CHECK(g.coefficient({2.0}, {}) == cplx(1.0));

    // X_1 -> X'_0 (1 + V) on X_1^{1/2}.
    MixedSeries h(2, 0, {4.0, 4.0});
    h.add_term({Exponent(0.0), Exponent(0.5)}, {}, 1.0);
    MixedSeries b = apply(Substitution::regular_blowup(2, 0, 1, 0, 1.0, 4), h);
    REQUIRE(b.m() == 1);
    REQUIRE(b.n() == 1);
    CHECK(b.coefficient({0.5}, {0}) == cplx(1.0));
    CHECK(b.coefficient({0.5}, {1}) == cplx(0.5));
    CHECK(b.coefficient({0.5}, {2}) == cplx(-0.125));
    CHECK(b.coefficient({0.5}, {3}) == cplx(1.0 / 16));

    MixedSeries s(1, 0, {kInf});
    s.add_term({Exponent(0.5)}, {}, 1.0);
    MixedSeries t = apply(Substitution::translation({4.0}, {}, 3), s);
    REQUIRE(t.m() == 0);
    CHECK(t.coefficient({}, {0}) == cplx(2.0));
    CHECK(t.coefficient({}, {1}) == cplx(0.25));
    CHECK(t.coefficient({}, {2}) == cplx(-1.0 / 64));
    CHECK(t.coefficient({}, {3}) == cplx(1.0 / 512));

    // Y -> X' + Y'^2 on Y^2.
    MixedSeries tgt(1, 1, {2.5}, 4);
    tgt.add_term({Exponent(1.0)}, {0}, 1.0).add_term({Exponent(0.0)}, {2}, 1.0);
    MixedSeries y2(0, 1, {}, 5);
    y2.add_term({}, {2}, 1.0);
    MixedSeries inf = apply(Substitution::infinitesimal(0, {tgt}), y2);
    CHECK(inf.size() == 3);
    CHECK(inf.coefficient({2.0}, {0}) == cplx(1.0));
    CHECK(inf.coefficient({1.0}, {2}) == cplx(2.0));
    CHECK(inf.coefficient({0.0}, {4}) == cplx(1.0));

    MixedSeries x1x2(2, 0, {4.0, 4.0});
    x1x2.add_term({Exponent(1.0), Exponent(1.0)}, {}, 1.0);
    MixedSeries id = apply(Substitution::identify(2, 0, 1, 0), x1x2);
    CHECK(id.size() == 1);
    CHECK(id.coefficient({2.0}, {}) == cplx(1.0));

    MixedSeries z = apply(Substitution::set_zero(2, 0, 1), x1x2 + MixedSeries::x_var(0, 2, 0, {4.0, 4.0}));
    CHECK(z.size() == 1);
    CHECK(z.coefficient({1.0}, {}) == cplx(1.0));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(Substitution::ramification(1, 0, 0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Substitution::regular_blowup(2, 0, 1, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Substitution::permutation(2, 0, {0, 0}), std::invalid_argument);
    MixedSeries s(1, 0, {kInf});
    s.add_term({Exponent(0.5)}, {}, 1.0);
    // A real power at a = 0 has no binomial expansion.
    CHECK_THROWS(apply(Substitution::translation({4.0}, {}, 3), MixedSeries(2, 0)));
    MixedSeries wrong(2, 0, {1.0, 1.0});
    CHECK_THROWS_AS(apply(Substitution::ramification(1, 0, 0, 2.0), wrong), std::invalid_argument);
}

TEST_CASE("homomorphism laws and realness") {
    std::mt19937_64 rng(61);
    for (auto& c : cases()) {
        const std::string name = c.name;
        CAPTURE(name);
        for (int t = 0; t < 100; ++t) {
            MixedSeries F = c.gen(rng), G = c.gen(rng);
            MixedSeries sF = apply(c.s, F), sG = apply(c.s, G);
            if (c.exact) {
                CHECK(apply(c.s, F + G).same_jet(sF + sG));
                CHECK(apply(c.s, F * G).same_jet(sF * sG));
            } else {
                CHECK(jet_gap(apply(c.s, F + G), sF + sG) <= 1e-13);
                CHECK(jet_gap(apply(c.s, F * G), sF * sG) <= 1e-12);
            }
            CHECK(apply(c.s, realpart(F)).is_real());
        }
    }
}

TEST_CASE("permutation keeps the term multiset and the r-norm") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> rr(0.2, 1.5);
    auto s = Substitution::permutation(3, 0, {2, 0, 1});
    for (int t = 0; t < 50; ++t) {
        MixedSeries F = random_mixed(rng, 3, 0, {4.0, 4.0, 4.0}, -1, 2, 0);
        MixedSeries P = apply(s, F);
        CHECK(P.size() == F.size());
        std::vector<double> r{rr(rng), rr(rng), rr(rng)}, rp(3);
        for (std::size_t i = 0; i < 3; ++i) rp[s.perm[i]] = r[i];
        double a = norm_r(F.y_coefficient({}), r).value, b = norm_r(P.y_coefficient({}), rp).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
        for (const auto& [mono, c] : F.terms()) {
            std::vector<double> e(3);
            for (std::size_t i = 0; i < 3; ++i) e[s.perm[i]] = mono.x[i].value;
            CHECK(P.coefficient(e, {}) == c);
        }
    }
}

TEST_CASE("parameter transport examples") {
    auto tau = SummabilityParams::several({{1.0, 2.0}}, {1.0, 1.0}, 2.0, 2.0);
    auto id = param_transport(Substitution::identify(2, 0, 1, 0), tau, {});
    REQUIRE(id.tau.K.size() == 1);
    REQUIRE(id.tau.K[0].size() == 1);
    CHECK(id.tau.K[0][0] == 3.0);

    auto tr = SummabilityParams::several({{2.0, 1.0}}, {1.0, 1.0}, 2.0, 2.0);
    auto ram = param_transport(Substitution::ramification(2, 0, 0, 2.0), tr, {});
    CHECK(ram.tau.K[0] == std::vector<double>{1.0, 1.0});

    auto tb = SummabilityParams::several({{1.0, 1.0}}, {1.0, 1.0}, 2.0, 2.5);
    TransportOptions o;
    o.rho0 = 0.1;
    auto bl = param_transport(Substitution::regular_blowup(2, 0, 1, 0, 1.0), tb, {}, o);
    REQUIRE(bl.tau.R.size() == 1);
    CHECK(bl.tau.R[0] == doctest::Approx(5.0 / 6));
    CHECK(bl.rho0 == 0.1);
    CHECK(bl.tau.theta > M_PI / 2);
    CHECK(bl.tau.theta < 2.5);
    // No theta' when the opening is too small.
    auto narrow = SummabilityParams::several({{1.0, 1.0}}, {1.0, 1.0}, 2.0, M_PI / 2 + 0.05);
    CHECK_THROWS_AS(param_transport(Substitution::regular_blowup(2, 0, 1, 0, 1.0), narrow, {}, o), std::domain_error);
    o.rho0 = 0.6;
    CHECK_THROWS_AS(param_transport(Substitution::regular_blowup(2, 0, 1, 0, 1.0), tb, {}, o), std::domain_error);

    auto t1 = SummabilityParams::several({{1.0}}, {5.0}, 2.0, 2.0);
    CHECK_THROWS_AS(param_transport(Substitution::translation({6.0}, {}, 3), t1, {}), std::domain_error);
    auto ok = param_transport(Substitution::translation({4.0}, {}, 3), t1, {});
    CHECK(ok.rho == std::vector<double>{1.0});
}

TEST_CASE("numeric consistency") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> re(-4, -0.5), im(-0.5, 0.5), yr(-0.08, 0.08);

    MixedSeries f(1, 0, {6.0});
    f.add_term({Exponent(0.0)}, {}, 1.0).add_term({Exponent(1.0)}, {}, 1.0);
    std::vector<ConsistencySample> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({LogPoint{LogCoord(cplx(re(rng), im(rng)))}, {}});
    auto rep = numeric_consistency(Substitution::ramification(1, 0, 0, 2.0), f, pts);
    CHECK(rep.samples == 20);
    CHECK(rep.max_discrepancy <= 1e-9);

    MixedSeries x12 = MixedSeries::x_var(0, 2, 0, {4.0, 4.0}) + MixedSeries::x_var(1, 2, 0, {4.0, 4.0});
    auto idr = numeric_consistency(Substitution::identify(2, 0, 1, 0), x12, pts);
    CHECK(idr.max_discrepancy <= 1e-9);
    MixedSeries two = apply(Substitution::identify(2, 0, 1, 0), x12);
    for (const auto& p : pts)
        CHECK(std::abs(eval(two, p.w, {}) - 2.0 * std::exp(p.w[0].value())) <= 1e-12);

    // Blow-up X_1 -> X'_0 (1 + V) on F = X_1, |v| < rho0.
    auto bs = Substitution::regular_blowup(2, 0, 1, 0, 1.0, 4);
    MixedSeries x2 = MixedSeries::x_var(1, 2, 0, {4.0, 4.0});
    std::vector<ConsistencySample> bp;
    for (int i = 0; i < 20; ++i) bp.push_back({LogPoint{LogCoord(cplx(re(rng), im(rng)))}, {cplx(yr(rng), yr(rng))}});
    CHECK(numeric_consistency(bs, x2, bp).max_discrepancy <= 1e-9);
    for (const auto& p : bp) {
        auto [w, y] = sigma_tilde(bs, p.w, p.y);
        REQUIRE(w.size() == 2);
        CHECK(std::abs(w[1].value() - (p.w[0].value() + std::log(1.0 + p.y[0]))) <= 1e-14);
    }
    // A half power goes through the binomial jet, so only the truncation error remains.
    MixedSeries h(2, 0, {4.0, 4.0});
    h.add_term({Exponent(0.0), Exponent(0.5)}, {}, 1.0);
    auto bs12 = Substitution::regular_blowup(2, 0, 1, 0, 1.0, 12);
    CHECK(numeric_consistency(bs12, h, bp).max_discrepancy <= 1e-9);

    LogRegion dom = LogRegion::disk(-5.0);
    CHECK_THROWS_AS(numeric_consistency(Substitution::ramification(1, 0, 0, 2.0), f, pts, dom), std::domain_error);
}

TEST_CASE("Weierstrass preparation") {
    const std::vector<double> xc{4.0};
    MixedSeries Y = MixedSeries::y_var(0, 1, 1, xc, 8), X = MixedSeries::x_var(0, 1, 1, xc, 8);
    MixedSeries one = MixedSeries::constant(1.0, 1, 1, xc, 8);

    auto r1 = weierstrass_prepare(Y - X, 1);
    CHECK(r1.G.same_jet(one));
    CHECK(r1.H.same_jet(Y - X));

    auto r2 = weierstrass_prepare(Y * Y + X * Y, 2);
    CHECK(r2.G.same_jet(one));
    CHECK(r2.H.same_jet(Y * Y + X * Y));

    MixedSeries sq(1, 1, xc, 8);
    sq.add_term({Exponent(0.5)}, {0}, 1.0);
    MixedSeries F = (one + Y) * (Y - sq);
    auto r3 = weierstrass_prepare(F, 1);
    CHECK(r3.H.same_jet(Y - sq));
    CHECK(r3.G.same_jet(one + Y));
    CHECK((r3.G * r3.H).same_jet(F));

    // Random regular F: G H = F and H monic of degree d.
    std::mt19937_64 rng(73);
    for (int t = 0; t < 30; ++t) {
        const unsigned d = 1 + t % 3;
        MixedSeries R = random_mixed(rng, 1, 1, xc, 8, 2, 4);
        // Kill the pure-Y part of R below degree d, then make it regular of order d.
        MixedSeries Rc(1, 1, xc, 8);
        for (const auto& [mono, c] : R.terms())
            if (mono.x[0].value > 0 || mono.y[0] > d) Rc.add_term(mono.x, mono.y, c);
        MixedSeries Fd = Rc + cplx(2.0) * power(Y, d);
        auto w = weierstrass_prepare(Fd, d);
        CHECK((w.G * w.H).same_jet(Fd, 1e-10));
        CHECK(w.H.coefficient({0.0}, {d}) == cplx(1.0));
        for (const auto& [mono, c] : w.H.terms()) {
            CHECK(mono.y[0] <= d);
            if (mono.y[0] < d) CHECK(mono.x[0].value > 0);
        }
        CHECK(std::abs(w.G.constant_term()) > 0);
    }
    CHECK_THROWS_AS(weierstrass_prepare(X, 1), std::domain_error);
    CHECK_THROWS_AS(weierstrass_prepare(MixedSeries::x_var(0, 1, 0, xc), 1), std::invalid_argument);
}

TEST_CASE("coefficient bound for powers of an admissible infinitesimal substitution") {
    // sigma(Y_j) = sum G_{j,gamma}(X') Y'^gamma with G_{j,0} = 0 and
    // ||sigma(Y_j)|| at (R', rho~) <= rho_j / 2. Then the Y'^gamma coefficient
    // of sigma(Y)^beta obeys ||H|| <= 2^{n' |gamma|} (rho/2)^beta / rho~^gamma.
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-1, 1);
    const double Rp = 0.7;
    const std::vector<double> rho{0.8, 1.3};
    const std::vector<double> rhot{0.9, 1.1};  // rho~ = 2^{n'+1} rho'
    const int deg = 6;
    auto weighted = [&](const GenSeries& g) { return norm_r(g, Rp).value; };
    for (int t = 0; t < 20; ++t) {
        std::vector<MixedSeries> tg;
        for (std::size_t j = 0; j < 2; ++j) {
            MixedSeries s(1, 2, {6.0}, deg);
            for (unsigned a = 0; a < 3; ++a)
                for (std::uint32_t g0 = 0; g0 < 3; ++g0)
                    for (std::uint32_t g1 = 0; g1 < 3; ++g1)
                        if (g0 + g1 > 0) s.add_term({Exponent(double(a))}, {g0, g1}, cplx(u(rng), u(rng)));
            double nrm = 0;
            for (const auto& [mono, c] : s.terms())
                nrm += std::abs(c) * std::pow(Rp, mono.x[0].value) * std::pow(rhot[0], mono.y[0]) *
                       std::pow(rhot[1], mono.y[1]);
            tg.push_back(cplx(rho[j] / 2 / nrm) * s);
        }
        auto sub = Substitution::infinitesimal(0, tg);
        for (std::uint32_t b0 = 0; b0 <= 2; ++b0)
            for (std::uint32_t b1 = 0; b1 <= 2; ++b1) {
                MixedSeries yb(0, 2, {}, 40);
                yb.add_term({}, {b0, b1}, 1.0);
                MixedSeries img = apply(sub, yb);
                for (std::uint32_t c0 = 0; c0 + 0 <= deg; ++c0)
                    for (std::uint32_t c1 = 0; c0 + c1 <= deg; ++c1) {
                        double h = weighted(img.y_coefficient({c0, c1}));
                        double bound = std::ldexp(1.0, 2 * int(c0 + c1)) * std::pow(rho[0] / 2, b0) *
                                       std::pow(rho[1] / 2, b1) / (std::pow(rhot[0], c0) * std::pow(rhot[1], c1));
                        CHECK(h <= bound * (1 + 1e-12));
                    }
            }
    }
}

TEST_CASE("combinatorial counts") {
    CHECK(count_compositions({2}, 2) == 1);
    CHECK(count_compositions_any({3}) == 4);
    CHECK(count_multi_indices(3, 2) == 6);
    CHECK(count_multi_indices(2, 0) == 1);

    // Brute force over N^n.
    for (unsigned n = 1; n <= 3; ++n)
        for (unsigned k = 1; k <= 8; ++k) {
            std::uint64_t brute = 0;
            std::vector<unsigned> b(n, 0);
            std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
                if (i + 1 == n) {
                    ++brute;
                    return;
                }
                for (unsigned v = 0; v <= left; ++v) rec(i + 1, left - v);
            };
            rec(0, k);
            CHECK(count_multi_indices(n, k) == brute);
            // k^n only holds from k = 2 on (at k = 1 there are n unit vectors);
            // (k+1)^n always holds and keeps sum_k (k+1)^n / 2^k finite.
            CHECK(double(brute) <= std::pow(double(k + 1), double(n)));
            if (k >= 2 || n == 1) CHECK(double(brute) <= std::pow(double(k), double(n)));
            else CHECK(brute == n);
        }

    // Compositions of gamma by recursion over the first part.
    std::function<std::uint64_t(std::vector<unsigned>, unsigned)> comp = [&](std::vector<unsigned> g,
                                                                           unsigned k) -> std::uint64_t {
        bool zero = true;
        for (unsigned v : g) zero = zero && v == 0;
        if (k == 0) return zero ? 1 : 0;
        std::uint64_t total = 0;
        std::vector<unsigned> part(g.size(), 0);
        std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool nonzero) {
            if (i == g.size()) {
                if (!nonzero) return;
                std::vector<unsigned> rest(g.size());
                for (std::size_t q = 0; q < g.size(); ++q) rest[q] = g[q] - part[q];
                total += comp(rest, k - 1);
                return;
            }
            for (unsigned v = 0; v <= g[i]; ++v) {
                part[i] = v;
                rec(i + 1, nonzero || v > 0);
            }
        };
        rec(0, false);
        return total;
    };
    for (unsigned n = 1; n <= 3; ++n) {
        std::vector<std::vector<unsigned>> gammas;
        std::vector<unsigned> g(n, 0);
        std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
            if (i == n) {
                unsigned s = 0;
                for (unsigned v : g) s += v;
                if (s > 0) gammas.push_back(g);
                return;
            }
            for (unsigned v = 0; v <= left; ++v) {
                g[i] = v;
                rec(i + 1, left - v);
            }
        };
        rec(0, n == 3 ? 4 : 6);
        for (const auto& gm : gammas) {
            unsigned s = 0;
            for (unsigned v : gm) s += v;
            std::uint64_t any = 0;
            for (unsigned k = 1; k <= s; ++k) {
                std::uint64_t c = comp(gm, k);
                CHECK(count_compositions(gm, k) == c);
                any += c;
            }
            CHECK(count_compositions(gm, s + 1) == 0);
            CHECK(count_compositions_any(gm) == any);
            CHECK(double(any) <= std::ldexp(1.0, int(n * s)));
        }
    }
}

TEST_CASE("real binomial") {
    CHECK(real_binomial(0.5, 0) == 1.0);
    CHECK(real_binomial(0.5, 1) == 0.5);
    CHECK(real_binomial(0.5, 2) == -0.125);
    CHECK(real_binomial(0.5, 3) == 1.0 / 16);
    CHECK(real_binomial(5.0, 2) == 10.0);
    CHECK(real_binomial(3.0, 5) == 0.0);
    CHECK(real_binomial(-1.0, 4) == 1.0);
}
