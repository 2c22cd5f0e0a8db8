#include "gps/demos.hpp"

#include <cmath>
#include <stdexcept>

namespace gps {

std::vector<double> bernoulli_even(std::size_t count) {
    // B_{2n} = (-1)^{n+1} 2 (2n)! zeta(2n) / (2 pi)^{2n}, zeta(2n) by a partial
    // sum with Euler-Maclaurin tail (exact to rounding for 2n >= 4). B_2 = 1/6.
    std::vector<double> out;
    for (std::size_t n = 1; n <= count; ++n) {
        if (n == 1) {
            out.push_back(1.0 / 6.0);
            continue;
        }
        const double s = 2.0 * n;
        double z = 0.0;
        const double N = 2000.0;
        z = std::pow(N, 1 - s) / (s - 1) - 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1) / 12;
        for (int k = 2000; k >= 1; --k) z += std::pow(static_cast<double>(k), -s);
        double lg = std::lgamma(s + 1.0) - s * std::log(2 * M_PI);
        out.push_back((n % 2 ? 1.0 : -1.0) * 2.0 * z * std::exp(lg));
    }
    return out;
}

GenSeries stirling_series(std::size_t terms) {
    auto b = bernoulli_even(terms);
    GenSeries f(1, {2.0 * terms - 1.0}, {SupportDescriptor::arithmetic(1.0)});
    for (std::size_t n = 1; n <= terms; ++n) {
        double k = 2.0 * n;
        f.add_term(Exponent::rational(static_cast<std::int64_t>(2 * n - 1), 1), b[n - 1] / (k * (k - 1)));
    }
    return f;
}

LogFunction binet_borel_sum() {
    LogFunction g;
    g.domain = LogRegion::sector(0.0, kInf, 1.5);
    g.eval = [](cplx eta) -> cplx {
        cplx z = std::exp(eta);
        if (std::abs(z) < 0.1) {
            // z/12 - z^3/720 + z^5/30240 - z^7/1209600
            cplx z2 = z * z;
            return z * (1.0 / 12 + z2 * (-1.0 / 720 + z2 * (1.0 / 30240 - z2 / 1209600.0)));
        }
        if (z.real() > 700) return 0.5 - 1.0 / z;
        return 1.0 / (std::exp(z) - 1.0) - 1.0 / z + 0.5;
    };
    // On the positive axis 0 < g(t) < min(1/2, t/12).
    g.growth = GrowthCertificate{0.5, 0.0, 1.0};
    g.flatness = FlatnessCertificate{1.0 / 12, 1.0, kInf};
    return g;
}

DemoValue log_gamma(double x, const QuadOptions& q) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma: x must be positive");
    if (x < 1.0) {
        DemoValue v = log_gamma(x + 1.0, q);
        v.value -= std::log(x);
        return v;
    }
    static const LogFunction g = binet_borel_sum();
    LaplaceOptions o;
    o.quad = q;
    o.quad.rel_tol = std::min(o.quad.rel_tol, 1e-12);
    QuadratureResult mu = log_laplace(g, cplx(-std::log(x), 0.0), o);
    DemoValue v;
    v.value = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2 * M_PI) + mu.value.real();
    v.error = mu.total_error() + 4e-16 * (std::abs(v.value) + x * std::abs(std::log(x)) + x);
    v.certified = mu.certified;
    return v;
}

DemoValue zeta_sum(double s, std::size_t N) {
    if (!(s > 1.0)) throw std::domain_error("zeta_sum: needs s > 1");
    if (N < 2) throw std::invalid_argument("zeta_sum: needs N >= 2");
    double sum = 0.0;
    for (std::size_t n = N; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    // sum_{n > N} n^{-s} = N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12 - ...; the
    // terms alternate in sign and decrease, so the next one bounds the rest.
    const double Nd = static_cast<double>(N);
    double tail = std::pow(Nd, 1 - s) / (s - 1) - 0.5 * std::pow(Nd, -s) + s * std::pow(Nd, -s - 1) / 12;
    DemoValue v;
    v.value = sum + tail;
    v.error = s * (s + 1) * (s + 2) * std::pow(Nd, -s - 3) / 720 + 64 * 1.1e-16 * v.value;
    return v;
}

GenSeries zeta_series(std::size_t N) {
    GenSeries f(1, {std::log(static_cast<double>(N))}, {SupportDescriptor::log_integers()});
    for (std::size_t n = 1; n <= N; ++n) f.add_term(Exponent::log_of(static_cast<std::int64_t>(n)), 1.0);
    // sum_{n > N} e^{-2 log n} < 1/N.
    return f.with_tail(TailBound::at(1, std::exp(-2.0), 1.0 / N));
}

GenSeries euler_series(std::size_t terms) {
    GenSeries f(1, {static_cast<double>(terms)}, {SupportDescriptor::arithmetic(1.0)});
    double fact = 1.0;
    for (std::size_t n = 0; n < terms; ++n) {
        if (n) fact *= static_cast<double>(n);
        f.add_term(Exponent::rational(static_cast<std::int64_t>(n + 1), 1), (n % 2 ? -1.0 : 1.0) * fact);
    }
    return f;
}

}  // namespace gps
