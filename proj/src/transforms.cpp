#include "gps/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gps/kernels.hpp"

namespace gps {

namespace {

const cplx kI(0.0, 1.0);

// Half-opening of a one-variable domain around direction 0 (inf for disks).
double domain_angle(const LogRegion& g) {
    switch (g.kind()) {
        case LogRegion::Kind::disk: return kInf;
        case LogRegion::Kind::sector: return g.half_angle();
        default: throw std::invalid_argument("transforms need a log-disk or log-sector domain, got " + g.describe());
    }
}

LogRegion scale_domain(const LogRegion& g, double lambda) {
    switch (g.kind()) {
        case LogRegion::Kind::disk: return LogRegion::disk(g.log_radius(0) / lambda);
        case LogRegion::Kind::sector:
            return LogRegion::sector(g.direction() / lambda, g.log_radius(0) / lambda, g.half_angle() / lambda);
        default: throw std::invalid_argument("cannot ramify domain " + g.describe());
    }
}

cplx logsum_value(const TermMap& t, cplx w) { return kernels::logsum_at(t, LogPoint{LogCoord(w)}); }

// Exponents that are all multiples of one step s: Horner in e^{s w}, one
// complex exp per call instead of one per term.
std::function<cplx(cplx)> logsum_evaluator(const TermMap& t) {
    double step = kInf;
    for (const auto& [m, c] : t)
        if (m.x[0].value > 0.0) step = std::min(step, m.x[0].value);
    if (std::isfinite(step)) {
        std::vector<cplx> dense;
        bool ok = true;
        for (const auto& [m, c] : t) {
            const double k = m.x[0].value / step;
            const double kr = std::round(k);
            if (std::abs(k - kr) > 1e-9 * std::max(1.0, k) || kr > 4096) {
                ok = false;
                break;
            }
            if (dense.size() <= static_cast<std::size_t>(kr)) dense.resize(static_cast<std::size_t>(kr) + 1, 0.0);
            dense[static_cast<std::size_t>(kr)] += c;
        }
        if (ok)
            return [dense = std::move(dense), step](cplx w) {
                const cplx z = std::exp(step * w);
                cplx acc = 0.0;
                for (auto it = dense.rbegin(); it != dense.rend(); ++it) acc = acc * z + *it;
                return acc;
            };
    }
    auto terms = std::make_shared<const TermMap>(t);
    return [terms](cplx w) { return logsum_value(*terms, w); };
}

}  // namespace

GrowthCertificate exp_poly_growth(const std::vector<std::pair<double, double>>& terms, double D) {
    if (!(D > 0.0)) throw std::invalid_argument("exponential-sum growth needs D > 0");
    GrowthCertificate g{0.0, D, 1.0};
    // max over x of beta x - D e^x is beta log(beta/D) - beta.
    for (auto [a, beta] : terms) g.C += beta > 0.0 ? a * std::exp(beta * std::log(beta / (D * M_E))) : a;
    return g;
}

LogFunction LogFunction::power(double alpha, cplx coefficient) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("power needs alpha >= 0");
    LogFunction f;
    f.eval = [alpha, coefficient](cplx w) { return coefficient * std::exp(alpha * w); };
    f.exp_poly = std::vector<std::pair<double, double>>{{std::abs(coefficient), alpha}};
    f.flatness = FlatnessCertificate{std::abs(coefficient), alpha, kInf};
    return f;
}

LogFunction LogFunction::log_sum(const GenSeries& series, std::optional<double> radius) {
    if (series.nvars() != 1) throw std::invalid_argument("log_sum needs a one-variable series");
    LogFunction f;
    f.eval = logsum_evaluator(series.terms());
    const double alpha = series.is_zero() ? 1.0 : ord(series);
    if (series.is_exact() && !radius) {
        std::vector<std::pair<double, double>> ep;
        double total = 0.0;
        for (const auto& [m, c] : series.terms()) {
            ep.emplace_back(std::abs(c), m.x[0].value);
            total += std::abs(c);
        }
        f.exp_poly = ep;
        // e^{beta s} <= e^{alpha s} for s <= 0.
        f.flatness = FlatnessCertificate{total, alpha, 0.0};
        return f;
    }
    const auto& tail = series.tail();
    double r = 0.0;
    if (radius) r = *radius;
    else if (tail && !tail->exact()) r = tail->radius[0];
    else throw std::invalid_argument("log_sum of a truncated series needs a radius");
    if (!(r > 0.0)) throw std::invalid_argument("log_sum radius must be > 0");
    f.domain = LogRegion::disk(std::log(r));
    CertifiedReal norm = norm_r(series, r);
    f.growth = GrowthCertificate{norm.value, 0.0, 1.0};
    f.flatness = FlatnessCertificate{norm.value / std::pow(r, alpha), alpha, std::log(r)};
    if (tail && (tail->exact() || tail->radius[0] >= r)) {
        TailBound t = *tail;
        double cut = series.cutoff()[0];
        f.eval_error = [t, cut](cplx w) {
            if (t.exact()) return 0.0;
            // Sum above the cutoff of |a| rho^alpha <= (rho/R)^cut * bound.
            return t.bound * std::exp(cut * (w.real() - std::log(t.radius[0])));
        };
    } else {
        f.certified = false;
    }
    return f;
}

LogFunction ramify(const LogFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ramification needs lambda > 0");
    LogFunction g;
    g.domain = scale_domain(f.domain, lambda);
    auto inner = f.eval;
    g.eval = [inner, lambda](cplx w) { return inner(lambda * w); };
    if (f.eval_error) {
        auto err = f.eval_error;
        g.eval_error = [err, lambda](cplx w) { return err(lambda * w); };
    }
    if (f.growth) g.growth = GrowthCertificate{f.growth->C, f.growth->D, f.growth->q * lambda};
    if (f.flatness) g.flatness = FlatnessCertificate{f.flatness->C, f.flatness->alpha * lambda, f.flatness->edge / lambda};
    if (f.exp_poly) {
        auto ep = *f.exp_poly;
        for (auto& [a, beta] : ep) beta *= lambda;
        g.exp_poly = ep;
    }
    g.certified = f.certified;
    return g;
}

LogFunction operator+(const LogFunction& f, const LogFunction& g) {
    LogFunction h;
    double rf = f.domain.log_radius(0), rg = g.domain.log_radius(0);
    double af = domain_angle(f.domain), ag = domain_angle(g.domain);
    double r = std::min(rf, rg), a = std::min(af, ag);
    h.domain = std::isinf(a) ? LogRegion::disk(r) : LogRegion::sector(0.0, r, a);
    auto fe = f.eval, ge = g.eval;
    h.eval = [fe, ge](cplx w) { return fe(w) + ge(w); };
    if (f.eval_error || g.eval_error) {
        auto ef = f.eval_error, eg = g.eval_error;
        h.eval_error = [ef, eg](cplx w) { return (ef ? ef(w) : 0.0) + (eg ? eg(w) : 0.0); };
    }
    if (f.exp_poly && g.exp_poly) {
        auto ep = *f.exp_poly;
        ep.insert(ep.end(), g.exp_poly->begin(), g.exp_poly->end());
        h.exp_poly = ep;
    } else if (f.growth && g.growth) {
        h.growth = GrowthCertificate{f.growth->C + g.growth->C, std::max(f.growth->D, g.growth->D),
                                     std::max(f.growth->q, g.growth->q)};
    }
    if (f.flatness && g.flatness) {
        // For Re w <= min(edges, 0), e^{alpha_i Re w} <= e^{alpha Re w}.
        h.flatness = FlatnessCertificate{f.flatness->C + g.flatness->C,
                                         std::min(f.flatness->alpha, g.flatness->alpha),
                                         std::min({f.flatness->edge, g.flatness->edge, 0.0})};
    }
    h.certified = f.certified && g.certified;
    return h;
}

LogFunction operator*(cplx c, const LogFunction& f) {
    LogFunction h = f;
    auto fe = f.eval;
    h.eval = [fe, c](cplx w) { return c * fe(w); };
    const double a = std::abs(c);
    if (f.eval_error) {
        auto e = f.eval_error;
        h.eval_error = [e, a](cplx w) { return a * e(w); };
    }
    if (h.exp_poly)
        for (auto& [m, beta] : *h.exp_poly) m *= a;
    if (h.growth) h.growth->C *= a;
    if (h.flatness) h.flatness->C *= a;
    return h;
}

QuadratureResult log_borel(const LogFunction& f, cplx w, const BorelOptions& o) {
    const double d = o.contour.d;
    const double dom_r = f.domain.log_radius(0);
    const double dom_theta = domain_angle(f.domain);
    double theta = o.contour.theta ? *o.contour.theta
                                   : (std::isinf(dom_theta) ? M_PI : std::min(M_PI, 0.5 * (dom_theta + M_PI / 2)));
    if (!(theta > M_PI / 2) || !(theta <= M_PI))
        throw std::invalid_argument("Borel contour opening must lie in (pi/2, pi]");
    if (!std::isinf(dom_theta) && !(theta < dom_theta))
        throw std::invalid_argument("Borel contour not inside the domain: opening " + std::to_string(theta) +
                                    " >= domain opening " + std::to_string(dom_theta));
    const double im = w.imag() - d;
    if (!(std::abs(im) < theta - M_PI / 2))
        throw std::invalid_argument("w outside the image sector of the Borel contour");
    double rp;
    if (o.contour.r) {
        rp = *o.contour.r;
        if (!(rp < dom_r)) throw std::invalid_argument("Borel contour not inside the domain: r' >= domain log-radius");
    } else {
        rp = std::isfinite(dom_r) ? std::min(dom_r - 0.1, w.real()) : w.real();
    }

    const double c_low = std::cos(im + theta), c_up = std::cos(im - theta);
    const double c = std::max(c_low, c_up);  // < 0 by the image-sector condition
    double s0 = std::min(w.real() - std::log(o.decay / -c), rp - 1.0);

    QuadratureResult res;
    const bool with_err = static_cast<bool>(f.eval_error);
    auto kernel = [&](cplx eta) {
        cplx z = w - eta;
        return std::exp(z + std::exp(z));
    };
    auto sample = [&](cplx eta, cplx jac) {
        cplx k = kernel(eta) * jac;
        QuadSample s{k * f.eval(eta), 0.0};
        if (with_err) s.aux = std::abs(k) * f.eval_error(eta);
        return s;
    };
    const double lo = d - theta, hi = d + theta;
    Integrand lower = [&](double s) { return sample(cplx(s, lo), 1.0); };
    Integrand upper = [&](double s) { return sample(cplx(s, hi), 1.0); };
    Integrand vertical = [&](double t) { return sample(cplx(rp, t), kI); };

    QuadOutcome a = integrate(lower, s0, rp, o.quad, 1.0);
    QuadOutcome b = integrate(vertical, lo, hi, o.quad, 0.5);
    QuadOutcome u = integrate(upper, s0, rp, o.quad, 1.0);
    const double two_pi = 2.0 * M_PI;
    res.value = (a.value + b.value - u.value) / (two_pi * kI);
    res.abs_error_estimate = (a.error + b.error + u.error + a.aux + b.aux + u.aux) / two_pi;
    res.panels = a.panels + b.panels + u.panels;

    // |f| on the dropped rays Re eta < s0.
    double M;
    if (f.flatness && s0 <= f.flatness->edge) M = f.flatness->C * std::exp(f.flatness->alpha * s0);
    else if (f.growth) M = f.growth->C * std::exp(f.growth->D * std::exp(f.growth->q * s0));
    else if (f.exp_poly) {
        M = 0.0;
        for (auto [m, beta] : *f.exp_poly) M += m * std::exp(beta * s0);
    } else {
        M = 2.0 * std::max(std::abs(f.eval(cplx(s0, lo))), std::abs(f.eval(cplx(s0, hi))));
        res.certified = false;
        res.note = "no certificate for |f| on the contour tails; sampled";
    }
    res.truncation_bound = 2.0 * M * std::exp(-o.decay) / (two_pi * -c);
    res.certified = res.certified && f.certified && a.converged && b.converged && u.converged;
    return res;
}

QuadratureResult log_laplace(const LogFunction& f, cplx w, const LaplaceOptions& o) {
    const double d = o.d;
    const double cw = std::cos(w.imag() - d);
    if (!(cw > 0.0)) throw std::invalid_argument("Laplace needs |Im w - d| < pi/2");
    // Re e^{eta - w} = e^s * a on the line Im eta = d.
    const double a = std::exp(-w.real()) * cw;
    const double dom_r = f.domain.log_radius(0);
    const double L2max = std::isfinite(dom_r) ? dom_r - o.edge_margin : kInf;
    if (!std::isinf(domain_angle(f.domain)) && !(std::abs(d - f.domain.direction()) < domain_angle(f.domain)))
        throw std::invalid_argument("Laplace line not inside the domain");

    GrowthCertificate g;
    if (f.exp_poly) g = exp_poly_growth(*f.exp_poly, 0.5 * a);
    else if (f.growth) g = *f.growth;
    else throw std::invalid_argument("log_laplace: missing growth certificate");

    auto right_tail = [&](double L2) {
        if (std::isinf(L2)) return 0.0;
        double Deff = g.D * std::exp((g.q - 1.0) * L2);
        double X = std::exp(L2) * (a - Deff);
        if (!(X > 0.0)) return kInf;
        return g.C * std::exp(-X) / X;
    };
    double L2;
    if (o.L2) L2 = *o.L2;
    else {
        const double target = 40.0 + std::log(std::max(g.C, 1.0));
        L2 = a > g.D ? std::log(target / (a - g.D)) : L2max;
        for (int i = 0; i < 40 && right_tail(L2) > 1e-17 && L2 < L2max; ++i) L2 += 0.5;
        L2 = std::min(L2, L2max);
    }
    if (L2 > L2max) throw std::invalid_argument("Laplace right end beyond the domain");

    FlatnessCertificate fl;
    if (f.flatness) fl = *f.flatness;
    else throw std::invalid_argument("log_laplace: missing flatness certificate (integral at -inf)");
    if (!(fl.alpha > 0.0)) throw std::invalid_argument("log_laplace: f must vanish at -inf (flatness order > 0)");
    double s1;
    if (o.L1) s1 = -*o.L1;
    else s1 = std::log(1e-17 * fl.alpha / std::max(fl.C, 1e-300)) / fl.alpha;
    s1 = std::min({s1, fl.edge, L2 - 1.0});

    QuadratureResult res;
    const bool with_err = static_cast<bool>(f.eval_error);
    Integrand h = [&](double s) {
        cplx eta(s, d);
        cplx k = std::exp(-std::exp(eta - w));
        QuadSample q{k * f.eval(eta), 0.0};
        if (with_err) q.aux = std::abs(k) * f.eval_error(eta);
        return q;
    };
    QuadOutcome out = integrate(h, s1, L2, o.quad, 4.0);
    res.value = out.value;
    res.abs_error_estimate = out.error + out.aux;
    res.panels = out.panels;
    const double left = fl.C * std::exp(fl.alpha * s1) / fl.alpha;
    res.truncation_bound = left + right_tail(L2);
    res.certified = f.certified && out.converged && std::isfinite(res.truncation_bound);
    if (res.truncation_bound > o.max_truncation)
        throw std::runtime_error("Laplace truncation bound " + std::to_string(res.truncation_bound) +
                                 " above tolerance");
    return res;
}

QuadratureResult log_borel_lambda(const LogFunction& f, double lambda, cplx w, const BorelOptions& o) {
    return log_borel(ramify(f, lambda), w / lambda, o);
}

QuadratureResult log_laplace_lambda(const LogFunction& f, double lambda, cplx w, const LaplaceOptions& o) {
    return log_laplace(ramify(f, lambda), w / lambda, o);
}

double borel_sup_bound(double norm, double theta, double theta_prime, double r, double r_prime) {
    if (!(M_PI / 2 < theta_prime && theta_prime < theta))
        throw std::invalid_argument("borel_sup_bound needs pi/2 < theta' < theta");
    const double C = std::sin(0.5 * (theta - theta_prime));
    if (r <= r_prime) return norm / C * M_E;
    const double t = r - r_prime;
    return norm / C * std::exp(std::exp(t) + t);
}

}  // namespace gps
