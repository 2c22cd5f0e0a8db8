#include "gps/resummation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gps/special.hpp"

namespace gps {

double TougeronDecomposition::F_norm_sum() const {
    double s = 0.0, rp = 1.0;
    for (const auto& p : pieces) {
        s += p.F_norm * rp;
        rp *= tau.r;
    }
    return s + tail_F;
}

double TougeronDecomposition::f_norm_sum() const {
    double s = 0.0, rp = 1.0;
    for (const auto& p : pieces) {
        s += p.f_norm * rp;
        rp *= tau.r;
    }
    return s + tail_f;
}

cplx TougeronDecomposition::sum(cplx w) const {
    cplx s = 0.0;
    for (const auto& p : pieces) s += p.f.eval(w);
    return s;
}

GenSeries assemble_T(const TougeronDecomposition& d, double cutoff) {
    if (d.pieces.empty()) return GenSeries(d.tau.m(), std::vector<double>(d.tau.m(), cutoff));
    const std::size_t m = d.pieces.front().F.nvars();
    std::vector<double> cut(m, cutoff);
    for (const auto& p : d.pieces) {
        if (p.F.nvars() != m) throw std::invalid_argument("decomposition pieces have different arity");
        if (!std::isfinite(p.F_norm)) throw std::invalid_argument("decomposition has an uncertified piece norm");
        for (std::size_t i = 0; i < m; ++i) cut[i] = std::min(cut[i], p.F.cutoff()[i]);
    }
    GenSeries out(m, cut);
    JetBox box{cut, -1};
    for (const auto& p : d.pieces)
        for (const auto& [mono, c] : p.F.terms())
            if (box.inside(mono)) accumulate(out.mutable_terms(), mono, c);
    return out.with_tail(std::nullopt);
}

double decomposition_norm(const TougeronDecomposition& d) { return std::max(d.F_norm_sum(), d.f_norm_sum()); }

TougeronDecomposition scale(const TougeronDecomposition& d, cplx c) {
    TougeronDecomposition out = d;
    const double a = std::abs(c);
    for (auto& p : out.pieces) {
        p.F = scale(p.F, c);
        p.f = c * p.f;
        p.F_norm *= a;
        p.f_norm *= a;
    }
    out.tail_F *= a;
    out.tail_f *= a;
    out.tail_value *= a;
    return out;
}

TougeronDecomposition product_decomposition(const TougeronDecomposition& a, const TougeronDecomposition& b) {
    if (a.pieces.empty() || b.pieces.empty()) throw std::invalid_argument("empty decomposition");
    TougeronDecomposition out;
    out.tau = a.tau;
    const std::size_t P = a.pieces.size() + b.pieces.size() - 1;
    for (std::size_t p = 0; p < P; ++p) {
        TougeronPiece piece;
        bool first = true;
        std::vector<std::pair<LogFunction, LogFunction>> pairs;
        for (std::size_t i = 0; i < a.pieces.size(); ++i) {
            if (p < i || p - i >= b.pieces.size()) continue;
            const auto& x = a.pieces[i];
            const auto& y = b.pieces[p - i];
            GenSeries prod = mul(x.F, y.F);
            piece.F = first ? prod : add(piece.F, prod);
            first = false;
            // rho_p <= rho_i, rho_j, so the factor norms only shrink.
            piece.F_norm += x.F_norm * y.F_norm;
            piece.f_norm += x.f_norm * y.f_norm;
            pairs.emplace_back(x.f, y.f);
        }
        auto shared = std::make_shared<const std::vector<std::pair<LogFunction, LogFunction>>>(std::move(pairs));
        piece.f.eval = [shared](cplx w) {
            cplx s = 0.0;
            for (const auto& [f, g] : *shared) s += f.eval(w) * g.eval(w);
            return s;
        };
        out.pieces.push_back(std::move(piece));
    }
    double fa = 0.0, fb = 0.0;
    for (const auto& p : a.pieces) fa += p.f_norm;
    for (const auto& p : b.pieces) fb += p.f_norm;
    const double A = a.F_norm_sum() - a.tail_F, B = b.F_norm_sum() - b.tail_F;
    out.tail_F = a.tail_F * (B + b.tail_F) + A * b.tail_F;
    out.tail_f = a.tail_f * b.f_norm_sum() + (a.f_norm_sum() - a.tail_f) * b.tail_f;
    out.tail_value = a.tail_value * (fb + b.tail_value) + fa * b.tail_value;
    return out;
}

TougeronDecomposition direct_sum(const TougeronDecomposition& a, const TougeronDecomposition& b) {
    TougeronDecomposition out;
    out.tau = a.tau;
    const std::size_t P = std::max(a.pieces.size(), b.pieces.size());
    for (std::size_t p = 0; p < P; ++p) {
        if (p >= a.pieces.size()) out.pieces.push_back(b.pieces[p]);
        else if (p >= b.pieces.size()) out.pieces.push_back(a.pieces[p]);
        else {
            TougeronPiece piece;
            piece.F = add(a.pieces[p].F, b.pieces[p].F);
            piece.f = a.pieces[p].f + b.pieces[p].f;
            piece.F_norm = a.pieces[p].F_norm + b.pieces[p].F_norm;
            piece.f_norm = a.pieces[p].f_norm + b.pieces[p].f_norm;
            out.pieces.push_back(std::move(piece));
        }
    }
    out.tail_F = a.tail_F + b.tail_F;
    out.tail_f = a.tail_f + b.tail_f;
    out.tail_value = a.tail_value + b.tail_value;
    return out;
}

TougeronDecomposition perturbed(const TougeronDecomposition& d, std::size_t p, double alpha, cplx c) {
    TougeronDecomposition out = d;
    auto& piece = out.pieces.at(p);
    GenSeries bump(piece.F.nvars(), piece.F.cutoff());
    bump.add_term(std::vector<Exponent>(piece.F.nvars(), Exponent(alpha)), c);
    piece.F = add(piece.F, bump.with_tail(TailBound::exact_tail(piece.F.nvars())));
    return out;
}

TougeronDecomposition with_extra_piece(const TougeronDecomposition& d, const GenSeries& G) {
    TougeronDecomposition out = d;
    TougeronPiece piece;
    piece.F = G;
    piece.f = LogFunction::log_sum(G);
    const double rho = rho_p(d.tau, out.pieces.size())[0];
    piece.F_norm = norm_r(G, rho).value;
    // Sup over S^tau_p is at most the norm at R (|e^w| <= R on the sector part).
    piece.f_norm = norm_r(G, std::max(rho, d.tau.R[0])).value;
    out.pieces.push_back(std::move(piece));
    return out;
}

TougeronDecomposition telescoped(const TougeronDecomposition& d, const std::vector<GenSeries>& g) {
    const std::size_t P = d.pieces.size();
    if (g.size() + 1 != P) throw std::invalid_argument("telescoping needs one correction per piece but the last");
    TougeronDecomposition out = d;
    for (std::size_t p = 0; p < P; ++p) {
        auto& piece = out.pieces[p];
        double extra_F = 0.0, extra_f = 0.0;
        const double rho = rho_p(d.tau, p)[0];
        const double sup_r = std::max(rho, d.tau.R[0]);
        if (p < g.size()) {
            piece.F = add(piece.F, g[p]);
            piece.f = piece.f + LogFunction::log_sum(g[p]);
            extra_F += norm_r(g[p], rho).value;
            extra_f += norm_r(g[p], sup_r).value;
        }
        if (p > 0) {
            piece.F = sub(piece.F, g[p - 1]);
            piece.f = piece.f + cplx(-1.0) * LogFunction::log_sum(g[p - 1]);
            extra_F += norm_r(g[p - 1], rho).value;
            extra_f += norm_r(g[p - 1], sup_r).value;
        }
        piece.F_norm += extra_F;
        piece.f_norm += extra_f;
    }
    return out;
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept = nullptr) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    double s = sxx > 0.0 ? sxy / sxx : 0.0;
    if (intercept) *intercept = my - s * mx;
    return s;
}

}  // namespace

GevreyReport gevrey_check(const TougeronDecomposition& d, const LogRegion& subsector, const std::vector<double>& betas,
                          const std::vector<cplx>& w_grid) {
    if (d.tau.m() != 1) throw std::invalid_argument("gevrey_check is one-variable");
    const LogRegion sector = tau_sector(d.tau);
    for (cplx w : w_grid)
        if (!subsector.contains(LogCoord(w)) || !sector.contains(LogCoord(w)))
            throw std::invalid_argument("w-grid leaves the subsector");
    const GenSeries T = assemble_T(d);
    const double MK = d.tau.M_K();
    std::vector<cplx> g(w_grid.size());
    for (std::size_t i = 0; i < w_grid.size(); ++i) g[i] = d.sum(w_grid[i]);

    GevreyReport rep;
    std::vector<double> fit_b, fit_q;
    for (double beta : betas) {
        if (beta > T.cutoff()[0] + kMergeTolerance)
            throw std::invalid_argument("beta " + std::to_string(beta) + " beyond the series cutoff");
        GevreyRow row;
        row.beta = beta;
        const double gam = (MK == 0.0 || beta == 0.0) ? 1.0 : gamma_fn(beta * MK);
        std::vector<std::pair<double, double>> pts;  // (Re w, log ratio)
        for (std::size_t i = 0; i < w_grid.size(); ++i) {
            cplx partial = 0.0;
            for (const auto& [m, c] : T.terms())
                if (exponent_less(m.x[0].value, beta)) partial += c * std::exp(m.x[0].value * w_grid[i]);
            const double rem = std::abs(g[i] - partial);
            if (rem < 1e-13 * std::max(std::abs(g[i]), 1e-300)) continue;
            const double ratio = rem / (gam * std::exp(beta * w_grid[i].real()));
            pts.emplace_back(w_grid[i].real(), std::log(ratio));
            row.q = std::max(row.q, ratio);
        }
        row.used = pts.size();
        std::sort(pts.begin(), pts.end());
        const std::size_t third = std::max<std::size_t>(2, pts.size() / 3);
        if (pts.size() >= 2) {
            std::vector<double> x, y;
            for (std::size_t i = 0; i < std::min(third, pts.size()); ++i) {
                x.push_back(pts[i].first);
                y.push_back(pts[i].second);
            }
            row.left_slope = least_squares_slope(x, y);
            // The ratio must stay bounded as Re w -> -inf.
            if (row.left_slope < -0.5) row.ok = false;
        }
        if (!row.ok && !rep.failed_beta) rep.failed_beta = beta;
        rep.ok = rep.ok && row.ok;
        if (row.q > 0.0) {
            fit_b.push_back(beta);
            fit_q.push_back(std::log(row.q));
        }
        rep.rows.push_back(row);
    }
    if (rep.ok && !fit_b.empty()) {
        double logE = fit_b.size() >= 2 ? least_squares_slope(fit_b, fit_q) : 0.0;
        double logD = -kInf;
        for (std::size_t i = 0; i < fit_b.size(); ++i) logD = std::max(logD, fit_q[i] - fit_b[i] * logE);
        rep.E = std::exp(logE);
        rep.D = std::exp(logD);
    }
    std::ostringstream os;
    if (rep.ok) os << "Gevrey bound holds with D=" << rep.D << " E=" << rep.E;
    else os << "remainder not O(e^{beta w}) at beta=" << *rep.failed_beta;
    rep.message = os.str();
    return rep;
}

double max_admissible_R(const SummabilityParams& tau, double lambda, double r_prime) {
    return tau.R.at(0) * std::pow(std::log(tau.r / r_prime) / M_E, lambda);
}

SummabilityParams borel_param_update(const SummabilityParams& tau, double lambda, double r_prime, double R_prime) {
    tau.validate();
    if (tau.convention != SummabilityParams::Convention::one_variable)
        throw std::invalid_argument("borel_param_update is one-variable");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (tau.mu_K() < lambda)
        throw std::domain_error("mu_K = " + std::to_string(tau.mu_K()) + " < lambda = " + std::to_string(lambda));
    if (!(r_prime > 1.0 && r_prime < tau.r)) throw std::domain_error("r' must lie in (1, r)");
    if (!(R_prime > 0.0)) throw std::domain_error("R' must be > 0");
    const double lhs = std::pow(R_prime, 1.0 / lambda);
    const double rhs = std::pow(tau.R[0], 1.0 / lambda) / M_E * std::log(tau.r / r_prime);
    if (lhs > rhs)
        throw std::domain_error("R' = " + std::to_string(R_prime) + " too large; largest admissible R' is " +
                                std::to_string(max_admissible_R(tau, lambda, r_prime)));
    std::vector<double> K;
    for (const auto& k : tau.K)
        if (k[0] > lambda) K.push_back(k[0] - lambda);
    if (K.empty()) K.push_back(0.0);
    return SummabilityParams::one_variable(K, R_prime, r_prime, tau.theta, tau.delta.empty() ? SupportDescriptor::arithmetic(1.0) : tau.delta[0]);
}

double estimate_log_radius(const GenSeries& f) {
    if (f.nvars() != 1) throw std::invalid_argument("radius estimate is one-variable");
    if (f.is_exact()) return kInf;
    std::vector<double> x, y;
    for (const auto& [m, c] : f.terms()) {
        x.push_back(m.x[0].value);
        y.push_back(std::log(std::abs(c)));
    }
    if (x.size() < 2) throw std::runtime_error("radius estimation needs at least two stored terms");
    const std::size_t n = std::min(x.size(), std::max<std::size_t>(5, x.size() / 10));
    std::vector<double> xs(x.end() - static_cast<long>(n), x.end()), ys(y.end() - static_cast<long>(n), y.end());
    return -least_squares_slope(xs, ys);
}

namespace {

// The quadrature asks for a sample's error right after its value, at the
// same point and on the same thread; the slot spares a second integral.
struct LevelSlot {
    const void* tag = nullptr;
    cplx eta;
    double err = 0.0;
};
thread_local LevelSlot level_slot;

// h = L^kappa(inner), certificates derived from the inner ones (see below).
LogFunction laplace_level(const LogFunction& inner, double kappa, const QuadOptions& quad) {
    auto in = std::make_shared<const LogFunction>(inner);
    auto tag = std::make_shared<int>(0);
    LaplaceOptions lo;
    lo.quad = quad;
    LogFunction h;
    h.eval = [in, kappa, lo, tag](cplx eta) {
        QuadratureResult r = log_laplace_lambda(*in, kappa, eta, lo);
        level_slot = LevelSlot{tag.get(), eta, r.total_error()};
        return r.value;
    };
    h.eval_error = [in, kappa, lo, tag](cplx eta) {
        if (level_slot.tag == tag.get() && level_slot.eta == eta) return level_slot.err;
        return log_laplace_lambda(*in, kappa, eta, lo).total_error();
    };
    h.certified = inner.certified;

    const FlatnessCertificate fl = *inner.flatness;
    const double a1 = fl.alpha * kappa;  // flatness order after ramification
    // |L(g o m_kappa)(v)| <= C' Gamma(a1) e^{a1 v}, and v = w/kappa.
    h.flatness = FlatnessCertificate{fl.C * gamma_fn(a1), fl.alpha, kInf};
    if (inner.exp_poly) {
        auto ep = *inner.exp_poly;
        for (auto& [a, beta] : ep) a *= gamma_fn(beta * kappa);
        h.exp_poly = ep;
        return h;
    }
    const double edge = inner.domain.log_radius(0) / kappa;
    if (std::isfinite(edge)) {
        // The integral stops at the domain edge, where the flatness bound
        // still holds.
        h.growth = GrowthCertificate{fl.C * std::exp(a1 * std::min(edge, fl.edge / kappa)) / a1, 0.0, 1.0};
        return h;
    }
    if (!inner.growth || inner.growth->D != 0.0)
        throw std::invalid_argument("nested Laplace level needs a bounded inner function");
    // Split at s* = min(edge, 0): flat part, bounded part on [s*, 0], and
    // the right part bounded by C_g E1(e^{-v}) <= C_g e^v <= C_g exp(D e^v)/(D e).
    const double s = std::min(fl.edge / kappa, 0.0);
    const double D = 1e-3;
    const double Cg = inner.growth->C;
    h.growth = GrowthCertificate{fl.C * std::exp(a1 * s) / a1 + Cg * std::abs(s) + Cg / (D * M_E), D, 1.0};
    return h;
}

GenSeries without_constant(const GenSeries& f) {
    GenSeries out = f;
    TermMap& t = out.mutable_terms();
    for (auto it = t.begin(); it != t.end();) {
        if (it->first.x_total() == 0.0) it = t.erase(it);
        else ++it;
    }
    return out;
}

}  // namespace

MultisumResult multisum(const GenSeries& Tf, std::vector<double> K, cplx w, const MultisumOptions& o) {
    if (Tf.nvars() != 1) throw std::invalid_argument("multisum is one-variable");
    for (double k : K)
        if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("K entries must be finite and >= 0");
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    // 0 in K with other entries changes nothing; K = {0} is the convergent case.
    K.erase(std::remove(K.begin(), K.end(), 0.0), K.end());
    MultisumResult res;
    if (K.empty()) {
        CertifiedComplex v = eval_logsum(Tf, LogCoord(w));
        res.value = v.value;
        res.error = v.error;
        res.certified = v.certified;
        res.note = "convergent case: log-sum";
        return res;
    }
    if (!(std::abs(w.imag()) < M_PI / 2)) throw std::invalid_argument("multisum works in direction 0: |Im w| < pi/2");
    res.kappa.push_back(K[0]);
    for (std::size_t i = 1; i < K.size(); ++i) res.kappa.push_back(K[i] - K[i - 1]);

    const cplx c0 = Tf.constant_term();
    GenSeries H = without_constant(Tf);
    if (H.is_zero()) {
        res.value = c0;
        res.note = "constant series";
        return res;
    }
    for (auto it = res.kappa.rbegin(); it != res.kappa.rend(); ++it) H = formal_borel(H, *it);

    LogFunction g;
    bool certified = true;
    if (H.is_exact()) {
        g = LogFunction::log_sum(H);
        res.log_radius = kInf;
    } else {
        const double raw = o.borel_tail ? std::log(o.borel_tail->rho) : estimate_log_radius(H);
        const double lr = raw + std::log(o.safety);
        res.log_radius = lr;
        g = LogFunction::log_sum(H, std::exp(lr));
        const bool has_tail = H.tail() && H.tail()->radius[0] >= std::exp(lr);
        if (!has_tail && o.borel_tail) {
            const BorelTailBound b = *o.borel_tail;
            const double cut = H.cutoff()[0];
            if (!(b.C >= 0 && b.rho > 0 && b.step > 0 && std::isfinite(cut)))
                throw std::invalid_argument("borel_tail needs C >= 0, rho > 0, step > 0 and a finite cutoff");
            g.eval_error = [b, cut, raw](cplx eta) {
                const double t = eta.real() - raw;
                if (!(t < 0)) return kInf;
                return b.C * std::exp((cut + b.step) * t) / (1.0 - std::exp(b.step * t));
            };
            res.note = "Borel-series tail from the supplied coefficient bound";
        } else if (!has_tail) {
            // Estimated tail from the fitted decay: the next terms continue
            // geometrically with ratio e^{step (s - raw)}.
            auto last = std::prev(H.terms().end());
            const double beta_n = last->first.x[0].value, a_n = std::abs(last->second);
            const double step = H.size() > 1 ? (beta_n - H.terms().begin()->first.x[0].value) / double(H.size() - 1) : 1.0;
            g.eval_error = [beta_n, a_n, step, raw](cplx eta) {
                const double q = std::exp(step * (eta.real() - raw));
                if (q >= 1.0) return kInf;
                return a_n * std::exp(beta_n * eta.real()) * q / (1.0 - q);
            };
            certified = false;
            res.note = "Borel-series tail estimated from the coefficient fit";
        }
        if (o.growth) g.growth = *o.growth;
        else {
            double mx = 0.0;
            for (int i = 0; i <= 40; ++i) mx = std::max(mx, std::abs(g.eval(lr - 2.0 + i * (2.0 - 1e-3) / 40.0)));
            g.growth = GrowthCertificate{2.0 * mx, 0.0, 1.0};
            certified = false;
            res.note += res.note.empty() ? "" : "; ";
            res.note += "growth beyond the radius estimated from edge samples";
        }
        // The series' own norm bound is a lower bound only without a tail;
        // keep the flatness order and use the sampled sup where larger.
        if (g.flatness) {
            double mx = 0.0;
            for (int i = 0; i <= 40; ++i) {
                const double s = lr - 1e-3 - i * 0.25;
                mx = std::max(mx, std::abs(g.eval(s)) / std::exp(g.flatness->alpha * s));
            }
            g.flatness->C = std::max(g.flatness->C, 2.0 * mx);
        }
    }
    g.certified = true;  // tracked separately in `certified`

    LogFunction level = g;
    for (std::size_t i = res.kappa.size() - 1; i >= 1; --i) level = laplace_level(level, res.kappa[i], o.quad);

    LaplaceOptions lo;
    lo.quad = o.quad;
    QuadratureResult r = log_laplace_lambda(level, res.kappa[0], w, lo);
    res.value = c0 + r.value;
    res.error = r.total_error();
    res.certified = certified && r.certified && std::isfinite(res.error);
    return res;
}

QuadratureResult laplace_of_borel(const GenSeries& F, cplx w, std::optional<double> radius, const QuadOptions& quad) {
    if (F.nvars() != 1) throw std::invalid_argument("laplace_of_borel is one-variable");
    const cplx c0 = F.constant_term();
    const LogFunction f = LogFunction::log_sum(F, radius);
    // Certificates for B f come from the formal Borel series: its terms bound
    // |B f| up to the (tiny, for these inputs) contribution of the tail.
    GenSeries BF = formal_borel(without_constant(F), 1.0);
    std::vector<std::pair<double, double>> ep;
    double amin = kInf;
    for (const auto& [m, c] : BF.terms()) {
        ep.emplace_back(std::abs(c), m.x[0].value);
        amin = std::min(amin, m.x[0].value);
    }
    QuadratureResult res;
    if (ep.empty()) {
        res.value = c0;
        return res;
    }
    BorelOptions bo;
    bo.quad = quad;
    LogFunction g;
    auto tag = std::make_shared<int>(0);
    g.eval = [f, bo, tag](cplx eta) {
        QuadratureResult r = log_borel(f, eta, bo);
        level_slot = LevelSlot{tag.get(), eta, r.total_error()};
        return r.value;
    };
    g.eval_error = [f, bo, tag](cplx eta) {
        if (level_slot.tag == tag.get() && level_slot.eta == eta) return level_slot.err;
        return log_borel(f, eta, bo).total_error();
    };
    g.exp_poly = ep;
    double Cf = 0.0;
    for (const auto& [a, beta] : ep) Cf += a;  // for Re eta <= 0
    g.flatness = FlatnessCertificate{Cf, amin, 0.0};
    g.certified = F.is_exact() || (F.tail() && !F.tail()->exact());
    LaplaceOptions lo;
    lo.quad = quad;
    // Inner Borel values carry ~1e-16 absolute noise; an outer floor below
    // that only buys endless bisection.
    lo.quad.abs_tol = std::max(quad.abs_tol, 1e-12);
    res = log_laplace(g, w, lo);
    res.value += c0;
    return res;
}

QuasianalyticityReport quasianalyticity_probe(const TougeronDecomposition& a, const TougeronDecomposition& b,
                                              const std::vector<cplx>& w_grid) {
    QuasianalyticityReport rep;
    GenSeries Ta = assemble_T(a), Tb = assemble_T(b);
    const double cut = std::min(Ta.cutoff()[0], Tb.cutoff()[0]);
    GenSeries diff = sub(Ta, Tb);
    for (const auto& [m, c] : diff.terms())
        if (m.x[0].value <= cut) rep.T_discrepancy = std::max(rep.T_discrepancy, std::abs(c));
    for (cplx w : w_grid) {
        double dv = std::abs(a.sum(w) - b.sum(w));
        if (dv >= rep.value_discrepancy) {
            rep.value_discrepancy = dv;
            rep.worst_point = w;
        }
    }
    return rep;
}

double binet_constant(double sigma, double* argmax) {
    if (!(sigma > 0.0)) throw std::invalid_argument("binet_constant needs sigma > 0");
    const double ls = std::log(sigma);
    // alpha log sigma - log Gamma(alpha) is concave on (0, inf).
    auto obj = [ls](double a) { return a * ls - std::lgamma(a); };
    double lo = 1e-12, hi = std::max(4.0, 2.0 * sigma + 4.0);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = obj(x1), f2 = obj(x2);
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = obj(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = obj(x1);
        }
    }
    const double a = 0.5 * (lo + hi);
    if (argmax) *argmax = a;
    return std::exp(obj(a));
}

}  // namespace gps
