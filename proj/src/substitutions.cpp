#include "gps/substitutions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gps {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

bool is_nonneg_integer(double r) { return r >= -kMergeTolerance && std::abs(r - std::round(r)) <= 1e-12; }

ExponentTag guess_tag(double a) {
    for (std::int64_t q = 1; q <= 64; ++q) {
        double p = std::round(a * q);
        if (std::abs(a * q - p) <= 1e-12 * q) return ExponentTag::rational(static_cast<std::int64_t>(p), q);
    }
    return {};
}

// Index of source variable k after removing variable `removed`.
std::size_t drop_index(std::size_t k, std::size_t removed) { return k < removed ? k : k - 1; }

// Coefficients of (lam + v)^r = sum_k binom(r,k) lam^{r-k} v^k, k <= kmax.
// kmax < 0 means no cutoff, which only terminates for integer r.
std::vector<cplx> binomial_series(double r, cplx lam, int kmax, const char* what) {
    int top = kmax;
    if (is_nonneg_integer(r)) {
        int ri = static_cast<int>(std::lround(r));
        top = kmax < 0 ? ri : std::min(kmax, ri);
    } else if (kmax < 0) {
        throw std::domain_error(std::string(what) + ": real power " + Exponent(r).to_string() +
                                " gives an infinite binomial series and no output Y-degree cutoff was set");
    }
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        cplx lp = (lam == cplx(0.0)) ? (r - k == 0.0 ? cplx(1.0) : cplx(0.0)) : std::pow(lam, r - k);
        out.push_back(real_binomial(r, static_cast<unsigned>(k)) * lp);
    }
    return out;
}

std::vector<Exponent> zero_x(std::size_t m) { return std::vector<Exponent>(m, Exponent(0.0)); }

void put(MixedSeries& out, const Monomial& mono, cplx c) {
    if (c == cplx(0.0)) return;
    if (!out.box().inside(mono)) return;
    accumulate(out.mutable_terms(), mono, c);
}

MixedSeries apply_permutation(const Substitution& s, const MixedSeries& f) {
    std::vector<double> cut(s.m);
    for (std::size_t i = 0; i < s.m; ++i) cut[s.perm[i]] = f.x_cutoff()[i];
    MixedSeries out(s.m, s.n, cut, f.y_degree());
    for (const auto& [mono, c] : f.terms()) {
        Monomial r;
        r.x.resize(s.m);
        for (std::size_t i = 0; i < s.m; ++i) r.x[s.perm[i]] = mono.x[i];
        r.y = mono.y;
        put(out, r, c);
    }
    return out;
}

MixedSeries apply_ramification(const Substitution& s, const MixedSeries& f) {
    std::vector<double> cut = f.x_cutoff();
    cut[s.i] *= s.alpha;
    ExponentTag tag = guess_tag(s.alpha);
    MixedSeries out(s.m, s.n, cut, f.y_degree());
    for (const auto& [mono, c] : f.terms()) {
        Monomial r = mono;
        r.x[s.i] = scale(mono.x[s.i], s.alpha, tag);
        put(out, r, c);
    }
    return out;
}

MixedSeries apply_identify(const Substitution& s, const MixedSeries& f) {
    std::vector<double> cut;
    for (std::size_t k = 0; k < s.m; ++k)
        if (k != s.i) cut.push_back(k == s.j ? std::min(f.x_cutoff()[s.i], f.x_cutoff()[s.j]) : f.x_cutoff()[k]);
    MixedSeries out(s.m - 1, s.n, cut, f.y_degree());
    std::size_t jt = drop_index(s.j, s.i);
    for (const auto& [mono, c] : f.terms()) {
        Monomial r;
        for (std::size_t k = 0; k < s.m; ++k)
            if (k != s.i) r.x.push_back(mono.x[k]);
        r.x[jt] = mono.x[s.j] + mono.x[s.i];
        r.y = mono.y;
        put(out, r, c);
    }
    return out;
}

MixedSeries apply_singular(const Substitution& s, const MixedSeries& f) {
    // x'_j = x_j + x_i and x'_i = x_i: a source term outside the box lands
    // outside the same box, so the cutoffs carry over unchanged.
    MixedSeries out(s.m, s.n, f.x_cutoff(), f.y_degree());
    for (const auto& [mono, c] : f.terms()) {
        Monomial r = mono;
        r.x[s.j] = mono.x[s.j] + mono.x[s.i];
        put(out, r, c);
    }
    return out;
}

MixedSeries apply_regular(const Substitution& s, const MixedSeries& f) {
    std::vector<double> cut;
    for (std::size_t k = 0; k < s.m; ++k)
        if (k != s.i) cut.push_back(k == s.j ? std::min(f.x_cutoff()[s.i], f.x_cutoff()[s.j]) : f.x_cutoff()[k]);
    int deg = f.y_degree();
    if (s.out_y_degree >= 0) deg = deg < 0 ? s.out_y_degree : std::min(deg, s.out_y_degree);
    MixedSeries out(s.m - 1, s.n + 1, cut, deg);
    std::size_t jt = drop_index(s.j, s.i);
    for (const auto& [mono, c] : f.terms()) {
        Monomial base;
        for (std::size_t k = 0; k < s.m; ++k)
            if (k != s.i) base.x.push_back(mono.x[k]);
        base.x[jt] = mono.x[s.j] + mono.x[s.i];
        if (exponent_less(cut[jt], base.x[jt].value)) continue;
        int room = deg < 0 ? -1 : deg - static_cast<int>(mono.y_total());
        if (deg >= 0 && room < 0) continue;
        std::vector<cplx> bin = binomial_series(mono.x[s.i].value, s.lambda, room, "regular blow-up");
        base.y.assign(s.n + 1, 0);
        std::copy(mono.y.begin(), mono.y.end(), base.y.begin() + 1);
        for (std::size_t k = 0; k < bin.size(); ++k) {
            base.y[0] = static_cast<std::uint32_t>(k);
            put(out, base, c * bin[k]);
        }
    }
    return out;
}

// Multiplies independent univariate factors, each living in its own Y'
// slot, and deposits the products below the degree cutoff.
void expand_factors(MixedSeries& out, const Monomial& base, cplx c,
                    const std::vector<std::pair<std::size_t, std::vector<cplx>>>& factors, int deg) {
    Monomial cur = base;
    std::function<void(std::size_t, cplx, int)> rec = [&](std::size_t idx, cplx acc, int used) {
        if (idx == factors.size()) {
            put(out, cur, acc);
            return;
        }
        const auto& [slot, coeffs] = factors[idx];
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            int u = used + static_cast<int>(k);
            if (deg >= 0 && u > deg) break;
            if (coeffs[k] == cplx(0.0)) continue;
            cur.y[slot] = static_cast<std::uint32_t>(k);
            rec(idx + 1, acc * coeffs[k], u);
        }
        cur.y[slot] = 0;
    };
    rec(0, c, static_cast<int>(base.y_total()));
}

MixedSeries apply_translation(const Substitution& s, const MixedSeries& f) {
    std::vector<std::size_t> kept, moved;
    for (std::size_t k = 0; k < s.m; ++k) (s.a[k] == 0.0 ? kept : moved).push_back(k);
    for (std::size_t k : moved)
        if (std::isfinite(f.x_cutoff()[k]))
            throw std::domain_error("translation of X" + std::to_string(k) +
                                    " needs the complete series in that variable (finite cutoff " +
                                    Exponent(f.x_cutoff()[k]).to_string() + ")");
    bool shifts_y = std::any_of(s.b.begin(), s.b.end(), [](double v) { return v != 0.0; });
    if (shifts_y && f.y_degree() >= 0)
        throw std::domain_error("translation in Y needs the complete series in Y (source Y-degree cutoff " +
                                std::to_string(f.y_degree()) + ")");
    for (std::size_t k = 0; k < s.radius_x.size() && k < s.m; ++k)
        if (!(s.a[k] < s.radius_x[k]))
            throw std::domain_error("inadmissible translation: a" + std::to_string(k) + " = " +
                                    std::to_string(s.a[k]) + " is not below the radius " +
                                    std::to_string(s.radius_x[k]));
    for (std::size_t k = 0; k < s.radius_y.size() && k < s.n; ++k)
        if (!(std::abs(s.b[k]) < s.radius_y[k]))
            throw std::domain_error("inadmissible translation: |b" + std::to_string(k) + "| = " +
                                    std::to_string(std::abs(s.b[k])) + " is not below the radius " +
                                    std::to_string(s.radius_y[k]));

    int deg = f.y_degree();
    if (s.out_y_degree >= 0) deg = deg < 0 ? s.out_y_degree : std::min(deg, s.out_y_degree);
    std::vector<double> cut;
    for (std::size_t k : kept) cut.push_back(f.x_cutoff()[k]);
    const std::size_t nm = moved.size();
    MixedSeries out(kept.size(), nm + s.n, cut, deg);

    for (const auto& [mono, c] : f.terms()) {
        Monomial base;
        for (std::size_t k : kept) base.x.push_back(mono.x[k]);
        base.y.assign(nm + s.n, 0);
        std::vector<std::pair<std::size_t, std::vector<cplx>>> factors;
        for (std::size_t t = 0; t < nm; ++t) {
            double e = mono.x[moved[t]].value;
            if (e == 0.0) continue;
            factors.emplace_back(t, binomial_series(e, s.a[moved[t]], deg, "translation"));
        }
        for (std::size_t k = 0; k < s.n; ++k) {
            if (mono.y[k] == 0) continue;
            if (s.b[k] == 0.0)
                base.y[nm + k] = mono.y[k];
            else
                factors.emplace_back(nm + k, binomial_series(mono.y[k], s.b[k], -1, "translation"));
        }
        expand_factors(out, base, c, factors, deg);
    }
    return out;
}

MixedSeries apply_infinitesimal(const Substitution& s, const MixedSeries& f) {
    const MixedSeries& t0 = s.targets.front();
    const std::size_t mt = t0.m(), nt = t0.n();
    std::vector<double> cut = t0.x_cutoff();
    int deg = t0.y_degree();
    for (const auto& t : s.targets) {
        for (std::size_t k = 0; k < mt; ++k) cut[k] = std::min(cut[k], t.x_cutoff()[k]);
        if (t.y_degree() >= 0) deg = deg < 0 ? t.y_degree() : std::min(deg, t.y_degree());
    }
    for (std::size_t k = 0; k < s.m; ++k) cut[k] = std::min(cut[k], f.x_cutoff()[k]);

    if (f.y_degree() >= 0) {
        // Products of more than d target terms must leave the box. Each target
        // monomial t has weight sum_i x_i/c_i + |y|/deg over the finite
        // constraints; a product inside the box has total weight <= #constraints.
        double constraints = 0.0;
        for (double c : cut)
            if (std::isfinite(c)) constraints += 1.0;
        if (deg >= 0) constraints += 1.0;
        double wmin = kInfD;
        for (const auto& t : s.targets)
            for (const auto& [mono, c] : t.terms()) {
                double w = 0.0;
                for (std::size_t k = 0; k < mt; ++k)
                    if (std::isfinite(cut[k]) && cut[k] > 0) w += mono.x[k].value / cut[k];
                    else if (std::isfinite(cut[k]) && mono.x[k].value > 0) w = kInfD;
                if (deg >= 0) w += deg > 0 ? mono.y_total() / static_cast<double>(deg) : (mono.y_total() ? kInfD : 0);
                wmin = std::min(wmin, w);
            }
        if (!((f.y_degree() + 1) * wmin > constraints))
            throw std::domain_error("source Y-degree cutoff " + std::to_string(f.y_degree()) +
                                    " does not determine the output box of the infinitesimal substitution");
    }

    MixedSeries out(mt, nt, cut, deg);
    std::vector<MixedSeries> tt;
    for (const auto& t : s.targets) tt.push_back(truncate(t, cut, deg));
    std::map<std::pair<std::size_t, unsigned>, MixedSeries> powers;
    std::function<const MixedSeries&(std::size_t, unsigned)> pw = [&](std::size_t j,
                                                                      unsigned e) -> const MixedSeries& {
        auto key = std::make_pair(j, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        MixedSeries p = e <= 1 ? tt[j] : mul(pw(j, e - 1), tt[j]);
        return powers.emplace(key, std::move(p)).first->second;
    };
    // Group the source by beta.
    std::map<std::vector<std::uint32_t>, MixedSeries> by_beta;
    for (const auto& [mono, c] : f.terms()) {
        Monomial x;
        x.x = zero_x(mt);
        for (std::size_t k = 0; k < s.m; ++k) x.x[k] = mono.x[k];
        x.y.assign(nt, 0);
        if (!out.box().inside(x)) continue;
        auto it = by_beta.find(mono.y);
        if (it == by_beta.end()) it = by_beta.emplace(mono.y, MixedSeries(mt, nt, cut, deg)).first;
        accumulate(it->second.mutable_terms(), x, c);
    }
    for (const auto& [beta, fb] : by_beta) {
        MixedSeries prod = fb;
        for (std::size_t j = 0; j < s.n && !prod.is_zero(); ++j)
            if (beta[j]) prod = mul(prod, pw(j, beta[j]));
        for (const auto& [mono, c] : prod.terms()) put(out, mono, c);
    }
    return out;
}

}  // namespace

double real_binomial(double r, unsigned k) {
    double b = 1.0;
    for (unsigned i = 0; i < k; ++i) b *= (r - i) / (i + 1.0);
    return b;
}

Substitution Substitution::permutation(std::size_t m, std::size_t n, std::vector<std::size_t> perm) {
    Substitution s;
    s.kind = Kind::permutation;
    s.m = m;
    s.n = n;
    s.perm = std::move(perm);
    s.validate();
    return s;
}

Substitution Substitution::ramification(std::size_t m, std::size_t n, std::size_t i0, double alpha) {
    Substitution s;
    s.kind = Kind::ramification;
    s.m = m;
    s.n = n;
    s.i = i0;
    s.alpha = alpha;
    s.validate();
    return s;
}

Substitution Substitution::regular_blowup(std::size_t m, std::size_t n, std::size_t i, std::size_t j, double lambda,
                                          int out_y_degree) {
    Substitution s;
    s.kind = Kind::regular_blowup;
    s.m = m;
    s.n = n;
    s.i = i;
    s.j = j;
    s.lambda = lambda;
    s.out_y_degree = out_y_degree;
    s.validate();
    return s;
}

Substitution Substitution::singular_blowup(std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
    Substitution s;
    s.kind = Kind::singular_blowup;
    s.m = m;
    s.n = n;
    s.i = i;
    s.j = j;
    s.validate();
    return s;
}

Substitution Substitution::translation(std::vector<double> a, std::vector<double> b, int out_y_degree) {
    Substitution s;
    s.kind = Kind::translation;
    s.m = a.size();
    s.n = b.size();
    s.a = std::move(a);
    s.b = std::move(b);
    s.out_y_degree = out_y_degree;
    s.validate();
    return s;
}

Substitution Substitution::infinitesimal(std::size_t m, std::vector<MixedSeries> targets) {
    Substitution s;
    s.kind = Kind::infinitesimal;
    s.m = m;
    s.n = targets.size();
    s.targets = std::move(targets);
    s.validate();
    return s;
}

Substitution Substitution::identify(std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
    Substitution s;
    s.kind = Kind::identify;
    s.m = m;
    s.n = n;
    s.i = i;
    s.j = j;
    s.validate();
    return s;
}

Substitution Substitution::set_zero(std::size_t m, std::size_t n, std::size_t i) {
    Substitution s;
    s.kind = Kind::set_zero;
    s.m = m;
    s.n = n;
    s.i = i;
    s.validate();
    return s;
}

void Substitution::validate() const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("substitution: " + msg); };
    switch (kind) {
        case Kind::permutation: {
            if (perm.size() != m) bad("permutation needs one image per Gevrey variable");
            std::vector<bool> hit(m, false);
            for (std::size_t p : perm) {
                if (p >= m || hit[p]) bad("not a permutation");
                hit[p] = true;
            }
            break;
        }
        case Kind::ramification:
            if (i >= m) bad("ramified variable out of range");
            if (!(alpha > 0.0) || !std::isfinite(alpha)) bad("ramification needs alpha > 0 (gamma = 0 is not normal)");
            break;
        case Kind::regular_blowup:
        case Kind::singular_blowup:
        case Kind::identify:
            if (i >= m || j >= m || i == j) bad("blow-up and identify need two distinct Gevrey variables");
            if (kind == Kind::regular_blowup && !(lambda > 0.0)) bad("regular blow-up needs lambda > 0");
            break;
        case Kind::translation:
            if (a.size() != m || b.size() != n) bad("translation arity mismatch");
            for (double v : a)
                if (!(v >= 0.0) || !std::isfinite(v)) bad("translation of a Gevrey variable needs a >= 0");
            for (double v : b)
                if (!std::isfinite(v)) bad("translation needs finite b");
            break;
        case Kind::infinitesimal: {
            if (targets.empty()) bad("infinitesimal substitution needs targets");
            const auto& t0 = targets.front();
            if (t0.m() < m) bad("targets must keep the source Gevrey variables first");
            for (const auto& t : targets) {
                if (t.m() != t0.m() || t.n() != t0.n()) bad("targets disagree on arity");
                if (t.constant_term() != cplx(0.0)) bad("non-normal target: sigma(Y) has a nonzero constant term");
            }
            break;
        }
        case Kind::set_zero:
            if (i >= m) bad("variable out of range");
            break;
    }
}

std::size_t Substitution::target_m() const {
    switch (kind) {
        case Kind::regular_blowup:
        case Kind::identify:
        case Kind::set_zero: return m - 1;
        case Kind::translation: return static_cast<std::size_t>(std::count(a.begin(), a.end(), 0.0));
        case Kind::infinitesimal: return targets.front().m();
        default: return m;
    }
}

std::size_t Substitution::target_n() const {
    switch (kind) {
        case Kind::regular_blowup: return n + 1;
        case Kind::translation: return n + m - target_m();
        case Kind::infinitesimal: return targets.front().n();
        default: return n;
    }
}

std::string Substitution::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::permutation:
            os << "permutation(";
            for (std::size_t k = 0; k < perm.size(); ++k) os << (k ? "," : "") << perm[k];
            os << ")";
            break;
        case Kind::ramification: os << "ramification(X" << i << ", alpha=" << alpha << ")"; break;
        case Kind::regular_blowup: os << "blowup(X" << i << " -> X" << j << "(" << lambda << " + V))"; break;
        case Kind::singular_blowup: os << "blowup(X" << i << " -> X" << j << " X" << i << ")"; break;
        case Kind::translation: os << "translation"; break;
        case Kind::infinitesimal: os << "infinitesimal(" << targets.size() << " targets)"; break;
        case Kind::identify: os << "identify(X" << i << " -> X" << j << ")"; break;
        case Kind::set_zero: os << "set_zero(X" << i << ")"; break;
    }
    os << " : (" << m << "," << n << ") -> (" << target_m() << "," << target_n() << ")";
    return os.str();
}

MixedSeries apply(const Substitution& s, const MixedSeries& f) {
    if (f.m() != s.m || f.n() != s.n)
        throw std::invalid_argument("apply: series arity (" + std::to_string(f.m()) + "," + std::to_string(f.n()) +
                                    ") does not match " + s.describe());
    switch (s.kind) {
        case Substitution::Kind::permutation: return apply_permutation(s, f);
        case Substitution::Kind::ramification: return apply_ramification(s, f);
        case Substitution::Kind::regular_blowup: return apply_regular(s, f);
        case Substitution::Kind::singular_blowup: return apply_singular(s, f);
        case Substitution::Kind::translation: return apply_translation(s, f);
        case Substitution::Kind::infinitesimal: return apply_infinitesimal(s, f);
        case Substitution::Kind::identify: return apply_identify(s, f);
        case Substitution::Kind::set_zero: return restrict_fiber(f, s.i, LogCoord::minus_infinity());
    }
    throw std::logic_error("unknown substitution kind");
}

std::pair<LogPoint, std::vector<cplx>> sigma_tilde(const Substitution& s, const LogPoint& w,
                                                   const std::vector<cplx>& y) {
    if (w.size() != s.target_m() || y.size() != s.target_n())
        throw std::invalid_argument("sigma_tilde: point arity does not match the target of " + s.describe());
    LogPoint src(s.m);
    std::vector<cplx> ys(s.n);
    auto add = [](LogCoord u, LogCoord v) -> LogCoord {
        if (u.is_minus_infinity() || v.is_minus_infinity()) return LogCoord::minus_infinity();
        return u.value() + v.value();
    };
    switch (s.kind) {
        case Substitution::Kind::permutation:
            for (std::size_t k = 0; k < s.m; ++k) src[k] = w[s.perm[k]];
            ys = y;
            break;
        case Substitution::Kind::ramification:
            src = w;
            if (!w[s.i].is_minus_infinity()) src[s.i] = s.alpha * w[s.i].value();
            ys = y;
            break;
        case Substitution::Kind::regular_blowup: {
            for (std::size_t k = 0; k < s.m; ++k)
                if (k != s.i) src[k] = w[drop_index(k, s.i)];
            cplx base = s.lambda + y[0];
            if (base == cplx(0.0)) throw std::domain_error("sigma_tilde: lambda + v vanishes");
            src[s.i] = add(src[s.j], LogCoord(std::log(base)));
            for (std::size_t k = 0; k < s.n; ++k) ys[k] = y[k + 1];
            break;
        }
        case Substitution::Kind::singular_blowup:
            src = w;
            src[s.i] = add(w[s.j], w[s.i]);
            ys = y;
            break;
        case Substitution::Kind::translation: {
            std::size_t kept = 0, moved = 0;
            const std::size_t nm = s.m - s.target_m();
            for (std::size_t k = 0; k < s.m; ++k) {
                if (s.a[k] == 0.0) {
                    src[k] = w[kept++];
                } else {
                    cplx z = s.a[k] + y[moved++];
                    if (z == cplx(0.0)) throw std::domain_error("sigma_tilde: a + y' vanishes");
                    src[k] = std::log(z);
                }
            }
            for (std::size_t k = 0; k < s.n; ++k) ys[k] = s.b[k] + y[nm + k];
            break;
        }
        case Substitution::Kind::infinitesimal:
            for (std::size_t k = 0; k < s.m; ++k) src[k] = w[k];
            for (std::size_t k = 0; k < s.n; ++k) ys[k] = eval(s.targets[k], w, y);
            break;
        case Substitution::Kind::identify:
            for (std::size_t k = 0; k < s.m; ++k) src[k] = w[drop_index(k == s.i ? s.j : k, s.i)];
            ys = y;
            break;
        case Substitution::Kind::set_zero:
            for (std::size_t k = 0; k < s.m; ++k)
                src[k] = k == s.i ? LogCoord::minus_infinity() : w[drop_index(k, s.i)];
            ys = y;
            break;
    }
    return {src, ys};
}

namespace {

std::vector<double> drop_coord(const std::vector<double>& v, std::size_t i) {
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (k != i) out.push_back(v[k]);
    return out;
}

std::vector<SupportDescriptor> drop_support(const std::vector<SupportDescriptor>& v, std::size_t i) {
    std::vector<SupportDescriptor> out;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (k != i) out.push_back(v[k]);
    return out;
}

std::vector<SupportDescriptor> full_delta(const SummabilityParams& tau) {
    if (tau.delta.size() == tau.m()) return tau.delta;
    return std::vector<SupportDescriptor>(tau.m(), SupportDescriptor::arithmetic(1.0));
}

SummabilityParams make_several(std::vector<std::vector<double>> K, std::vector<double> R, double r, double theta,
                               std::vector<SupportDescriptor> delta) {
    SummabilityParams t;
    t.K = std::move(K);
    t.R = std::move(R);
    t.r = r;
    t.theta = theta;
    t.delta = std::move(delta);
    t.convention = SummabilityParams::Convention::several_variables;
    return t;
}

}  // namespace

TransportedParams param_transport(const Substitution& s, const SummabilityParams& tau, const std::vector<double>& rho,
                                  const TransportOptions& opt) {
    if (tau.m() != s.m) throw std::invalid_argument("param_transport: tau has the wrong number of Gevrey variables");
    if (rho.size() != s.n) throw std::invalid_argument("param_transport: rho has the wrong arity");
    for (const auto& k : tau.K)
        if (k.size() != s.m) throw std::invalid_argument("param_transport: K tuple arity mismatch");
    auto delta = full_delta(tau);
    TransportedParams out;
    out.rho = rho;

    switch (s.kind) {
        case Substitution::Kind::permutation: {
            std::vector<std::vector<double>> K;
            for (const auto& k : tau.K) {
                std::vector<double> kp(s.m);
                for (std::size_t i = 0; i < s.m; ++i) kp[s.perm[i]] = k[i];
                K.push_back(kp);
            }
            std::vector<double> R(s.m);
            std::vector<SupportDescriptor> D(s.m);
            for (std::size_t i = 0; i < s.m; ++i) {
                R[s.perm[i]] = tau.R[i];
                D[s.perm[i]] = delta[i];
            }
            out.tau = make_several(K, R, tau.r, tau.theta, D);
            break;
        }
        case Substitution::Kind::ramification: {
            auto K = tau.K;
            for (auto& k : K) k[s.i] /= s.alpha;
            auto R = tau.R;
            R[s.i] = std::pow(R[s.i], 1.0 / s.alpha);
            auto D = delta;
            D[s.i] = SupportDescriptor::scaled(D[s.i], 1.0 / s.alpha);
            out.tau = make_several(K, R, tau.r, tau.theta, D);
            break;
        }
        case Substitution::Kind::identify: {
            std::vector<std::vector<double>> K;
            for (const auto& k : tau.K) {
                auto kp = drop_coord(k, s.i);
                kp[drop_index(s.j, s.i)] = k[s.j] + k[s.i];
                K.push_back(kp);
            }
            auto R = drop_coord(tau.R, s.i);
            R[drop_index(s.j, s.i)] = std::min(tau.R[s.i], tau.R[s.j]);
            auto D = drop_support(delta, s.i);
            D[drop_index(s.j, s.i)] = SupportDescriptor::sum_closure(delta[s.j], delta[s.i]);
            out.tau = make_several(K, R, tau.r, tau.theta, D);
            break;
        }
        case Substitution::Kind::regular_blowup: {
            const double rho0 = opt.rho0;
            double l = 0.0;
            for (const auto& k : tau.K) l = std::max(l, k[s.i]);
            if (!(rho0 > 0.0) || !(2 * rho0 < s.lambda))
                throw std::domain_error("blow-up: need 0 < 2 rho0 < lambda so that lambda + v stays off 0 (rho0 = " +
                                        std::to_string(rho0) + ", lambda = " + std::to_string(s.lambda) + ")");
            // max |arg(lambda + v)| over |v| <= 2 rho0.
            double spread = l * std::asin(2 * rho0 / s.lambda);
            double slack = tau.theta - M_PI / 2 - spread;
            if (!(slack > 0.0))
                throw std::domain_error("blow-up: no theta' in (pi/2, theta) with l |arg(lambda+v)| < theta - theta' (l " +
                                        std::string("asin(2 rho0/lambda) = ") + std::to_string(spread) +
                                        ", theta - pi/2 = " + std::to_string(tau.theta - M_PI / 2) + ")");
            double theta_p = M_PI / 2 + slack / 2;
            std::vector<std::vector<double>> K;
            for (const auto& k : tau.K) {
                auto kp = drop_coord(k, s.i);
                kp[drop_index(s.j, s.i)] = k[s.j] + k[s.i];
                K.push_back(kp);
            }
            auto R = drop_coord(tau.R, s.i);
            R[drop_index(s.j, s.i)] =
                std::min({tau.R[s.j], tau.R[s.i], tau.R[s.i] / std::pow(s.lambda + 2 * rho0, l)});
            out.tau = make_several(K, R, tau.r, theta_p, drop_support(delta, s.i));
            out.rho.assign(1, rho0);
            out.rho.insert(out.rho.end(), rho.begin(), rho.end());
            out.rho0 = rho0;
            break;
        }
        case Substitution::Kind::singular_blowup: {
            // w_i = w'_j + w'_i: weights k_j + k_i on X'_j keep the polysector,
            // and R'_j <= 1 keeps Re w_i below log R_i.
            auto K = tau.K;
            for (auto& k : K) k[s.j] = k[s.j] + k[s.i];
            auto R = tau.R;
            R[s.j] = std::min(tau.R[s.j], 1.0);
            auto D = delta;
            D[s.j] = SupportDescriptor::sum_closure(delta[s.j], delta[s.i]);
            out.tau = make_several(K, R, tau.r, tau.theta, D);
            break;
        }
        case Substitution::Kind::translation: {
            std::vector<std::size_t> kept, moved;
            for (std::size_t k = 0; k < s.m; ++k) (s.a[k] == 0.0 ? kept : moved).push_back(k);
            for (std::size_t k : moved)
                if (!(s.a[k] < tau.R[k]))
                    throw std::domain_error("inadmissible translation: a" + std::to_string(k) + " >= R" +
                                            std::to_string(k));
            for (std::size_t k = 0; k < s.n; ++k)
                if (!(std::abs(s.b[k]) < rho[k]))
                    throw std::domain_error("inadmissible translation: |b" + std::to_string(k) + "| >= rho" +
                                            std::to_string(k));
            std::vector<std::vector<double>> K;
            for (const auto& k : tau.K) {
                std::vector<double> kp;
                for (std::size_t i : kept) kp.push_back(k[i]);
                K.push_back(kp);
            }
            std::vector<double> R;
            std::vector<SupportDescriptor> D;
            for (std::size_t i : kept) {
                R.push_back(tau.R[i]);
                D.push_back(delta[i]);
            }
            out.tau = make_several(K, R, tau.r, tau.theta, D);
            out.rho.clear();
            for (std::size_t k : moved) out.rho.push_back(tau.R[k] - s.a[k]);
            for (std::size_t k = 0; k < s.n; ++k) out.rho.push_back(rho[k] - std::abs(s.b[k]));
            break;
        }
        case Substitution::Kind::infinitesimal: {
            if (!opt.target_tau) throw std::invalid_argument("param_transport: infinitesimal needs the targets' tau'");
            const auto& tp = *opt.target_tau;
            const std::size_t mx = s.targets.front().m() - s.m;
            if (tp.m() != mx || opt.target_rho.size() != s.targets.front().n())
                throw std::invalid_argument("param_transport: target tau'/rho' arity mismatch");
            // Admissibility: ||sigma(Y_j)|| at radii (R', 2^{n'+1} rho') <= rho_j / 2,
            // measured on the stored jet.
            const std::size_t np = opt.target_rho.size();
            const double boost = std::ldexp(1.0, static_cast<int>(np) + 1);
            for (std::size_t j = 0; j < s.n; ++j) {
                double norm = 0.0;
                for (const auto& [mono, c] : s.targets[j].terms()) {
                    double t = std::abs(c);
                    for (std::size_t k = 0; k < mx; ++k) t *= std::pow(tp.R[k], mono.x[s.m + k].value);
                    for (std::size_t k = 0; k < s.m; ++k)
                        if (mono.x[k].value != 0.0) t *= std::pow(tau.R[k], mono.x[k].value);
                    for (std::size_t k = 0; k < np; ++k) t *= std::pow(boost * opt.target_rho[k], mono.y[k]);
                    norm += t;
                }
                if (!(norm <= rho[j] / 2))
                    throw std::domain_error("infinitesimal substitution not admissible: ||sigma(Y" + std::to_string(j) +
                                            ")|| = " + std::to_string(norm) + " > rho/2 = " +
                                            std::to_string(rho[j] / 2));
            }
            std::vector<std::vector<double>> L;
            for (const auto& k : tau.K) {
                auto v = k;
                v.resize(s.m + mx, 0.0);
                L.push_back(v);
            }
            for (const auto& k : tp.K) {
                std::vector<double> v(s.m, 0.0);
                v.insert(v.end(), k.begin(), k.end());
                L.push_back(v);
            }
            auto R = tau.R;
            R.insert(R.end(), tp.R.begin(), tp.R.end());
            auto D = delta;
            auto D2 = full_delta(tp);
            D.insert(D.end(), D2.begin(), D2.end());
            out.tau = make_several(L, R, std::min(tau.r, tp.r), std::min(tau.theta, tp.theta), D);
            out.rho = opt.target_rho;
            break;
        }
        case Substitution::Kind::set_zero: {
            std::vector<std::vector<double>> K;
            for (const auto& k : tau.K) K.push_back(drop_coord(k, s.i));
            out.tau = make_several(K, drop_coord(tau.R, s.i), tau.r, tau.theta, drop_support(delta, s.i));
            break;
        }
    }
    return out;
}

ConsistencyReport numeric_consistency(const Substitution& s, const MixedSeries& f,
                                      const std::vector<ConsistencySample>& samples,
                                      const std::optional<LogRegion>& domain) {
    MixedSeries sf = apply(s, f);
    ConsistencyReport rep;
    rep.samples = samples.size();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& smp = samples[k];
        if (domain && !domain->contains(smp.w))
            throw std::domain_error("numeric_consistency: sample " + std::to_string(k) + " lies outside the domain");
        cplx lhs = eval(sf, smp.w, smp.y);
        auto [w, y] = sigma_tilde(s, smp.w, smp.y);
        cplx rhs = eval(f, w, y);
        double d = std::abs(lhs - rhs);
        if (d > rep.max_discrepancy || k == 0) {
            rep.max_discrepancy = std::max(rep.max_discrepancy, d);
            rep.worst_index = k;
        }
    }
    return rep;
}

WeierstrassResult weierstrass_prepare(const MixedSeries& f, unsigned d) {
    if (f.n() == 0) throw std::invalid_argument("weierstrass_prepare: needs a convergent variable");
    const std::size_t m = f.m(), n = f.n(), last = n - 1;
    const int deg = f.y_degree();
    if (deg >= 0 && static_cast<int>(d) > deg)
        throw std::invalid_argument("weierstrass_prepare: Y-degree cutoff below d");

    // F(0, 0, Y_n).
    MixedSeries p(m, n, f.x_cutoff(), deg);
    for (const auto& [mono, c] : f.terms()) {
        bool pure = mono.x_total() == 0.0;
        for (std::size_t k = 0; k < last && pure; ++k) pure = mono.y[k] == 0;
        if (pure) accumulate(p.mutable_terms(), mono, c);
    }
    unsigned order = 0;
    bool found = false;
    for (const auto& [mono, c] : p.terms()) {
        if (!found || mono.y[last] < order) order = mono.y[last];
        found = true;
    }
    if (!found || order != d) {
        std::string jet = p.to_string();
        throw std::domain_error("weierstrass_prepare: F is not regular of order " + std::to_string(d) +
                                " in the last Y variable; F(0,0,Y) = " + (jet.empty() ? "0" : jet));
    }

    auto shift_down = [&](const MixedSeries& g, unsigned by) {
        MixedSeries out(m, n, f.x_cutoff(), deg);
        for (const auto& [mono, c] : g.terms()) {
            Monomial r = mono;
            r.y[last] -= by;
            accumulate(out.mutable_terms(), r, c);
        }
        return out;
    };
    MixedSeries u = shift_down(p, d);
    MixedSeries e = f - p;
    MixedSeries uinv = invert(u);

    Monomial yd;
    yd.x = zero_x(m);
    yd.y.assign(n, 0);
    yd.y[last] = d;
    MixedSeries g(m, n, f.x_cutoff(), deg);
    accumulate(g.mutable_terms(), yd, 1.0);
    MixedSeries q(m, n, f.x_cutoff(), deg), rem(m, n, f.x_cutoff(), deg);

    WeierstrassResult res;
    // Y^d = Q F + R: peel off the part of g divisible by Y^d against the
    // leading factor Y^d u and carry the perturbation -q E forward. E lies in
    // the ideal of the other variables, so this terminates on a jet.
    const std::size_t max_iter = 100000;
    while (!g.is_zero()) {
        if (++res.iterations > max_iter)
            throw std::runtime_error("weierstrass_prepare: division did not terminate; set finite cutoffs");
        MixedSeries lo(m, n, f.x_cutoff(), deg), hi(m, n, f.x_cutoff(), deg);
        for (const auto& [mono, c] : g.terms()) accumulate((mono.y[last] < d ? lo : hi).mutable_terms(), mono, c);
        MixedSeries qk = shift_down(hi, d) * uinv;
        q = q + qk;
        rem = rem + lo;
        g = scale(qk * e, -1.0);
    }
    MixedSeries h(m, n, f.x_cutoff(), deg);
    accumulate(h.mutable_terms(), yd, 1.0);
    res.H = h - rem;
    res.G = invert(q);
    return res;
}

std::uint64_t count_multi_indices(unsigned n, unsigned k) {
    if (n == 0) return k == 0 ? 1 : 0;
    // binom(n + k - 1, k)
    std::uint64_t b = 1;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - 1 + i) / i;
    return b;
}

std::uint64_t count_compositions(const std::vector<unsigned>& gamma, unsigned k) {
    std::map<std::pair<std::vector<unsigned>, unsigned>, std::uint64_t> memo;
    std::function<std::uint64_t(const std::vector<unsigned>&, unsigned)> rec =
        [&](const std::vector<unsigned>& g, unsigned parts) -> std::uint64_t {
        bool zero = std::all_of(g.begin(), g.end(), [](unsigned v) { return v == 0; });
        if (parts == 0) return zero ? 1 : 0;
        if (zero) return 0;
        auto key = std::make_pair(g, parts);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        // Enumerate the first part delta, 0 != delta <= g.
        std::vector<unsigned> delta(g.size(), 0);
        while (true) {
            std::size_t pos = 0;
            while (pos < g.size() && delta[pos] == g[pos]) delta[pos++] = 0;
            if (pos == g.size()) break;
            ++delta[pos];
            std::vector<unsigned> rest(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) rest[i] = g[i] - delta[i];
            total += rec(rest, parts - 1);
        }
        memo.emplace(key, total);
        return total;
    };
    return rec(gamma, k);
}

std::uint64_t count_compositions_any(const std::vector<unsigned>& gamma) {
    unsigned s = std::accumulate(gamma.begin(), gamma.end(), 0u);
    std::uint64_t total = 0;
    for (unsigned k = 0; k <= s; ++k) total += count_compositions(gamma, k);
    return total;
}

}  // namespace gps
