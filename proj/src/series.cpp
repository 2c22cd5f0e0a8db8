#include "gps/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gps/kernels.hpp"
#include "gps/special.hpp"

namespace gps {

bool TailBound::exact() const {
    return bound == 0.0 && std::all_of(radius.begin(), radius.end(), [](double r) { return std::isinf(r); });
}

TailBound TailBound::exact_tail(std::size_t nvars) { return {std::vector<double>(nvars, kInf), 0.0}; }

TailBound TailBound::at(std::size_t nvars, double r, double bound) {
    if (!(r > 0.0) || !(bound >= 0.0)) throw std::invalid_argument("tail bound needs r > 0 and bound >= 0");
    return {std::vector<double>(nvars, r), bound};
}

namespace {

void require_same_arity(const GenSeries& f, const GenSeries& g) {
    if (f.nvars() != g.nvars())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(f.nvars()) + " vs " +
                                    std::to_string(g.nvars()) + " variables");
}

std::vector<double> min_radius(const TailBound& a, const TailBound& b) {
    std::vector<double> r(a.radius.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::min(a.radius[i], b.radius[i]);
    return r;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool all_infinite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isinf(x); });
}

// Mass at radius r of the terms of t that lie outside box.
double outside_mass(const TermMap& t, const JetBox& box, const std::vector<double>& r, bool& any) {
    TermMap out;
    for (const auto& [m, c] : t)
        if (!box.inside(m)) out.emplace(m, c);
    any = !out.empty();
    return any ? weighted_abs_sum(out, r) : 0.0;
}

std::vector<SupportDescriptor> merged_supports(const GenSeries& f, const GenSeries& g) {
    if (!f.has_declared_supports() || !g.has_declared_supports()) return {};
    auto a = f.supports(), b = g.supports();
    std::vector<SupportDescriptor> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(SupportDescriptor::sum_closure(a[i], b[i]));
    return out;
}

}  // namespace

GenSeries::GenSeries(std::size_t nvars, std::vector<double> cutoff, std::vector<SupportDescriptor> supports)
    : nvars_(nvars), supports_(std::move(supports)) {
    if (cutoff.empty()) cutoff.assign(nvars, kInf);
    if (cutoff.size() != nvars) throw std::invalid_argument("cutoff arity does not match variable count");
    for (double c : cutoff)
        if (!(c >= 0.0)) throw std::invalid_argument("cutoff must be >= 0");
    if (!supports_.empty() && supports_.size() != nvars)
        throw std::invalid_argument("support arity does not match variable count");
    box_.x_cutoff = std::move(cutoff);
    if (all_infinite(box_.x_cutoff)) tail_ = TailBound::exact_tail(nvars);
}

GenSeries GenSeries::constant(cplx c, std::size_t nvars) {
    GenSeries s(nvars);
    s.add_term(std::vector<Exponent>(nvars, Exponent(0.0)), c);
    return s;
}

GenSeries GenSeries::monomial(std::vector<Exponent> e, cplx c) {
    GenSeries s(e.size());
    s.add_term(e, c);
    return s;
}

GenSeries GenSeries::univariate(const std::vector<std::pair<Exponent, cplx>>& terms, double cutoff) {
    GenSeries s(1, {cutoff});
    bool dropped = false;
    for (const auto& [e, c] : terms) {
        if (exponent_less(cutoff, e.value)) dropped = true;
        s.add_term(e, c);
    }
    if (!dropped) s.tail_ = TailBound::exact_tail(1);
    return s;
}

GenSeries& GenSeries::add_term(const std::vector<Exponent>& e, cplx c) {
    if (e.size() != nvars_) throw std::invalid_argument("term arity does not match variable count");
    Monomial m;
    m.x = e;
    for (auto& x : m.x) {
        if (x.value < -kMergeTolerance || !std::isfinite(x.value))
            throw std::invalid_argument("exponents must be finite and >= 0");
        if (x.value < 0.0) x = Exponent(0.0);
    }
    origin_.reset();
    if (box_.inside(m)) accumulate(terms_, m, c);
    return *this;
}

std::vector<SupportDescriptor> GenSeries::supports() const {
    if (!supports_.empty()) return supports_;
    std::vector<std::vector<double>> pts(nvars_);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i) pts[i].push_back(m.x[i].value);
    std::vector<SupportDescriptor> out;
    for (auto& p : pts) {
        p.push_back(0.0);
        out.push_back(SupportDescriptor::finite(std::move(p)));
    }
    return out;
}

cplx GenSeries::coefficient(const std::vector<double>& alpha) const {
    if (alpha.size() != nvars_) throw std::invalid_argument("coefficient index arity mismatch");
    Monomial m;
    for (double a : alpha) m.x.emplace_back(a);
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx GenSeries::constant_term() const { return coefficient(std::vector<double>(nvars_, 0.0)); }

GenSeries GenSeries::with_tail(std::optional<TailBound> t) const {
    if (t && t->radius.size() != nvars_) throw std::invalid_argument("tail radius arity mismatch");
    GenSeries s = *this;
    s.tail_ = std::move(t);
    s.origin_.reset();
    return s;
}

GenSeries GenSeries::with_supports(std::vector<SupportDescriptor> sup) const {
    if (!sup.empty() && sup.size() != nvars_) throw std::invalid_argument("support arity mismatch");
    GenSeries s = *this;
    s.supports_ = std::move(sup);
    return s;
}

GenSeries GenSeries::truncated(const std::vector<double>& cutoff) const {
    if (cutoff.size() != nvars_) throw std::invalid_argument("cutoff arity mismatch");
    GenSeries s(nvars_, cutoff, supports_);
    for (std::size_t i = 0; i < nvars_; ++i) s.box_.x_cutoff[i] = std::min(cutoff[i], box_.x_cutoff[i]);
    for (const auto& [m, c] : terms_)
        if (s.box_.inside(m)) s.terms_.emplace(m, c);
    s.tail_.reset();
    if (tail_) {
        bool any = false;
        if (tail_->exact()) {
            if (s.terms_.size() == terms_.size()) s.tail_ = tail_;
        } else {
            double extra = outside_mass(terms_, s.box_, tail_->radius, any);
            s.tail_ = TailBound{tail_->radius, tail_->bound + extra};
        }
    }
    return s;
}

bool GenSeries::same_jet(const GenSeries& o, double tol) const {
    if (nvars_ != o.nvars_) return false;
    auto close = [tol](cplx a, cplx b) {
        if (tol == 0.0) return a == b;
        return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
    };
    for (const auto& [m, c] : terms_) {
        auto it = o.terms_.find(m);
        if (!close(c, it == o.terms_.end() ? cplx(0.0) : it->second)) return false;
    }
    for (const auto& [m, c] : o.terms_)
        if (terms_.find(m) == terms_.end() && !close(c, 0.0)) return false;
    return true;
}

std::string GenSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0) os << c.real();
        else os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        for (std::size_t i = 0; i < m.x.size(); ++i) {
            if (m.x[i].value == 0.0) continue;
            os << "*X" << (nvars_ > 1 ? std::to_string(i + 1) : "");
            if (m.x[i].value != 1.0) os << "^" << m.x[i].to_string();
        }
    }
    return os.str();
}

GenSeries add(const GenSeries& f, const GenSeries& g) {
    require_same_arity(f, g);
    JetBox box = JetBox::meet(f.box(), g.box());
    GenSeries out(f.nvars(), box.x_cutoff, merged_supports(f, g));
    TermMap& t = out.mutable_terms();
    for (const auto& [m, c] : f.terms())
        if (box.inside(m)) accumulate(t, m, c);
    for (const auto& [m, c] : g.terms())
        if (box.inside(m)) accumulate(t, m, c);

    std::optional<TailBound> tail;
    if (f.tail() && g.tail()) {
        auto r = min_radius(*f.tail(), *g.tail());
        bool af = false, ag = false;
        if (all_infinite(r)) {
            // Both exact: still exact only if the meet of the boxes cut nothing.
            std::vector<double> unit(f.nvars(), 1.0);
            outside_mass(f.terms(), box, unit, af);
            outside_mass(g.terms(), box, unit, ag);
            if (!af && !ag) tail = TailBound::exact_tail(f.nvars());
        } else {
            double dropped = outside_mass(f.terms(), box, r, af) + outside_mass(g.terms(), box, r, ag);
            double b = f.tail()->bound + g.tail()->bound + dropped;
            if (std::isfinite(b)) tail = TailBound{r, b};
        }
    }
    return out.with_tail(tail);
}

GenSeries scale(const GenSeries& f, cplx c) {
    GenSeries out(f.nvars(), f.cutoff(), f.has_declared_supports() ? f.supports() : std::vector<SupportDescriptor>{});
    for (const auto& [m, a] : f.terms()) accumulate(out.mutable_terms(), m, a * c);
    std::optional<TailBound> tail = f.tail();
    if (tail && !tail->exact()) tail->bound *= std::abs(c);
    return out.with_tail(tail);
}

GenSeries sub(const GenSeries& f, const GenSeries& g) { return add(f, scale(g, -1.0)); }

GenSeries mul(const GenSeries& f, const GenSeries& g) {
    require_same_arity(f, g);
    JetBox box = JetBox::meet(f.box(), g.box());
    std::optional<std::vector<double>> r;
    if (f.tail() && g.tail()) r = min_radius(*f.tail(), *g.tail());
    const bool weigh = r && all_finite(*r);
    auto prod = kernels::cauchy_product(f.terms(), g.terms(), box, weigh ? &*r : nullptr);

    GenSeries out(f.nvars(), box.x_cutoff, merged_supports(f, g));
    out.mutable_terms() = std::move(prod.terms);

    std::optional<TailBound> tail;
    if (r) {
        if (weigh) {
            double tf = f.tail()->bound, tg = g.tail()->bound;
            double nf = weighted_abs_sum(f.terms(), *r), ng = weighted_abs_sum(g.terms(), *r);
            double b = prod.dropped_mass + nf * tg + tf * ng + tf * tg;
            if (std::isfinite(b)) tail = TailBound{*r, b};
        } else if (all_infinite(*r)) {
            // Both exact: certified only if nothing was cut away.
            auto full = kernels::cauchy_product(f.terms(), g.terms(), JetBox{}, nullptr);
            if (full.terms.size() == out.terms().size()) tail = TailBound::exact_tail(f.nvars());
        }
    }
    return out.with_tail(tail);
}

CertifiedReal norm_r(const GenSeries& f, const std::vector<double>& r) {
    if (r.size() != f.nvars()) throw std::invalid_argument("polyradius arity mismatch");
    for (double x : r)
        if (!(x > 0.0)) throw std::invalid_argument("norm radius must be > 0");
    CertifiedReal out;
    out.value = weighted_abs_sum(f.terms(), r);
    const auto& t = f.tail();
    if (!t) {
        out.lower_bound_only = true;
        return out;
    }
    if (t->exact()) return out;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > t->radius[i]) {
            out.lower_bound_only = true;
            return out;
        }
    out.tail = t->bound;
    out.value += t->bound;
    return out;
}

double ord(const GenSeries& f) {
    double best = kInf;
    for (const auto& [m, c] : f.terms()) best = std::min(best, m.x_total());
    return best;
}

double ord_i(const GenSeries& f, std::size_t i) {
    if (i >= f.nvars()) throw std::out_of_range("variable index out of range");
    double best = kInf;
    for (const auto& [m, c] : f.terms()) best = std::min(best, m.x[i].value);
    return best;
}

GenSeries monomial_divide(const GenSeries& f, std::size_t i, Exponent gamma) {
    if (i >= f.nvars()) throw std::out_of_range("variable index out of range");
    if (gamma.value < 0.0) throw std::invalid_argument("monomial exponent must be >= 0");
    double o = ord_i(f, i);
    if (exponent_less(o, gamma.value))
        throw std::domain_error("cannot divide by X" + std::to_string(i + 1) + "^" + gamma.to_string() +
                                ": minimal exponent in that variable is " + Exponent(o).to_string());
    auto cut = f.cutoff();
    cut[i] = std::max(0.0, cut[i] - gamma.value);
    std::vector<SupportDescriptor> sup;
    if (f.has_declared_supports()) {
        sup = f.supports();
        sup[i] = SupportDescriptor::shifted(sup[i], gamma.value);
    }
    GenSeries out(f.nvars(), cut, sup);
    for (const auto& [key, c] : f.terms()) {
        Monomial m = key;
        m.x[i] = m.x[i] - gamma;
        if (std::abs(m.x[i].value) <= kMergeTolerance) m.x[i] = Exponent(0.0);
        out.mutable_terms().emplace(std::move(m), c);
    }
    std::optional<TailBound> tail = f.tail();
    if (tail && !tail->exact()) tail->bound /= std::pow(tail->radius[i], gamma.value);
    return out.with_tail(tail);
}

GenSeries formal_gamma_weight(const GenSeries& f, double lambda, int sign) {
    if (f.nvars() != 1) throw std::invalid_argument("formal transforms need a one-variable series");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    GenSeries out(1, f.cutoff(), f.has_declared_supports() ? f.supports() : std::vector<SupportDescriptor>{});
    for (const auto& [m, c] : f.terms()) {
        double a = m.x[0].value;
        if (a == 0.0) {
            if (sign > 0) out.mutable_terms().emplace(m, c);
            continue;
        }
        cplx v = sign < 0 ? div_gamma(c, a * lambda) : mul_gamma(c, a * lambda);
        if (v != cplx(0.0)) out.mutable_terms().emplace(m, v);
    }
    std::optional<TailBound> tail;
    if (f.is_exact()) tail = TailBound::exact_tail(1);
    return out.with_tail(tail);
}

namespace {

GenSeries drop_constant(GenSeries s) {
    // Untouched series keep their own origin, so chains of transforms invert exactly.
    if (s.constant_term() == cplx(0.0)) return s;
    TermMap& t = s.mutable_terms();
    for (auto it = t.begin(); it != t.end();) {
        if (it->first.x_total() == 0.0) it = t.erase(it);
        else ++it;
    }
    return s;
}

}  // namespace

GenSeries formal_borel(const GenSeries& f, double lambda) {
    if (f.origin_ && f.origin_->sign > 0 && f.origin_->lambda == lambda) return drop_constant(*f.origin_->series);
    GenSeries out = formal_gamma_weight(f, lambda, -1);
    out.origin_ = std::make_shared<const GenSeries::Origin>(
        GenSeries::Origin{std::make_shared<const GenSeries>(f), lambda, -1});
    return out;
}

GenSeries formal_laplace(const GenSeries& f, double lambda) {
    if (f.origin_ && f.origin_->sign < 0 && f.origin_->lambda == lambda) return drop_constant(*f.origin_->series);
    GenSeries out = formal_gamma_weight(f, lambda, +1);
    out.origin_ = std::make_shared<const GenSeries::Origin>(
        GenSeries::Origin{std::make_shared<const GenSeries>(f), lambda, +1});
    return out;
}

CertifiedComplex eval_logsum(const GenSeries& f, const LogPoint& w) {
    if (w.size() != f.nvars()) throw std::invalid_argument("evaluation point arity mismatch");
    CertifiedComplex out;
    out.value = kernels::logsum_at(f.terms(), w);
    const auto& t = f.tail();
    if (!t) {
        out.certified = false;
        out.error = kInf;
        return out;
    }
    if (t->exact()) return out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(w[i].re() <= std::log(t->radius[i]))) {
            out.certified = false;
            out.error = kInf;
            return out;
        }
    out.error = t->bound;
    return out;
}

GenSeries restrict_fiber(const GenSeries& f, std::size_t i, LogCoord a) {
    if (i >= f.nvars()) throw std::out_of_range("variable index out of range");
    const auto& t = f.tail();
    if (t && !t->exact() && !(a.re() < std::log(t->radius[i])))
        throw std::domain_error("fiber value e^a lies outside the certified radius in variable " + std::to_string(i + 1));
    std::vector<double> cut;
    for (std::size_t k = 0; k < f.nvars(); ++k)
        if (k != i) cut.push_back(f.cutoff()[k]);
    std::vector<SupportDescriptor> sup;
    if (f.has_declared_supports()) {
        auto s = f.supports();
        for (std::size_t k = 0; k < s.size(); ++k)
            if (k != i) sup.push_back(s[k]);
    }
    GenSeries out(f.nvars() - 1, cut, sup);
    for (const auto& [m, c] : f.terms()) {
        cplx v = c * a.exp_scaled(m.x[i].value);
        Monomial r;
        for (std::size_t k = 0; k < m.x.size(); ++k)
            if (k != i) r.x.push_back(m.x[k]);
        accumulate(out.mutable_terms(), r, v);
    }
    std::optional<TailBound> tail;
    if (t) {
        if (t->exact()) {
            tail = TailBound::exact_tail(out.nvars());
        } else {
            std::vector<double> rr;
            for (std::size_t k = 0; k < f.nvars(); ++k)
                if (k != i) rr.push_back(t->radius[k]);
            tail = TailBound{rr, t->bound};
        }
    }
    return out.with_tail(tail);
}

std::vector<MonomialPiece> split_by_monomials(const GenSeries& f) {
    if (f.constant_term() != cplx(0.0)) throw std::domain_error("split_by_monomials needs a zero constant term");
    const std::size_t m = f.nvars();
    std::vector<TermMap> buckets(m);
    std::vector<double> gamma(m, kInf);
    std::vector<Exponent> gamma_exp(m);
    for (const auto& [mono, c] : f.terms()) {
        std::size_t i = 0;
        while (i < m && mono.x[i].value == 0.0) ++i;
        buckets[i].emplace(mono, c);
        if (mono.x[i].value < gamma[i]) {
            gamma[i] = mono.x[i].value;
            gamma_exp[i] = mono.x[i];
        }
    }
    std::vector<MonomialPiece> out;
    for (std::size_t i = 0; i < m; ++i) {
        if (buckets[i].empty()) continue;
        GenSeries part(m, f.cutoff());
        part.mutable_terms() = buckets[i];
        part = part.with_tail(f.tail());
        out.push_back({i, gamma_exp[i], monomial_divide(part, i, gamma_exp[i])});
    }
    return out;
}

}  // namespace gps
