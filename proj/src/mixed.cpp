#include "gps/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gps/kernels.hpp"

namespace gps {

namespace {

void require_same_shape(const MixedSeries& f, const MixedSeries& g) {
    if (f.m() != g.m() || f.n() != g.n())
        throw std::invalid_argument("mixed series shape mismatch: (" + std::to_string(f.m()) + "," +
                                    std::to_string(f.n()) + ") vs (" + std::to_string(g.m()) + "," +
                                    std::to_string(g.n()) + ")");
}

Monomial zero_monomial(std::size_t m, std::size_t n) {
    Monomial z;
    z.x.assign(m, Exponent(0.0));
    z.y.assign(n, 0);
    return z;
}

}  // namespace

MixedSeries::MixedSeries(std::size_t m, std::size_t n, std::vector<double> x_cutoff, int y_degree) : m_(m), n_(n) {
    if (x_cutoff.empty()) x_cutoff.assign(m, kInf);
    if (x_cutoff.size() != m) throw std::invalid_argument("x cutoff arity mismatch");
    box_.x_cutoff = std::move(x_cutoff);
    box_.y_degree = y_degree;
}

MixedSeries MixedSeries::constant(cplx c, std::size_t m, std::size_t n, std::vector<double> x_cutoff, int y_degree) {
    MixedSeries s(m, n, std::move(x_cutoff), y_degree);
    accumulate(s.jet_, zero_monomial(m, n), c);
    return s;
}

MixedSeries MixedSeries::from_series(const GenSeries& f, std::size_t n, int y_degree) {
    MixedSeries s(f.nvars(), n, f.cutoff(), y_degree);
    for (const auto& [key, c] : f.terms()) {
        Monomial mono = key;
        mono.y.assign(n, 0);
        s.jet_.emplace(std::move(mono), c);
    }
    return s;
}

MixedSeries MixedSeries::x_var(std::size_t i, std::size_t m, std::size_t n, std::vector<double> x_cutoff,
                               int y_degree) {
    MixedSeries s(m, n, std::move(x_cutoff), y_degree);
    Monomial mono = zero_monomial(m, n);
    mono.x.at(i) = Exponent(1.0);
    if (s.box_.inside(mono)) s.jet_.emplace(mono, 1.0);
    return s;
}

MixedSeries MixedSeries::y_var(std::size_t j, std::size_t m, std::size_t n, std::vector<double> x_cutoff,
                               int y_degree) {
    MixedSeries s(m, n, std::move(x_cutoff), y_degree);
    Monomial mono = zero_monomial(m, n);
    mono.y.at(j) = 1;
    if (s.box_.inside(mono)) s.jet_.emplace(mono, 1.0);
    return s;
}

MixedSeries& MixedSeries::add_term(const std::vector<Exponent>& x, const std::vector<std::uint32_t>& y, cplx c) {
    if (x.size() != m_ || y.size() != n_) throw std::invalid_argument("term arity mismatch");
    Monomial mono{x, y};
    for (auto& e : mono.x) {
        if (e.value < -kMergeTolerance || !std::isfinite(e.value))
            throw std::invalid_argument("exponents must be finite and >= 0");
        if (e.value < 0.0) e = Exponent(0.0);
    }
    if (box_.inside(mono)) accumulate(jet_, mono, c);
    return *this;
}

cplx MixedSeries::coefficient(const std::vector<double>& x, const std::vector<std::uint32_t>& y) const {
    Monomial mono;
    for (double v : x) mono.x.emplace_back(v);
    mono.y = y;
    auto it = jet_.find(mono);
    return it == jet_.end() ? cplx(0.0) : it->second;
}

cplx MixedSeries::constant_term() const { return coefficient(std::vector<double>(m_, 0.0), std::vector<std::uint32_t>(n_, 0)); }

GenSeries MixedSeries::y_coefficient(const std::vector<std::uint32_t>& beta) const {
    if (beta.size() != n_) throw std::invalid_argument("Y multi-index arity mismatch");
    GenSeries out(m_, box_.x_cutoff);
    for (const auto& [mono, c] : jet_)
        if (mono.y == beta) {
            Monomial x{mono.x, {}};
            out.mutable_terms().emplace(std::move(x), c);
        }
    return out;
}

bool MixedSeries::is_real() const {
    return std::all_of(jet_.begin(), jet_.end(), [](const auto& kv) { return kv.second.imag() == 0.0; });
}

bool MixedSeries::same_jet(const MixedSeries& o, double tol) const {
    if (m_ != o.m_ || n_ != o.n_) return false;
    auto close = [tol](cplx a, cplx b) {
        if (tol == 0.0) return a == b;
        return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
    };
    for (const auto& [mono, c] : jet_) {
        auto it = o.jet_.find(mono);
        if (!close(c, it == o.jet_.end() ? cplx(0.0) : it->second)) return false;
    }
    for (const auto& [mono, c] : o.jet_)
        if (jet_.find(mono) == jet_.end() && !close(c, 0.0)) return false;
    return true;
}

std::string MixedSeries::to_string() const {
    if (jet_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [mono, c] : jet_) {
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0) os << c.real();
        else os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        for (std::size_t i = 0; i < m_; ++i) {
            if (mono.x[i].value == 0.0) continue;
            os << "*X" << i + 1;
            if (mono.x[i].value != 1.0) os << "^" << mono.x[i].to_string();
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (mono.y[j] == 0) continue;
            os << "*Y" << j + 1;
            if (mono.y[j] != 1) os << "^" << mono.y[j];
        }
    }
    return os.str();
}

MixedSeries add(const MixedSeries& f, const MixedSeries& g) {
    require_same_shape(f, g);
    JetBox box = JetBox::meet(f.box(), g.box());
    MixedSeries out(f.m(), f.n(), box.x_cutoff, box.y_degree);
    for (const auto& [mono, c] : f.terms())
        if (box.inside(mono)) accumulate(out.mutable_terms(), mono, c);
    for (const auto& [mono, c] : g.terms())
        if (box.inside(mono)) accumulate(out.mutable_terms(), mono, c);
    return out;
}

MixedSeries scale(const MixedSeries& f, cplx c) {
    MixedSeries out(f.m(), f.n(), f.x_cutoff(), f.y_degree());
    for (const auto& [mono, a] : f.terms()) accumulate(out.mutable_terms(), mono, a * c);
    return out;
}

MixedSeries sub(const MixedSeries& f, const MixedSeries& g) { return add(f, scale(g, -1.0)); }

MixedSeries mul(const MixedSeries& f, const MixedSeries& g) {
    require_same_shape(f, g);
    JetBox box = JetBox::meet(f.box(), g.box());
    MixedSeries out(f.m(), f.n(), box.x_cutoff, box.y_degree);
    out.mutable_terms() = kernels::cauchy_product(f.terms(), g.terms(), box).terms;
    return out;
}

MixedSeries power(const MixedSeries& f, unsigned k) {
    MixedSeries acc = MixedSeries::constant(1.0, f.m(), f.n(), f.x_cutoff(), f.y_degree());
    MixedSeries base = f;
    while (k > 0) {
        if (k & 1u) acc = mul(acc, base);
        k >>= 1u;
        if (k) base = mul(base, base);
    }
    return acc;
}

MixedSeries truncate(const MixedSeries& f, std::vector<double> x_cutoff, int y_degree) {
    JetBox want{std::move(x_cutoff), y_degree};
    JetBox box = JetBox::meet(f.box(), want);
    MixedSeries out(f.m(), f.n(), box.x_cutoff, box.y_degree);
    for (const auto& [mono, c] : f.terms())
        if (box.inside(mono)) out.mutable_terms().emplace(mono, c);
    return out;
}

MixedSeries invert(const MixedSeries& f) {
    const cplx c = f.constant_term();
    if (c == cplx(0.0)) throw std::domain_error("series has zero constant term and is not a unit");
    // E = (F - c)/c has no constant term, so the powers of E climb out of the
    // box in finitely many steps.
    MixedSeries e = scale(sub(f, MixedSeries::constant(c, f.m(), f.n(), f.x_cutoff(), f.y_degree())), 1.0 / c);
    MixedSeries neg_e = scale(e, -1.0);
    MixedSeries sum = MixedSeries::constant(1.0, f.m(), f.n(), f.x_cutoff(), f.y_degree());
    MixedSeries p = sum;
    for (int k = 1;; ++k) {
        p = mul(p, neg_e);
        if (p.is_zero()) break;
        if (k > 100000) throw std::runtime_error("inversion did not terminate; cutoffs must be finite");
        sum = add(sum, p);
    }
    return scale(sum, 1.0 / c);
}

MixedSeries restrict_fiber(const MixedSeries& f, std::size_t i, LogCoord a) {
    if (i >= f.m()) throw std::out_of_range("only Gevrey variables can be fixed");
    std::vector<double> cut;
    for (std::size_t k = 0; k < f.m(); ++k)
        if (k != i) cut.push_back(f.x_cutoff()[k]);
    MixedSeries out(f.m() - 1, f.n(), cut, f.y_degree());
    for (const auto& [mono, c] : f.terms()) {
        Monomial r;
        for (std::size_t k = 0; k < f.m(); ++k)
            if (k != i) r.x.push_back(mono.x[k]);
        r.y = mono.y;
        accumulate(out.mutable_terms(), r, c * a.exp_scaled(mono.x[i].value));
    }
    return out;
}

cplx eval(const MixedSeries& f, const LogPoint& w, const std::vector<cplx>& y) {
    if (w.size() != f.m() || y.size() != f.n()) throw std::invalid_argument("evaluation point arity mismatch");
    cplx s = 0.0;
    for (const auto& [mono, c] : f.terms()) {
        cplx t = c;
        for (std::size_t i = 0; i < f.m(); ++i)
            if (mono.x[i].value != 0.0) t *= w[i].exp_scaled(mono.x[i].value);
        for (std::size_t j = 0; j < f.n(); ++j)
            if (mono.y[j] != 0) t *= std::pow(y[j], static_cast<int>(mono.y[j]));
        s += t;
    }
    return s;
}

}  // namespace gps
