#include "gps/terms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gps {

double Monomial::x_total() const {
    double s = 0.0;
    for (const auto& e : x) s += e.value;
    return s;
}

std::uint32_t Monomial::y_total() const {
    std::uint32_t s = 0;
    for (auto d : y) s += d;
    return s;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
    if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) throw std::invalid_argument("monomial arity mismatch");
    Monomial m;
    m.x.resize(a.x.size());
    m.y.resize(a.y.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) m.x[i] = a.x[i] + b.x[i];
    for (std::size_t j = 0; j < a.y.size(); ++j) m.y[j] = a.y[j] + b.y[j];
    return m;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const std::size_t n = std::min(a.x.size(), b.x.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (exponent_less(a.x[i].value, b.x[i].value)) return true;
        if (exponent_less(b.x[i].value, a.x[i].value)) return false;
    }
    if (a.x.size() != b.x.size()) return a.x.size() < b.x.size();
    return a.y < b.y;
}

bool JetBox::inside(const Monomial& m) const {
    for (std::size_t i = 0; i < m.x.size() && i < x_cutoff.size(); ++i)
        if (exponent_less(x_cutoff[i], m.x[i].value)) return false;
    if (y_degree >= 0 && m.y_total() > static_cast<std::uint32_t>(y_degree)) return false;
    return true;
}

JetBox JetBox::meet(const JetBox& a, const JetBox& b) {
    JetBox out;
    out.x_cutoff.resize(std::max(a.x_cutoff.size(), b.x_cutoff.size()), kInf);
    for (std::size_t i = 0; i < out.x_cutoff.size(); ++i) {
        double ca = i < a.x_cutoff.size() ? a.x_cutoff[i] : kInf;
        double cb = i < b.x_cutoff.size() ? b.x_cutoff[i] : kInf;
        out.x_cutoff[i] = std::min(ca, cb);
    }
    if (a.y_degree < 0) out.y_degree = b.y_degree;
    else if (b.y_degree < 0) out.y_degree = a.y_degree;
    else out.y_degree = std::min(a.y_degree, b.y_degree);
    return out;
}

void accumulate(TermMap& t, const Monomial& m, cplx c) {
    if (c == cplx(0.0)) return;
    auto [it, fresh] = t.try_emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second == cplx(0.0)) t.erase(it);
}

double weighted_abs_sum(const TermMap& t, const std::vector<double>& rx, double ry) {
    double s = 0.0;
    for (const auto& [m, c] : t) {
        double w = std::abs(c);
        for (std::size_t i = 0; i < m.x.size(); ++i)
            if (m.x[i].value != 0.0) w *= std::pow(rx[i], m.x[i].value);
        if (!m.y.empty()) w *= std::pow(ry, static_cast<double>(m.y_total()));
        s += w;
    }
    return s;
}

}  // namespace gps
