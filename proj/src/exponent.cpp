#include "gps/exponent.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gps {

namespace {

bool mul_overflows(std::int64_t a, std::int64_t b, std::int64_t& out) {
    return __builtin_mul_overflow(a, b, &out);
}

ExponentTag make_rational(std::int64_t p, std::int64_t q) {
    if (q < 0) {
        p = -p;
        q = -q;
    }
    std::int64_t g = std::gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return {ExponentTag::Kind::rational, p, q};
}

ExponentTag add_tags(const ExponentTag& a, const ExponentTag& b) {
    using K = ExponentTag::Kind;
    if (a.kind == K::rational && a.num == 0) return b;
    if (b.kind == K::rational && b.num == 0) return a;
    if (a.kind == K::rational && b.kind == K::rational) {
        std::int64_t x, y, d;
        if (mul_overflows(a.num, b.den, x) || mul_overflows(b.num, a.den, y) || mul_overflows(a.den, b.den, d))
            return {};
        std::int64_t n;
        if (__builtin_add_overflow(x, y, &n)) return {};
        return make_rational(n, d);
    }
    if (a.kind == K::log_int && b.kind == K::log_int) {
        std::int64_t n;
        if (mul_overflows(a.num, b.num, n)) return {};
        return {K::log_int, n, 1};
    }
    return {};
}

}  // namespace

ExponentTag ExponentTag::rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::invalid_argument("rational exponent with zero denominator");
    return make_rational(p, q);
}

ExponentTag ExponentTag::log_of(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("log(n) exponent needs n >= 1");
    if (n == 1) return {Kind::rational, 0, 1};
    return {Kind::log_int, n, 1};
}

Exponent::Exponent(double v) : value(v), tag{} {
    if (v == 0.0) tag = {ExponentTag::Kind::rational, 0, 1};
    else if (v == std::floor(v) && std::abs(v) < 1e15)
        tag = {ExponentTag::Kind::rational, static_cast<std::int64_t>(v), 1};
}

Exponent Exponent::rational(std::int64_t p, std::int64_t q) {
    auto t = ExponentTag::rational(p, q);
    return {static_cast<double>(t.num) / static_cast<double>(t.den), t};
}

Exponent Exponent::log_of(std::int64_t n) {
    return {std::log(static_cast<double>(n)), ExponentTag::log_of(n)};
}

std::string Exponent::to_string() const {
    switch (tag.kind) {
        case ExponentTag::Kind::rational:
            if (tag.den == 1) return std::to_string(tag.num);
            return std::to_string(tag.num) + "/" + std::to_string(tag.den);
        case ExponentTag::Kind::log_int:
            return "log(" + std::to_string(tag.num) + ")";
        case ExponentTag::Kind::none:
            break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
    return {a.value + b.value, add_tags(a.tag, b.tag)};
}

Exponent operator-(const Exponent& a, const Exponent& b) {
    using K = ExponentTag::Kind;
    ExponentTag t{};
    if (b.tag.kind == K::rational && b.tag.num == 0) t = a.tag;
    else if (a.tag.kind == K::rational && b.tag.kind == K::rational)
        t = add_tags(a.tag, {K::rational, -b.tag.num, b.tag.den});
    else if (a.tag.kind == K::log_int && b.tag.kind == K::log_int && a.tag.num % b.tag.num == 0)
        t = ExponentTag::log_of(a.tag.num / b.tag.num);
    double v = a.value - b.value;
    if (t.kind == K::rational && t.num == 0) v = 0.0;
    return {v, t};
}

Exponent scale(const Exponent& a, double factor, const ExponentTag& factor_tag) {
    using K = ExponentTag::Kind;
    ExponentTag t{};
    if (a.tag.kind == K::rational && a.tag.num == 0) t = a.tag;
    else if (a.tag.kind == K::rational && factor_tag.kind == K::rational) {
        std::int64_t n, d;
        if (!mul_overflows(a.tag.num, factor_tag.num, n) && !mul_overflows(a.tag.den, factor_tag.den, d))
            t = make_rational(n, d);
    }
    return {a.value * factor, t};
}

Exponent parse_exponent(const std::string& token) {
    if (token.rfind("log(", 0) == 0 && token.size() > 5 && token.back() == ')') {
        std::string inner = token.substr(4, token.size() - 5);
        std::size_t used = 0;
        long long n = std::stoll(inner, &used);
        if (used != inner.size()) throw std::invalid_argument("bad log exponent '" + token + "'");
        return Exponent::log_of(n);
    }
    if (auto slash = token.find('/'); slash != std::string::npos) {
        std::string ps = token.substr(0, slash), qs = token.substr(slash + 1);
        std::size_t u1 = 0, u2 = 0;
        long long p = std::stoll(ps, &u1), q = std::stoll(qs, &u2);
        if (u1 != ps.size() || u2 != qs.size()) throw std::invalid_argument("bad rational exponent '" + token + "'");
        return Exponent::rational(p, q);
    }
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument("bad exponent '" + token + "'");
    return Exponent(v);
}

}  // namespace gps
