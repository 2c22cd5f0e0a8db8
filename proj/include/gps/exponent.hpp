#pragma once

#include <cstdint>
#include <string>

namespace gps {

// Two exponents closer than this are the same key.
inline constexpr double kMergeTolerance = 1e-12;

// Symbolic origin of an exponent. Used for exact merging and for display,
// never for arithmetic on the value itself.
struct ExponentTag {
    enum class Kind : std::uint8_t { none, rational, log_int };
    Kind kind = Kind::none;
    std::int64_t num = 0;  // rational numerator, or n for log(n)
    std::int64_t den = 1;

    static ExponentTag rational(std::int64_t p, std::int64_t q);
    static ExponentTag log_of(std::int64_t n);
    bool operator==(const ExponentTag&) const = default;
};

struct Exponent {
    double value = 0.0;
    ExponentTag tag{ExponentTag::Kind::rational, 0, 1};

    Exponent() = default;
    Exponent(double v);  // NOLINT: plain reals convert implicitly
    Exponent(double v, ExponentTag t) : value(v), tag(t) {}

    static Exponent rational(std::int64_t p, std::int64_t q);
    static Exponent log_of(std::int64_t n);

    std::string to_string() const;
};

// Sum of two exponents. Rational tags stay rational, log(a)+log(b) becomes
// log(ab); anything else drops the tag.
Exponent operator+(const Exponent& a, const Exponent& b);
// Difference a - b, used by monomial division. Tags survive when both are
// rational or both are log-integers with exact quotient.
Exponent operator-(const Exponent& a, const Exponent& b);
// Multiply by a positive real factor (ramification). A rational factor p/q
// keeps rational tags rational.
Exponent scale(const Exponent& a, double factor, const ExponentTag& factor_tag = {});

inline bool same_exponent(double a, double b) { return a - b <= kMergeTolerance && b - a <= kMergeTolerance; }
inline bool exponent_less(double a, double b) { return a < b - kMergeTolerance; }

// Parses "1.5", "3/2", "log(7)". Throws std::invalid_argument on junk.
Exponent parse_exponent(const std::string& token);

}  // namespace gps
