#pragma once

#include <memory>
#include <string>
#include <vector>

namespace gps {

// A natural subset of [0, inf) in one variable: every window [0, a) holds
// finitely many points. Immutable, cheap to copy (shared tree).
class SupportDescriptor {
public:
    enum class Kind { finite, arithmetic, log_integers, sum_closure, shifted, scaled };

    // Default: {0}.
    SupportDescriptor();

    static SupportDescriptor finite(std::vector<double> points);
    static SupportDescriptor arithmetic(double step);  // step * N
    static SupportDescriptor log_integers();           // { log n : n >= 1 }
    // Additive monoid generated by the union of a and b.
    static SupportDescriptor sum_closure(const SupportDescriptor& a, const SupportDescriptor& b);
    // { v - offset : v in base, v >= offset }.
    static SupportDescriptor shifted(const SupportDescriptor& base, double offset);
    // { factor * v : v in base }, factor > 0.
    static SupportDescriptor scaled(const SupportDescriptor& base, double factor);

    Kind kind() const;
    // Strictly increasing list of points <= cutoff. Throws std::length_error
    // when the window holds more than max_points.
    std::vector<double> enumerate(double cutoff, std::size_t max_points = 2'000'000) const;
    bool contains(double v) const;
    std::string describe() const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
    explicit SupportDescriptor(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

}  // namespace gps
