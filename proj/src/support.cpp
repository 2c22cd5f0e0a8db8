#include "gps/support.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gps/exponent.hpp"

namespace gps {

struct SupportDescriptor::Node {
    Kind kind;
    std::vector<double> points;  // finite
    double step = 0.0;           // arithmetic step, or shift offset
    std::shared_ptr<const Node> a, b;
};

namespace {

void dedupe(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || exponent_less(out.back(), x)) out.push_back(x);
    v.swap(out);
}

}  // namespace

SupportDescriptor::SupportDescriptor() : SupportDescriptor(finite({0.0})) {}

SupportDescriptor SupportDescriptor::finite(std::vector<double> points) {
    for (double p : points)
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("support points must be finite and >= 0");
    dedupe(points);
    auto n = std::make_shared<Node>();
    n->kind = Kind::finite;
    n->points = std::move(points);
    return SupportDescriptor(n);
}

SupportDescriptor SupportDescriptor::arithmetic(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("arithmetic support needs step > 0");
    auto n = std::make_shared<Node>();
    n->kind = Kind::arithmetic;
    n->step = step;
    return SupportDescriptor(n);
}

SupportDescriptor SupportDescriptor::log_integers() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::log_integers;
    return SupportDescriptor(n);
}

SupportDescriptor SupportDescriptor::sum_closure(const SupportDescriptor& a, const SupportDescriptor& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::sum_closure;
    n->a = a.node_;
    n->b = b.node_;
    return SupportDescriptor(n);
}

SupportDescriptor SupportDescriptor::shifted(const SupportDescriptor& base, double offset) {
    if (!(offset >= 0.0)) throw std::invalid_argument("shift offset must be >= 0");
    if (offset == 0.0) return base;
    auto n = std::make_shared<Node>();
    n->kind = Kind::shifted;
    n->a = base.node_;
    n->step = offset;
    return SupportDescriptor(n);
}

SupportDescriptor SupportDescriptor::scaled(const SupportDescriptor& base, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw std::invalid_argument("scale factor must be > 0");
    if (factor == 1.0) return base;
    auto n = std::make_shared<Node>();
    n->kind = Kind::scaled;
    n->a = base.node_;
    n->step = factor;
    return SupportDescriptor(n);
}

SupportDescriptor::Kind SupportDescriptor::kind() const { return node_->kind; }

std::vector<double> SupportDescriptor::enumerate(double cutoff, std::size_t max_points) const {
    std::vector<double> out;
    if (cutoff < -kMergeTolerance) return out;
    const Node& n = *node_;
    auto check = [&] {
        if (out.size() > max_points) throw std::length_error("support window too large to enumerate");
    };
    switch (n.kind) {
        case Kind::finite:
            for (double p : n.points)
                if (!exponent_less(cutoff, p)) out.push_back(p);
            break;
        case Kind::arithmetic: {
            double kmax = std::floor(cutoff / n.step + 1e-9);
            for (double k = 0; k <= kmax; k += 1) {
                out.push_back(k * n.step);
                check();
            }
            break;
        }
        case Kind::log_integers: {
            double nmax = std::floor(std::exp(cutoff) * (1 + 1e-12));
            for (double k = 1; k <= nmax; k += 1) {
                out.push_back(std::log(k));
                check();
            }
            break;
        }
        case Kind::shifted: {
            auto base = SupportDescriptor(n.a).enumerate(cutoff + n.step, max_points);
            for (double v : base)
                if (!exponent_less(v, n.step)) out.push_back(std::max(0.0, v - n.step));
            dedupe(out);
            break;
        }
        case Kind::scaled:
            for (double v : SupportDescriptor(n.a).enumerate(cutoff / n.step, max_points)) out.push_back(v * n.step);
            break;
        case Kind::sum_closure: {
            auto ga = SupportDescriptor(n.a).enumerate(cutoff, max_points);
            auto gb = SupportDescriptor(n.b).enumerate(cutoff, max_points);
            std::vector<double> gens;
            for (double g : ga)
                if (g > kMergeTolerance) gens.push_back(g);
            for (double g : gb)
                if (g > kMergeTolerance) gens.push_back(g);
            dedupe(gens);
            // Breadth-first closure in increasing order.
            std::set<double> seen{0.0};
            std::vector<double> frontier{0.0};
            while (!frontier.empty()) {
                std::vector<double> next;
                for (double f : frontier)
                    for (double g : gens) {
                        double s = f + g;
                        if (exponent_less(cutoff, s)) break;
                        auto it = seen.lower_bound(s - kMergeTolerance);
                        if (it != seen.end() && same_exponent(*it, s)) continue;
                        seen.insert(s);
                        next.push_back(s);
                        if (seen.size() > max_points) throw std::length_error("support window too large to enumerate");
                    }
                frontier.swap(next);
            }
            out.assign(seen.begin(), seen.end());
            break;
        }
    }
    return out;
}

bool SupportDescriptor::contains(double v) const {
    if (v < -kMergeTolerance) return false;
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::finite:
            return std::any_of(n.points.begin(), n.points.end(), [&](double p) { return same_exponent(p, v); });
        case Kind::arithmetic: {
            double k = std::round(v / n.step);
            return same_exponent(k * n.step, v) || std::abs(k * n.step - v) <= 1e-9 * std::max(1.0, v);
        }
        case Kind::log_integers: {
            double k = std::round(std::exp(v));
            return k >= 1 && std::abs(std::log(k) - v) <= 1e-10;
        }
        case Kind::shifted:
            return SupportDescriptor(n.a).contains(v + n.step);
        case Kind::scaled:
            return SupportDescriptor(n.a).contains(v / n.step);
        case Kind::sum_closure: {
            auto pts = enumerate(v + 1e-9);
            return std::any_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - v) <= 1e-9 * std::max(1.0, v); });
        }
    }
    return false;
}

std::string SupportDescriptor::describe() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::finite: return "finite(" + std::to_string(n.points.size()) + ")";
        case Kind::arithmetic: return "arith:" + Exponent(n.step).to_string();
        case Kind::log_integers: return "logint";
        case Kind::sum_closure:
            return "sumclosure(" + SupportDescriptor(n.a).describe() + "," + SupportDescriptor(n.b).describe() + ")";
        case Kind::shifted: return "shift(" + SupportDescriptor(n.a).describe() + ")";
        case Kind::scaled: return "scale(" + SupportDescriptor(n.a).describe() + ")";
    }
    return "?";
}

}  // namespace gps
