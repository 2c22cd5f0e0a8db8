#include "gps/quadrature.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gps {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

namespace {

struct Rule {
    std::vector<double> x, w;
    Rule() { gauss_legendre(15, x, w); }
};

const Rule& rule15() {
    static const Rule r;
    return r;
}

struct Piece {
    std::complex<double> value;
    double aux;
};

Piece gl15(const Integrand& f, double a, double b) {
    const Rule& r = rule15();
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    Piece p{0.0, 0.0};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        QuadSample s = f(c + h * r.x[i]);
        p.value += r.w[i] * s.value;
        p.aux += r.w[i] * s.aux;
    }
    p.value *= h;
    p.aux *= h;
    return p;
}

void adapt(const Integrand& f, double a, double b, const Piece& whole, double abs_floor, const QuadOptions& o,
           int depth, QuadOutcome& out) {
    const double m = 0.5 * (a + b);
    Piece left = gl15(f, a, m), right = gl15(f, m, b);
    std::complex<double> halves = left.value + right.value;
    double err = std::abs(whole.value - halves);
    if (err <= std::max(o.rel_tol * std::abs(halves), abs_floor) || depth >= o.max_depth || m <= a || m >= b) {
        if (depth >= o.max_depth && err > std::max(o.rel_tol * std::abs(halves), abs_floor)) out.converged = false;
        out.value += halves;
        out.aux += left.aux + right.aux;
        out.error += err;
        out.panels += 2;
        return;
    }
    adapt(f, a, m, left, 0.5 * abs_floor, o, depth + 1, out);
    adapt(f, m, b, right, 0.5 * abs_floor, o, depth + 1, out);
}

QuadOutcome one_panel(const Integrand& f, double a, double b, double total_width, const QuadOptions& o) {
    QuadOutcome out;
    out.value = 0.0;
    if (!(b > a)) return out;
    double floor = o.abs_tol * (b - a) / total_width;
    adapt(f, a, b, gl15(f, a, b), floor, o, 0, out);
    return out;
}

void check_breaks(const std::vector<double>& breaks) {
    if (breaks.size() < 2) throw std::invalid_argument("quadrature needs at least one panel");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] <= breaks[i + 1]) || !std::isfinite(breaks[i]) || !std::isfinite(breaks[i + 1]))
            throw std::invalid_argument("quadrature breakpoints must be finite and increasing");
}

void merge(QuadOutcome& into, const QuadOutcome& part) {
    into.value += part.value;
    into.aux += part.aux;
    into.error += part.error;
    into.panels += part.panels;
    into.converged = into.converged && part.converged;
}

}  // namespace

QuadOutcome integrate_panels_serial(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o) {
    check_breaks(breaks);
    const double total = std::max(breaks.back() - breaks.front(), 1e-300);
    QuadOutcome out;
    out.value = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) merge(out, one_panel(f, breaks[i], breaks[i + 1], total, o));
    return out;
}

QuadOutcome integrate_panels_omp(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o) {
    check_breaks(breaks);
    const double total = std::max(breaks.back() - breaks.front(), 1e-300);
    const long n = static_cast<long>(breaks.size()) - 1;
    std::vector<QuadOutcome> parts(static_cast<std::size_t>(n));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            parts[static_cast<std::size_t>(i)] =
                one_panel(f, breaks[static_cast<std::size_t>(i)], breaks[static_cast<std::size_t>(i) + 1], total, o);
        } catch (...) {
#pragma omp critical(gps_quad_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    QuadOutcome out;
    out.value = 0.0;
    for (const auto& p : parts) merge(out, p);
    return out;
}

QuadOutcome integrate_panels(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& o) {
    bool par = o.exec == kernels::Exec::parallel;
#ifdef _OPENMP
    // Nested calls (an integrand that itself integrates) stay serial.
    if (o.exec == kernels::Exec::automatic) par = omp_get_max_threads() > 1 && !omp_in_parallel() && breaks.size() > 4;
#endif
    return par ? integrate_panels_omp(f, breaks, o) : integrate_panels_serial(f, breaks, o);
}

QuadOutcome integrate(const Integrand& f, double a, double b, const QuadOptions& o, double max_width) {
    if (!(b >= a)) throw std::invalid_argument("integration bounds out of order");
    std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / max_width)));
    std::vector<double> breaks(n + 1);
    for (std::size_t i = 0; i <= n; ++i) breaks[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    breaks.back() = b;
    return integrate_panels(f, breaks, o);
}

QuadOutcome integrate(const std::function<std::complex<double>(double)>& f, double a, double b, const QuadOptions& o,
                      double max_width) {
    return integrate([&f](double t) { return QuadSample{f(t), 0.0}; }, a, b, o, max_width);
}

}  // namespace gps
