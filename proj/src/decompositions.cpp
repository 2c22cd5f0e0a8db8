#include <cmath>
#include <memory>
#include <stdexcept>

#include "gps/quadrature.hpp"
#include "gps/resummation.hpp"

namespace gps {

namespace {

QuadOptions tight() {
    QuadOptions q;
    q.rel_tol = 1e-14;
    q.abs_tol = 1e-300;
    q.exec = kernels::Exec::serial;
    return q;
}

}  // namespace

TougeronDecomposition euler_decomposition(const EulerDecompositionOptions& o) {
    if (!(o.width > 0.0) || !(o.R * o.width < 1.0))
        throw std::invalid_argument("Euler pieces need R * width < 1 to converge on their disks");
    TougeronDecomposition d;
    d.tau = SummabilityParams::one_variable({1.0}, o.R, o.r, o.theta);
    d.tau.validate();
    // inf |1 + z t| over t >= 0 and |arg z| <= theta.
    const double sector_gap = o.theta > M_PI / 2 ? std::sin(M_PI - o.theta) : 1.0;
    if (!(sector_gap > 0.0)) throw std::invalid_argument("Euler decomposition needs theta < pi");
    const double Rt = o.R * o.width;  // rho_p times the right end of interval p
    const double N = static_cast<double>(o.terms);

    for (std::size_t p = 0; p < o.pieces; ++p) {
        const double a = static_cast<double>(p) * o.width, b = a + o.width;
        const double rho = rho_p(d.tau, p)[0];
        const double mass = std::exp(-a) - std::exp(-b);

        GenSeries F(1, {N + 1.0});
        for (std::size_t n = 0; n <= o.terms; ++n) {
            // c_{p,n} = int_a^b e^{-t} t^n dt; the recurrence in n loses
            // everything to cancellation for large p.
            const double dn = static_cast<double>(n);
            QuadOutcome c =
                integrate([dn](double t) { return cplx(std::exp(-t) * std::pow(t, dn)); }, a, b, tight(), o.width);
            F.add_term(Exponent(static_cast<double>(n + 1)), (n % 2 == 0 ? 1.0 : -1.0) * c.value.real());
        }
        const double tail = rho * mass * std::pow(Rt, N + 1.0) / (1.0 - Rt);
        F = F.with_tail(TailBound::at(1, rho, tail));

        TougeronPiece piece;
        piece.F = F;
        piece.F_norm = norm_r(F, rho).value;
        piece.f_norm = mass * std::max(o.R / sector_gap, rho / (1.0 - Rt));
        const double width = o.width;
        piece.f.eval = [a, b, width](cplx w) {
            const cplx z = std::exp(w);
            return integrate([z](double t) { return std::exp(-t) * z / (1.0 + z * t); }, a, b, tight(), width).value;
        };
        piece.f.domain = LogRegion::sector(0.0, std::log(o.R), o.theta);
        d.pieces.push_back(std::move(piece));
    }

    // Pieces p >= P: mass e^{-p width}(1 - e^{-width}), weights r^p.
    const double q = o.r * std::exp(-o.width);
    const double P = static_cast<double>(o.pieces);
    const double per = (1.0 - std::exp(-o.width));
    const double sup = std::max(o.R / sector_gap, o.R / (1.0 - Rt));
    if (q < 1.0) {
        const double geo = std::pow(q, P) / (1.0 - q);
        d.tail_F = o.R / (1.0 - Rt) * per * geo;
        d.tail_f = sup * per * geo;
    } else {
        d.tail_F = d.tail_f = kInf;
    }
    d.tail_value = sup * std::exp(-P * o.width);
    return d;
}

TougeronDecomposition convergent_decomposition(const GenSeries& F, const SummabilityParams& tau) {
    tau.validate();
    if (F.nvars() != tau.m()) throw std::invalid_argument("series and parameters differ in arity");
    const auto rho = rho_p(tau, 0);
    CertifiedReal n = norm_r(F, tau.R);
    if (n.lower_bound_only) throw std::invalid_argument("convergent decomposition needs a certified norm at R");
    TougeronDecomposition d;
    d.tau = tau;
    TougeronPiece piece;
    piece.F = F;
    piece.F_norm = norm_r(F, rho).value;
    piece.f_norm = n.value;
    if (F.nvars() == 1) {
        piece.f = F.is_exact() ? LogFunction::log_sum(F) : LogFunction::log_sum(F, tau.R[0]);
    } else {
        auto terms = std::make_shared<const TermMap>(F.terms());
        piece.f.eval = [terms](cplx w) { return kernels::logsum_at(*terms, LogPoint{LogCoord(w)}); };
    }
    d.pieces.push_back(std::move(piece));
    return d;
}

}  // namespace gps
