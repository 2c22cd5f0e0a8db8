#include "gps/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gps::kernels {

namespace {

double pair_weight(const Monomial& m, const std::vector<double>& r) {
    double w = 1.0;
    for (std::size_t i = 0; i < m.x.size(); ++i)
        if (m.x[i].value != 0.0) w *= std::pow(r[i], m.x[i].value);
    return w;
}

}  // namespace

bool use_threads(std::size_t work) {
#ifdef _OPENMP
    return omp_get_max_threads() > 1 && work >= 4096;
#else
    (void)work;
    return false;
#endif
}

ProductResult cauchy_product_serial(const TermMap& a, const TermMap& b, const JetBox& box,
                                    const std::vector<double>* weight_radius) {
    ProductResult out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma + mb;
            if (box.inside(m)) accumulate(out.terms, m, ca * cb);
            else if (weight_radius) out.dropped_mass += std::abs(ca) * std::abs(cb) * pair_weight(m, *weight_radius);
        }
    return out;
}

ProductResult cauchy_product_omp(const TermMap& a, const TermMap& b, const JetBox& box,
                                 const std::vector<double>* weight_radius) {
    std::vector<std::pair<const Monomial*, cplx>> rows;
    rows.reserve(a.size());
    for (const auto& [m, c] : a) rows.emplace_back(&m, c);

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<ProductResult> partial(static_cast<std::size_t>(nthreads));
    const long n = static_cast<long>(rows.size());

#pragma omp parallel num_threads(nthreads)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        ProductResult& mine = partial[static_cast<std::size_t>(tid)];
        // Static contiguous blocks keep the merge order deterministic.
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i) {
            const auto& [ma, ca] = rows[static_cast<std::size_t>(i)];
            for (const auto& [mb, cb] : b) {
                Monomial m = *ma + mb;
                if (box.inside(m)) accumulate(mine.terms, m, ca * cb);
                else if (weight_radius) mine.dropped_mass += std::abs(ca) * std::abs(cb) * pair_weight(m, *weight_radius);
            }
        }
    }

    ProductResult out = std::move(partial[0]);
    for (std::size_t t = 1; t < partial.size(); ++t) {
        for (const auto& [m, c] : partial[t].terms) accumulate(out.terms, m, c);
        out.dropped_mass += partial[t].dropped_mass;
    }
    return out;
}

ProductResult cauchy_product(const TermMap& a, const TermMap& b, const JetBox& box,
                             const std::vector<double>* weight_radius, Exec exec) {
    bool par = exec == Exec::parallel || (exec == Exec::automatic && use_threads(a.size() * b.size()));
    return par ? cauchy_product_omp(a, b, box, weight_radius) : cauchy_product_serial(a, b, box, weight_radius);
}

cplx logsum_at(const TermMap& t, const LogPoint& w) {
    cplx s = 0.0;
    for (const auto& [m, c] : t) {
        cplx term = c;
        for (std::size_t i = 0; i < m.x.size(); ++i) {
            if (m.x[i].value == 0.0) continue;
            term *= w[i].exp_scaled(m.x[i].value);
        }
        s += term;
    }
    return s;
}

std::vector<cplx> logsum_grid_serial(const TermMap& t, const std::vector<LogPoint>& points) {
    std::vector<cplx> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = logsum_at(t, points[k]);
    return out;
}

std::vector<cplx> logsum_grid_omp(const TermMap& t, const std::vector<LogPoint>& points) {
    std::vector<cplx> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = logsum_at(t, points[static_cast<std::size_t>(k)]);
    return out;
}

std::vector<cplx> logsum_grid(const TermMap& t, const std::vector<LogPoint>& points, Exec exec) {
    bool par = exec == Exec::parallel || (exec == Exec::automatic && use_threads(t.size() * points.size()));
    return par ? logsum_grid_omp(t, points) : logsum_grid_serial(t, points);
}

}  // namespace gps::kernels
