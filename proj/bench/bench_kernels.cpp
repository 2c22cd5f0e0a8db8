// Serial reference kernels against their OpenMP versions.
//   ./bench_kernels --benchmark_filter=Cauchy

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "gps/kernels.hpp"
#include "gps/quadrature.hpp"

using namespace gps;

namespace {

TermMap random_terms(std::size_t nvars, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> c(-1, 1);
    std::uniform_int_distribution<int> e(0, 60);
    TermMap t;
    for (int i = 0; i < count; ++i) {
        Monomial m;
        for (std::size_t k = 0; k < nvars; ++k) m.x.push_back(Exponent(e(rng) * 0.25));
        accumulate(t, m, cplx(c(rng), c(rng)));
    }
    return t;
}

std::vector<LogPoint> random_points(int count) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4, 0.5), v(-1, 1);
    std::vector<LogPoint> pts;
    for (int i = 0; i < count; ++i)
        pts.push_back(LogPoint{LogCoord(cplx(u(rng), v(rng))), LogCoord(cplx(u(rng), v(rng)))});
    return pts;
}

template <bool Omp>
void BM_Cauchy(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    TermMap a = random_terms(2, n, 1), b = random_terms(2, n, 2);
    JetBox box{{10.0, 10.0}, -1};
    std::vector<double> r{0.9, 0.8};
    for (auto _ : st) {
        auto p = Omp ? kernels::cauchy_product_omp(a, b, box, &r) : kernels::cauchy_product_serial(a, b, box, &r);
        benchmark::DoNotOptimize(p.terms.size());
    }
    st.counters["threads"] = Omp ? omp_get_max_threads() : 1;
}

template <bool Omp>
void BM_LogsumGrid(benchmark::State& st) {
    TermMap t = random_terms(2, 400, 3);
    auto pts = random_points(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto v = Omp ? kernels::logsum_grid_omp(t, pts) : kernels::logsum_grid_serial(t, pts);
        benchmark::DoNotOptimize(v.data());
    }
    st.counters["threads"] = Omp ? omp_get_max_threads() : 1;
}

template <bool Omp>
void BM_Panels(benchmark::State& st) {
    // An oscillating integrand, so the panels cost roughly the same.
    Integrand f = [](double t) { return QuadSample{std::exp(std::complex<double>(-t * t / 50, 7 * t)), 0.0}; };
    std::vector<double> br;
    const int panels = static_cast<int>(st.range(0));
    for (int i = 0; i <= panels; ++i) br.push_back(-30.0 + 60.0 * i / panels);
    for (auto _ : st) {
        auto r = Omp ? integrate_panels_omp(f, br) : integrate_panels_serial(f, br);
        benchmark::DoNotOptimize(r.value);
    }
    st.counters["threads"] = Omp ? omp_get_max_threads() : 1;
}

}  // namespace

BENCHMARK(BM_Cauchy<false>)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Cauchy<true>)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LogsumGrid<false>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LogsumGrid<true>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Panels<false>)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Panels<true>)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
