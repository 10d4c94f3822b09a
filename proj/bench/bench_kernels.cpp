// Serial reference vs OpenMP kernels on the protocol register (A, B, e, f, g)
// with dims (d, d, d, 2, d).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "djrsp/kernels.hpp"

using namespace djrsp::kernels;

namespace {

std::vector<std::size_t> register_dims(std::size_t d) { return {d, d, d, 2, d}; }

std::vector<Complex> random_state(std::size_t n) {
    std::mt19937_64 g(7);
    std::normal_distribution<double> nd;
    std::vector<Complex> v(n);
    for (auto& x : v) x = {nd(g), nd(g)};
    return v;
}

std::size_t size_of(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (auto x : dims) n *= x;
    return n;
}

template <bool Parallel>
void apply_one_site(benchmark::State& st) {
    const auto d = static_cast<std::size_t>(st.range(0));
    const SiteSelection sel{register_dims(d), {2}};
    const auto in = random_state(size_of(sel.dims));
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (auto _ : st) benchmark::DoNotOptimize(Parallel ? apply_parallel(in, sel, m) : apply_serial(in, sel, m));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}

template <bool Parallel>
void apply_two_site(benchmark::State& st) {
    const auto d = static_cast<std::size_t>(st.range(0));
    const SiteSelection sel{register_dims(d), {0, 1}};
    const auto in = random_state(size_of(sel.dims));
    const auto n = static_cast<Eigen::Index>(d * d);
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(n, n);
    for (auto _ : st) benchmark::DoNotOptimize(Parallel ? apply_parallel(in, sel, m) : apply_serial(in, sel, m));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}

template <bool Parallel>
void project_site(benchmark::State& st) {
    const auto d = static_cast<std::size_t>(st.range(0));
    const auto dims = register_dims(d);
    const auto in = random_state(size_of(dims));
    const auto v = random_state(d);
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? project_parallel(in, dims, 0, v) : project_serial(in, dims, 0, v));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}

}  // namespace

BENCHMARK(apply_one_site<false>)->Name("apply_1site/serial")->Arg(4)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(apply_one_site<true>)->Name("apply_1site/parallel")->Arg(4)->Arg(8)->Arg(16)->Arg(24)->UseRealTime();
BENCHMARK(apply_two_site<false>)->Name("apply_2site/serial")->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(apply_two_site<true>)->Name("apply_2site/parallel")->Arg(4)->Arg(8)->Arg(16)->UseRealTime();
BENCHMARK(project_site<false>)->Name("project/serial")->Arg(4)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(project_site<true>)->Name("project/parallel")->Arg(4)->Arg(8)->Arg(16)->Arg(24)->UseRealTime();

BENCHMARK_MAIN();
