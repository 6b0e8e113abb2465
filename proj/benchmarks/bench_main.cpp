#include <benchmark/benchmark.h>

#include "orbitlab/lattice.hpp"
#include "orbitlab/rootsys.hpp"
#include "orbitlab/volume.hpp"

using namespace orbitlab;

static void BM_EnumerateBall2d(benchmark::State& state) {
    LatticeSpec lat{LatticeFamily::SL, 2};
    NormSpec norm = EntrywisePNorm{2.0};
    double T = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_ball(lat, norm, T));
}
BENCHMARK(BM_EnumerateBall2d)->Arg(50)->Arg(100)->Arg(200);

static void BM_HaarVolumeSl2(benchmark::State& state) {
    GroupSpec gs = make_sl(2);
    SkewBall ball{gs, EntrywisePNorm{2.0}, RealMatrix::identity(2), RealMatrix::identity(2)};
    double T = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(haar_volume(ball, T, VolumeMethod::Quadrature, {}, 16).value);
}
BENCHMARK(BM_HaarVolumeSl2)->Arg(100)->Arg(1000);

static void BM_NormEval(benchmark::State& state) {
    NormSpec norm = EntrywisePNorm{2.0};
    RealMatrix m(3, 3, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(norm_eval(norm, m));
}
BENCHMARK(BM_NormEval);

BENCHMARK_MAIN();
