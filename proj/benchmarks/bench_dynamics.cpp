#include <benchmark/benchmark.h>

#include "gsns/dynamics.hpp"
#include "gsns/rng.hpp"
#include "gsns/symbolic.hpp"
#include "gsns/tangent.hpp"

using namespace gsns;

namespace {

Vec random_state(int d, std::uint64_t seed) {
    Vec q(d);
    for (int c = 0; c < d; ++c) q[c] = rng::gaussian(seed, 7, static_cast<std::uint64_t>(c));
    return q;
}

void BM_BuildTriads(benchmark::State& state) {
    const auto lat = build_lattice(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto table = build_triads(lat);
        benchmark::DoNotOptimize(table.entries.data());
    }
}
BENCHMARK(BM_BuildTriads)->Arg(2)->Arg(4)->Arg(8);

void BM_Drift(benchmark::State& state) {
    const auto lat = build_lattice(static_cast<int>(state.range(0)));
    const auto tri = build_triads(lat);
    const System sys(lat, tri, {0.01, 1e-3, Scheme::euler_maruyama});
    const Vec q = random_state(lat.d(), 1);
    Vec out(lat.d());
    for (auto _ : state) {
        sys.drift_into(q.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Drift)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_JacobianApply(benchmark::State& state) {
    const auto lat = build_lattice(static_cast<int>(state.range(0)));
    const auto tri = build_triads(lat);
    const System sys(lat, tri, {0.01, 1e-3, Scheme::euler_maruyama});
    const Vec q = random_state(lat.d(), 1);
    const Vec v = random_state(lat.d(), 2);
    Vec out(lat.d());
    for (auto _ : state) {
        sys.jacobian_apply_into(q.data(), v.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_JacobianApply)->Arg(1)->Arg(2)->Arg(3);

void BM_EulerMaruyamaStep(benchmark::State& state) {
    const auto lat = build_lattice(static_cast<int>(state.range(0)));
    const auto tri = build_triads(lat);
    const System sys(lat, tri, {0.01, 1e-3, Scheme::euler_maruyama});
    ForcingPattern pat = ForcingPattern::zero(lat);
    pat.e1[lat.index_of({0, 1})] = pat.e2[lat.index_of({0, 1})] = 1.0;
    pat.e1[lat.index_of({1, 1})] = pat.e2[lat.index_of({1, 1})] = 1.0;
    constexpr int kSteps = 1 << 20;
    const auto path = sample_noise(pat, lat, 1e-3, kSteps, 3);
    Vec q = random_state(lat.d(), 1) * 0.1;
    Vec w1(lat.d()), w2(lat.d());
    int s = 0;
    for (auto _ : state) {
        sys.step_inplace(q, path, s++ & (kSteps - 1), w1, w2);
        benchmark::DoNotOptimize(q.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EulerMaruyamaStep)->Arg(2)->Arg(3);

void BM_TangentFrameStep(benchmark::State& state) {
    const auto lat = build_lattice(2);
    const auto tri = build_triads(lat);
    const System sys(lat, tri, {0.01, 1e-3, Scheme::euler_maruyama});
    const int p = static_cast<int>(state.range(0));
    const auto path = NoisePath::unforced(1e-3, 1);
    const Vec q = random_state(lat.d(), 1) * 0.1;
    Mat frame = Mat::Identity(lat.d(), p);
    Vec w1(lat.d()), w2(lat.d());
    Mat f1(lat.d(), p), f2(lat.d(), p);
    for (auto _ : state) {
        Vec qc = q;
        sys.step_state_and_frame(qc, frame, path, 0, w1, w2, f1, f2);
        benchmark::DoNotOptimize(frame.data());
    }
}
BENCHMARK(BM_TangentFrameStep)->Arg(1)->Arg(8)->Arg(24);

void BM_FindFreeSet(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<std::vector<int>> words;
    const int count = 1 << (n / 2);
    for (int w = 0; w < count; ++w) {
        std::vector<int> word(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            word[static_cast<std::size_t>(i)] =
                1 + static_cast<int>(rng::key3(17, static_cast<std::uint64_t>(w),
                                               static_cast<std::uint64_t>(i)) %
                                     2);
        }
        words.push_back(std::move(word));
    }
    const PatternFamily fam(n, 2, std::move(words));
    for (auto _ : state) {
        auto j = find_free_set(fam);
        benchmark::DoNotOptimize(j.data());
    }
}
BENCHMARK(BM_FindFreeSet)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
