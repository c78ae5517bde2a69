#include <benchmark/benchmark.h>

#include "bgklt/brst.hpp"
#include "bgklt/currents.hpp"
#include "bgklt/klt.hpp"
#include "bgklt/mandelstam.hpp"
#include "bgklt/words.hpp"

using namespace bgklt;
using words::Word;

static void BM_phi_word(benchmark::State& state) {
    Word p = words::id_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = currents::phi_word(p);
        benchmark::DoNotOptimize(r);
    }
    state.SetLabel("terms=" + std::to_string(currents::phi_word(p).size()));
}
BENCHMARK(BM_phi_word)->DenseRange(4, 8);

static void BM_b_word(benchmark::State& state) {
    Word p = words::id_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = currents::b_word(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_b_word)->DenseRange(4, 8);

static void BM_phi_pair(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Word p = words::id_word(n);
    Word q = p.reversed();
    for (auto _ : state) {
        auto r = currents::phi_pair(p, q);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_phi_pair)->DenseRange(3, 7);

static void BM_s_fixed(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Word a;
    for (int l = 2; l <= n + 1; ++l) a = a.append(l);
    Word b = a.reversed();
    for (auto _ : state) {
        auto r = klt::s_fixed(a, b, 1);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_s_fixed)->DenseRange(3, 7);

static void BM_s_extended(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Word a = words::id_word(n);
    Word b = a.reversed();
    for (auto _ : state) {
        auto r = klt::s_extended(a, b);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_s_extended)->DenseRange(3, 6);

static void BM_m_current(benchmark::State& state) {
    Word p = words::id_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = currents::m_current(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_m_current)->DenseRange(3, 6);

static void BM_qm(benchmark::State& state) {
    Word p = words::id_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = brst::qm(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_qm)->DenseRange(2, 5);

static void BM_sigma(benchmark::State& state) {
    Word p = words::id_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = klt::sigma(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_sigma)->DenseRange(3, 7);

// the exact zero test on a nontrivial cancellation: ell(A) - b(sigma(A))
static void BM_rat_is_zero(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Word a = words::id_word(n);
    std::map<Word, mandelstam::MRatAcc> accs;
    currents::BCache bcache;
    for (const auto& [w, weight] : klt::sigma(a))
        for (const auto& [bw, c] : bcache.get_expansion(w))
            for (const auto& [mono, k] : weight) accs[bw].add_scaled(c, k, mono);
    for (const auto& [w, c] : words::ell(a)) accs[w].add(mandelstam::MRat::from_const(-c));
    std::vector<mandelstam::MRat> coeffs;
    for (auto& [w, acc] : accs) coeffs.push_back(acc.take());
    for (auto _ : state) {
        bool all = true;
        for (const auto& c : coeffs) all = all && mandelstam::rat_is_zero(c);
        benchmark::DoNotOptimize(all);
    }
}
BENCHMARK(BM_rat_is_zero)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
