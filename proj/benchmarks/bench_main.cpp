#include <benchmark/benchmark.h>

#include <random>

#include "orw/automaton.hpp"
#include "orw/branchings.hpp"
#include "orw/enumerate.hpp"
#include "orw/parse.hpp"
#include "orw/presets.hpp"

using namespace orw;

namespace {

std::vector<Monomial> sample(const Alphabet& a, std::size_t n, std::size_t size) {
    std::mt19937_64 rng(7);
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_monomial(rng, a, size));
    return out;
}

void BM_Flatten(benchmark::State& st) {
    Preset p = load_preset("XPD", {"x", "y"}, 1);
    auto ms = sample(p.system->alphabet(), 256, st.range(0));
    for (auto _ : st)
        for (const auto& m : ms) benchmark::DoNotOptimize(unflatten(flatten(m)));
    st.SetItemsProcessed(st.iterations() * ms.size());
}
BENCHMARK(BM_Flatten)->Arg(8)->Arg(32);

void BM_PdaAccept(benchmark::State& st) {
    Preset p = load_preset("XPD", {"x", "y"}, 1);
    Pda a = preset_pda("A_Omega", p.system->gens, p.system->ops);
    std::vector<FlatWord> ws;
    for (const auto& m : sample(p.system->alphabet(), 256, st.range(0))) ws.push_back(flatten(m));
    for (auto _ : st)
        for (const auto& w : ws) benchmark::DoNotOptimize(pda_accepts(a, w));
    st.SetItemsProcessed(st.iterations() * ws.size());
}
BENCHMARK(BM_PdaAccept)->Arg(8)->Arg(32);

void BM_NormalForm(benchmark::State& st, const char* name) {
    Preset p = load_preset(name, {"x", "y"}, 1);
    auto ms = sample(p.system->alphabet(), 64, st.range(0));
    for (auto _ : st) {
        p.rewriter->clear_caches();
        for (const auto& m : ms) benchmark::DoNotOptimize(p.rewriter->normal_form(m));
    }
    st.SetItemsProcessed(st.iterations() * ms.size());
}
BENCHMARK_CAPTURE(BM_NormalForm, XD, "XD")->Arg(6)->Arg(10);
BENCHMARK_CAPTURE(BM_NormalForm, XP, "XP")->Arg(6)->Arg(10);
BENCHMARK_CAPTURE(BM_NormalForm, XPD, "XPD")->Arg(6)->Arg(8);

void BM_CriticalPairs(benchmark::State& st, const char* name) {
    Preset p = load_preset(name, {"x"}, 1);
    std::size_t n = 0;
    for (auto _ : st) {
        auto cps = critical_pairs(*p.rewriter, st.range(0));
        n = cps.size();
        benchmark::DoNotOptimize(cps);
    }
    st.counters["pairs"] = n;
}
BENCHMARK_CAPTURE(BM_CriticalPairs, XP, "XP")->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CriticalPairs, XPD, "XPD")->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
