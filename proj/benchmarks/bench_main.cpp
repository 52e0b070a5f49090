#include "causal/axioms.hpp"
#include "causal/decide.hpp"
#include "causal/formula_text.hpp"
#include "causal/model_text.hpp"
#include "causal/semantics.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

using namespace causal;

namespace {

std::string fixture(const std::string& name)
{
    std::ifstream in(std::string(CAUSAL_FIXTURE_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void BM_Solutions(benchmark::State& state)
{
    const auto model = parse_model(fixture("three_cycle.model"));
    const auto sub = submodel(model, {}, Context{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(solutions(sub));
    }
}
BENCHMARK(BM_Solutions);

void BM_Classify(benchmark::State& state)
{
    const auto model = parse_model(fixture("three_cycle.model"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(model));
    }
}
BENCHMARK(BM_Classify);

void BM_Affects(benchmark::State& state)
{
    const auto model = parse_model(fixture("three_cycle.model"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(affects(model, 0, 1));
    }
}
BENCHMARK(BM_Affects);

void BM_ValidC6(benchmark::State& state)
{
    const auto sig = parse_signature(fixture(state.range(0) == 0 ? "sigA.sig" : "sigB.sig"));
    const auto c6 = instantiate(Scheme::C6, Bindings{{}, {0, 1}, {}, {}}, sig).formula;
    for (auto _ : state) {
        benchmark::DoNotOptimize(valid(c6, sig, ModelClass::recursive));
    }
}
BENCHMARK(BM_ValidC6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SatisfiableGeneral(benchmark::State& state)
{
    const auto sig = parse_signature(fixture("sigB.sig"));
    // unsatisfiable in the general class, so the scan is exhaustive
    const auto f = parse_formula("[X<-0](Y()=1) & [X<-0](Y()=0)", sig);
    for (auto _ : state) {
        benchmark::DoNotOptimize(satisfiable(f, sig, ModelClass::general));
    }
}
BENCHMARK(BM_SatisfiableGeneral)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
