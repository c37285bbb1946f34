#include <benchmark/benchmark.h>

#include "clusterft/concat.hpp"
#include "clusterft/diagrams.hpp"
#include "clusterft/gadgets.hpp"
#include "clusterft/oracle.hpp"

using namespace clusterft;

namespace {

void BM_BootstrapTrial(benchmark::State& state) {
    const Circuit c = build_verified_code_state(CodeStateKind::Zero);
    const NoiseSampler sampler(NoiseParams::standard(0.01));
    FrameEngine engine;
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.run(c, sampler, rng).accepted);
    }
}
BENCHMARK(BM_BootstrapTrial);

void BM_Level2HexaTrial(benchmark::State& state) {
    ExpandOptions opt;
    opt.gran = Granularity::level1();
    opt.inline_states = false;
    const Expansion e = expand(reduced(DiagramKind::Hexa), opt);
    const NoiseSampler sampler(NoiseParams::standard(0.01));
    FrameEngine engine;
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.run(e.circuit, sampler, rng).accepted);
    }
}
BENCHMARK(BM_Level2HexaTrial);

void BM_Level3HexaTrial(benchmark::State& state) {
    ExpandOptions opt;
    opt.gran = Granularity::level2();
    opt.inline_states = false;
    const Expansion e = expand(reduced(DiagramKind::Hexa), opt);
    const NoiseSampler sampler(NoiseParams::standard(0.005));
    FrameEngine engine;
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.run(e.circuit, sampler, rng).accepted);
    }
}
BENCHMARK(BM_Level3HexaTrial);

void BM_UnitLiftTrial(benchmark::State& state) {
    ExpandOptions opt;
    opt.gran = Granularity::level1();
    opt.inline_states = false;
    const Expansion e = expand(reduced(DiagramKind::Hexa), opt);
    NoiseParams p;
    p.p_meas = 0.005;
    const NoiseSampler sampler(p);
    FrameEngine engine;
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.run(e.circuit, sampler, rng).accepted);
    }
}
BENCHMARK(BM_UnitLiftTrial);

void BM_TableauBootstrap(benchmark::State& state) {
    const Circuit c = build_verified_code_state(CodeStateKind::Zero);
    const NoiseSampler sampler(NoiseParams::standard(0.01));
    StabilizerOracle oracle;
    const OracleReference ref = oracle.compute_reference(c);
    uint64_t s = 0;
    for (auto _ : state) {
        Rng err(s), branch(s + 1000);
        ++s;
        benchmark::DoNotOptimize(oracle.run(c, sampler, err, branch, ref).accepted);
    }
}
BENCHMARK(BM_TableauBootstrap);

}  // namespace

BENCHMARK_MAIN();
