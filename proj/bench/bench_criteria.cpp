#include "noninfo/equivalence.hpp"
#include "noninfo/optimizer.hpp"
#include "noninfo/parallel.hpp"
#include "noninfo/tables.hpp"

#include <benchmark/benchmark.h>

using namespace noninfo;

namespace
{

Exec exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const char* label(Exec e) { return e == Exec::Serial ? "serial" : "parallel"; }

// Compartment model: the only acceptance model with a two-dimensional prior grid.
void criterion_eval(benchmark::State& state, CriterionKind kind)
{
    const auto t = table_setup("5");
    const Criterion c(t.model, kind, t.box, {}, exec_of(state));
    const auto d = make_uniform_design(std::vector<double>{0.23, 1.43, 18.32}, t.model.design_space());
    for (auto _ : state)
        benchmark::DoNotOptimize(c.objective(d));
    state.SetLabel(label(exec_of(state)));
}

void BM_BayesD(benchmark::State& s) { criterion_eval(s, CriterionKind::BayesDUniform); }
void BM_Jeffreys(benchmark::State& s) { criterion_eval(s, CriterionKind::Jeffreys); }
void BM_BergerBernardo(benchmark::State& s) { criterion_eval(s, CriterionKind::BergerBernardo); }
void BM_FunctionalUniform(benchmark::State& s) { criterion_eval(s, CriterionKind::BayesDFunctionalUniform); }

void BM_Verify(benchmark::State& state)
{
    const auto t = table_setup("1");
    const Criterion c(t.model, CriterionKind::BergerBernardo, t.box, {}, exec_of(state));
    const auto d = make_uniform_design(std::vector<double>{0.0, 0.2177, 0.6497, 1.0}, t.model.design_space());
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_design(d, c));
    state.SetLabel(label(exec_of(state)));
}

void BM_Optimize(benchmark::State& state)
{
    const auto t = table_setup("3");
    const Criterion c(t.model, CriterionKind::Jeffreys, t.box, {}, exec_of(state));
    OptimizerOptions o;
    o.m = 3;
    o.restarts = 8;
    o.exec = exec_of(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_design(c, o));
    state.SetLabel(label(exec_of(state)));
}

} // namespace

// argument 0 = serial reference path, 1 = OpenMP path
BENCHMARK(BM_BayesD)->Arg(0)->Arg(1);
BENCHMARK(BM_Jeffreys)->Arg(0)->Arg(1);
BENCHMARK(BM_BergerBernardo)->Arg(0)->Arg(1);
BENCHMARK(BM_FunctionalUniform)->Arg(0)->Arg(1);
BENCHMARK(BM_Verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Optimize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv)
{
    configure_threads_from_env();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
