// Throughput probes for the hot paths: exhaustive box verification of the
// two-level family (exact fast path), single-point residual evaluation
// (generic path), and the finite-group equation check in both modes.

#include <benchmark/benchmark.h>

#include "sdlab/constructions.hpp"
#include "sdlab/finite.hpp"
#include "sdlab/verifier.hpp"

namespace {

using namespace sdlab;

void bm_verify_two_level_box(benchmark::State& state) {
    const auto m = build_two_level_family(2, 3, Rational(1, 2), 3);
    const EvalContext ctx{m.spec, m.cyclic_generator};
    TestBox box;
    box.generators = {Rational(1, 3), Rational(1, 2), Rational(1, 7)};
    box.bound = static_cast<int>(state.range(0));
    VerifyOptions opts;
    opts.budget = 1'000'000'000ULL;
    std::uint64_t points = 0;
    for (auto _ : state) {
        const auto rep = verify_on_box(m.fs, m.matrix, box, ctx, opts);
        if (!rep.clean()) state.SkipWithError("unexpected violation");
        points += rep.total_points;
    }
    state.counters["tuples/s"] =
        benchmark::Counter(static_cast<double>(points), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_verify_two_level_box)->Arg(1)->Arg(2);

void bm_residual_single_point(benchmark::State& state) {
    const auto m = build_two_level_family(2, 3, Rational(1, 2), 3);
    const EvalContext ctx{m.spec, m.cyclic_generator};
    const std::vector<Rational> point{Rational(1, 3), Rational(5, 9), Rational(1, 2)};
    for (auto _ : state) {
        auto r = residual_at(m.fs, m.matrix, point, ctx, kDefaultTolerance);
        benchmark::DoNotOptimize(r.magnitude);
    }
}
BENCHMARK(bm_residual_single_point);

void bm_finite_equation(benchmark::State& state) {
    const FiniteGroupSpec g({4, 3});
    std::vector<Dist> dists;
    for (int i = 0; i < 3; ++i)
        dists.push_back(random_dist(g, 17 + static_cast<std::uint64_t>(i),
                                    RandomProfile::DirichletLike));
    const std::vector<std::vector<std::int64_t>> m{{1, 1, 1}, {1, -1, 1}, {1, -1, -1}};
    const auto mode = state.range(0) ? EquationMode::Exact : EquationMode::Float;
    std::uint64_t tuples = 0;
    for (auto _ : state) {
        const auto res = sd_equation_check(g, dists, m, mode);
        tuples += res.tuples_checked;
    }
    state.counters["tuples/s"] =
        benchmark::Counter(static_cast<double>(tuples), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_finite_equation)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
