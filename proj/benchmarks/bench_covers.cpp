/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Microbenchmarks for the cover constructions and the transition monoid.
 */

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "soficov/covers.hpp"
#include "soficov/gprime.hpp"
#include "soficov/graph.hpp"
#include "soficov/language.hpp"

namespace {

soficov::LabeledGraph load(const std::string& name) {
    std::ifstream f(std::string(SOFICOV_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << f.rdbuf();
    return soficov::parse_lg(ss.str());
}

void bench_monoid(benchmark::State& state, const std::string& fixture) {
    soficov::LabeledGraph g = load(fixture);
    for (auto _ : state) {
        auto m = soficov::relation_monoid(g);
        benchmark::DoNotOptimize(m);
    }
}

void bench_krieger(benchmark::State& state, const std::string& fixture) {
    soficov::LabeledGraph g = load(fixture);
    for (auto _ : state) {
        auto c = soficov::krieger_cover(g, "merge");
        benchmark::DoNotOptimize(c);
    }
}

void bench_krieger_regular_part(benchmark::State& state,
                                const std::string& fixture) {
    soficov::LabeledGraph g = load(fixture);
    for (auto _ : state) {
        auto c = soficov::krieger_cover(g, "regular-part");
        benchmark::DoNotOptimize(c);
    }
}

void bench_gprime(benchmark::State& state, const std::string& fixture) {
    soficov::LabeledGraph g = load(fixture);
    for (auto _ : state) {
        auto c = soficov::gprime_cover(g);
        benchmark::DoNotOptimize(c);
    }
}

}  // namespace

BENCHMARK_CAPTURE(bench_monoid, ev2, "ev2.lg");
BENCHMARK_CAPTURE(bench_monoid, mx5, "mx5.lg");
BENCHMARK_CAPTURE(bench_krieger, ev2, "ev2.lg");
BENCHMARK_CAPTURE(bench_krieger, nr3, "nr3.lg");
BENCHMARK_CAPTURE(bench_krieger, mx5, "mx5.lg");
BENCHMARK_CAPTURE(bench_krieger_regular_part, mx5, "mx5.lg");
BENCHMARK_CAPTURE(bench_gprime, ev2, "ev2.lg");
BENCHMARK_CAPTURE(bench_gprime, ex1, "ex1.lg");
BENCHMARK_CAPTURE(bench_gprime, mx5, "mx5.lg");

BENCHMARK_MAIN();
