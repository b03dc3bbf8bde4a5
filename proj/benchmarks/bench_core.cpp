#include <benchmark/benchmark.h>

#include "hms/ideal.hpp"
#include "hms/io.hpp"
#include "hms/modular_group.hpp"
#include "hms/number_field.hpp"
#include "hms/systole.hpp"

namespace {

hms::FieldPtr golden_field() {
    static hms::FieldPtr field =
        hms::NumberField::create("q-sqrt5", {hms::Int(-1), hms::Int(-1), hms::Int(1)});
    return field;
}

void BM_FieldCreate(benchmark::State& state) {
    for (auto _ : state) {
        auto field = hms::NumberField::create("cubic-7",
                                              {hms::Int(-1), hms::Int(-2), hms::Int(1), hms::Int(1)});
        benchmark::DoNotOptimize(field);
    }
}
BENCHMARK(BM_FieldCreate);

void BM_IdealFromGenerators(benchmark::State& state) {
    auto field = golden_field();
    const auto gen = hms::AlgebraicInteger(field, {hms::Int(-1), hms::Int(2)});
    for (auto _ : state) {
        auto ideal = hms::Ideal::principal(gen);
        benchmark::DoNotOptimize(ideal);
    }
}
BENCHMARK(BM_IdealFromGenerators);

void BM_QuotientOrder(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(7));
    for (auto _ : state) {
        auto order = hms::congruence_quotient_order(ideal);
        benchmark::DoNotOptimize(order);
    }
}
BENCHMARK(BM_QuotientOrder);

void BM_BruteForceOrder(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(3));
    for (auto _ : state) {
        auto order = hms::brute_force_image_order(ideal);
        benchmark::DoNotOptimize(order);
    }
}
BENCHMARK(BM_BruteForceOrder);

void BM_Lemma1Check(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(7));
    const auto g = hms::random_gamma_element(ideal, 6, 42);
    for (auto _ : state) {
        auto result = hms::lemma1_check(g, ideal);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Lemma1Check);

void BM_ProductGeodesicLength(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(7));
    const auto witness = hms::upper_bound_witness(ideal);
    for (auto _ : state) {
        double length = hms::product_geodesic_length(witness.matrix);
        benchmark::DoNotOptimize(length);
    }
}
BENCHMARK(BM_ProductGeodesicLength);

void BM_SearchHeightOne(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(7));
    for (auto _ : state) {
        auto result = hms::search_shortest(ideal, 1);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_SearchHeightOne);

void BM_ReportJson(benchmark::State& state) {
    auto field = golden_field();
    const auto ideal = hms::Ideal::from_int(field, hms::Int(7));
    const auto report = hms::make_report("q-sqrt5", "{\"int\":7}", ideal);
    for (auto _ : state) {
        auto doc = hms::report_to_json(report).dump();
        benchmark::DoNotOptimize(doc);
    }
}
BENCHMARK(BM_ReportJson);

}  // namespace

BENCHMARK_MAIN();
