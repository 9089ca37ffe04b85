// Hot-path timings: eigensolves, feature extraction, sampling, witnesses,
// and classifier passes. These set the desk-scale runtime budget.

#include <benchmark/benchmark.h>

#include <vector>

#include "entwit/collective.hpp"
#include "entwit/eigen.hpp"
#include "entwit/mlp.hpp"
#include "entwit/rng.hpp"
#include "entwit/sampler.hpp"
#include "entwit/witnesses.hpp"

namespace {

using namespace entwit;

DensityMatrix random_state(std::uint64_t seed) {
    Rng rng(seed);
    return sample_state({EnsembleKind::GinibreFull, 4, 0.0}, rng).rho;
}

void bm_eigensystem_4(benchmark::State& state) {
    const DensityMatrix rho = random_state(11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigensystem(rho.matrix()));
    }
}
BENCHMARK(bm_eigensystem_4);

void bm_eigenvalues_16(benchmark::State& state) {
    const DensityMatrix rho_t = two_copy_state(random_state(12));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigenvalues(rho_t.matrix()));
    }
}
BENCHMARK(bm_eigenvalues_16);

void bm_sample_ginibre(benchmark::State& state) {
    Rng rng(13);
    const EnsembleSpec spec{EnsembleKind::GinibreFull, 4, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_state(spec, rng));
    }
}
BENCHMARK(bm_sample_ginibre);

void bm_feature_vector(benchmark::State& state) {
    const DensityMatrix rho = random_state(14);
    const SettingsCatalog catalog = default_catalog(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(feature_vector(rho, catalog));
    }
}
BENCHMARK(bm_feature_vector)->Arg(5)->Arg(15);

void bm_witness_suite(benchmark::State& state) {
    const DensityMatrix rho = random_state(15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(collectibility(rho));
        benchmark::DoNotOptimize(fef(rho));
        benchmark::DoNotOptimize(chsh(rho));
        benchmark::DoNotOptimize(entropic(rho));
    }
}
BENCHMARK(bm_witness_suite);

void bm_forward(benchmark::State& state) {
    const MlpModel model = init_model(15, 7);
    const std::vector<double> features(15, 0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(model, features));
    }
}
BENCHMARK(bm_forward);

void bm_train_epoch(benchmark::State& state) {
    Rng rng(16);
    const SettingsCatalog catalog = default_catalog(15);
    std::vector<DensityMatrix> rhos;
    for (int i = 0; i < 2048; ++i) {
        rhos.push_back(sample_state({EnsembleKind::GinibreRank, 1 + i % 4, 0.0}, rng).rho);
    }
    const std::vector<FeatureVector> data = feature_vectors(rhos, catalog);
    Hyperparams hyper;
    hyper.epochs = 1;
    hyper.patience = 1000;
    for (auto _ : state) {
        MlpModel model = init_model(15, 7);
        benchmark::DoNotOptimize(train(model, data, hyper));
    }
}
BENCHMARK(bm_train_epoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
