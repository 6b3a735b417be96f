#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "rdaug/kernels.hpp"
#include "rdaug/reference.hpp"
#include "rdaug/synthetic.hpp"

using namespace rdaug;

namespace {
struct Setup {
    ModelConfig cfg;
    ClassifierParams params;
    Dataset raw;
    std::vector<EncodedExample> examples;
    std::vector<std::size_t> batch;
    AugmentationConfig aug_cfg;
    AugmentResources resources;

    Setup() {
        params = ClassifierParams::random(cfg, 1);
        SyntheticConfig sc;
        sc.size = 2000;
        raw = generate_synthetic(sc);
        examples = encode_dataset(raw, cfg);
        batch.resize(256);
        std::iota(batch.begin(), batch.end(), 0);
        aug_cfg.enabled.assign(std::begin(kAllAugmenters), std::end(kAllAugmenters));
        resources = load_resources(aug_cfg);
    }
};

const Setup& setup() {
    static const Setup s;
    return s;
}

Objective rdrop_objective() {
    Objective o;
    o.rdrop = true;
    return o;
}
}  // namespace

static void BM_BatchGradient_Serial(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::batch_gradient(s.params, s.cfg, s.examples, s.batch, rdrop_objective(), 1));
    }
}
BENCHMARK(BM_BatchGradient_Serial)->Unit(benchmark::kMillisecond);

static void BM_BatchGradient_Parallel(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_gradient(s.params, s.cfg, s.examples, s.batch, rdrop_objective(), 1,
                                                static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_BatchGradient_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_Adam_Serial(benchmark::State& state) {
    const auto& s = setup();
    auto params = s.params;
    auto grads = ClassifierParams::random(s.cfg, 2);
    auto adam = AdamState::zeros_like(params);
    for (auto _ : state) {
        reference::adam_step(params, grads, adam, AdamConfig{});
    }
}
BENCHMARK(BM_Adam_Serial)->Unit(benchmark::kMillisecond);

static void BM_Adam_Parallel(benchmark::State& state) {
    const auto& s = setup();
    auto params = s.params;
    auto grads = ClassifierParams::random(s.cfg, 2);
    auto adam = AdamState::zeros_like(params);
    for (auto _ : state) {
        adam_step(params, grads, adam, AdamConfig{}, static_cast<int>(state.range(0)));
    }
}
BENCHMARK(BM_Adam_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_Predict_Serial(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::predict_batch(s.params, s.cfg, s.examples));
    }
}
BENCHMARK(BM_Predict_Serial)->Unit(benchmark::kMillisecond);

static void BM_Predict_Parallel(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_batch(s.params, s.cfg, s.examples, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_Predict_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_Augment_Serial(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::augment_dataset(s.raw, s.aug_cfg, s.resources));
    }
}
BENCHMARK(BM_Augment_Serial)->Unit(benchmark::kMillisecond);

static void BM_Augment_Parallel(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(augment_dataset(s.raw, s.aug_cfg, s.resources, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_Augment_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
