#pragma once

// OpenMP kernels for the per-example hot loops. Each has a serial counterpart
// in reference.hpp; results are bit-identical for any thread count because
// per-example work is independent and reductions run in a fixed order.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rdaug/corpus.hpp"
#include "rdaug/loss.hpp"
#include "rdaug/model.hpp"

namespace rdaug {

struct EncodedExample {
    std::vector<std::uint32_t> ids;
    int label = 0;
};

// encode() applied to every text.
std::vector<EncodedExample> encode_dataset(const Dataset& d, const ModelConfig& cfg, int threads = 0);

struct Objective {
    bool rdrop = false;
    RDropConfig rdrop_cfg;
};

// Dropout seeds for the example at `position` within a batch.
std::pair<std::uint64_t, std::uint64_t> dropout_seeds(std::uint64_t step_seed, std::size_t position);

struct BatchGradient {
    LossBreakdown mean_loss;  // component-wise mean over the batch
    SparseGradient grad;      // mean gradient over the batch
};

// Loss and mean gradient over examples[batch[0]], examples[batch[1]], ...
// With objective.rdrop each example gets two train-mode passes and the R-drop
// loss, otherwise one pass (seed = first of dropout_seeds) and cross-entropy.
BatchGradient batch_gradient(const ClassifierParams& params, const ModelConfig& cfg,
                             std::span<const EncodedExample> examples, std::span<const std::size_t> batch,
                             const Objective& objective, std::uint64_t step_seed, int threads = 0);

std::vector<Prediction> predict_batch(const ClassifierParams& params, const ModelConfig& cfg,
                                      std::span<const EncodedExample> examples, int threads = 0);

}  // namespace rdaug
