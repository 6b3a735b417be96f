#pragma once

// Serial reference implementations of the OpenMP kernels. Kept for the
// equivalence tests and the benchmark baseline; not used on the hot path.

#include "rdaug/adam.hpp"
#include "rdaug/augment.hpp"
#include "rdaug/kernels.hpp"

namespace rdaug::reference {

BatchGradient batch_gradient(const ClassifierParams& params, const ModelConfig& cfg,
                             std::span<const EncodedExample> examples, std::span<const std::size_t> batch,
                             const Objective& objective, std::uint64_t step_seed);

std::vector<Prediction> predict_batch(const ClassifierParams& params, const ModelConfig& cfg,
                                      std::span<const EncodedExample> examples);

// Dense textbook Adam on the full gradient, one entry at a time.
void adam_step(ClassifierParams& params, const ClassifierParams& grads, AdamState& state, const AdamConfig& cfg);

AugmentResult augment_dataset(const Dataset& d, const AugmentationConfig& cfg, const AugmentResources& res);

}  // namespace rdaug::reference
