#pragma once

#include <cstdint>

#include "rdaug/model.hpp"

namespace rdaug {

struct AdamConfig {
    double lr = 5e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Moment accumulators shaped like the parameters, plus the step counter.
struct AdamState {
    ClassifierParams m;
    ClassifierParams v;
    std::uint64_t t = 0;

    static AdamState zeros_like(const ClassifierParams& params);
};

// Bias-corrected Adam:
//   m = b1 m + (1 - b1) g;  v = b2 v + (1 - b2) g^2
//   p -= lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
// Parallelized over parameter entries with OpenMP (threads = 0: runtime
// default). Elementwise, so the result is independent of the thread count.
// Throws NumericError if any updated entry is non-finite; params are then
// in an unspecified state.
void adam_step(ClassifierParams& params, const ClassifierParams& grads, AdamState& state, const AdamConfig& cfg,
               int threads = 0);

}  // namespace rdaug

namespace rdaug {

// Same update with the embedding gradient given as touched rows only; rows
// absent from grads.embedding_rows have zero gradient (their moments still decay).
void adam_step(ClassifierParams& params, const SparseGradient& grads, AdamState& state, const AdamConfig& cfg,
               int threads = 0);

}  // namespace rdaug
