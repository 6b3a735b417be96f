#include "rdaug/kernels.hpp"

#include <exception>

#include <omp.h>

#include "rdaug/hash.hpp"

namespace rdaug {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

std::vector<EncodedExample> encode_dataset(const Dataset& d, const ModelConfig& cfg, int threads) {
    std::vector<EncodedExample> out(d.size());
    const auto n = static_cast<std::ptrdiff_t>(d.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& e = d[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = {encode(e.text, cfg), e.label};
    }
    return out;
}

std::pair<std::uint64_t, std::uint64_t> dropout_seeds(std::uint64_t step_seed, std::size_t position) {
    return {stable_hash(step_seed, position, 1), stable_hash(step_seed, position, 2)};
}

BatchGradient batch_gradient(const ClassifierParams& params, const ModelConfig& cfg,
                             std::span<const EncodedExample> examples, std::span<const std::size_t> batch,
                             const Objective& objective, std::uint64_t step_seed, int threads) {
    std::vector<LossAndGradient> per_example(batch.size());
    std::vector<std::exception_ptr> errors(batch.size());
    const auto n = static_cast<std::ptrdiff_t>(batch.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto pos = static_cast<std::size_t>(k);
        const auto& ex = examples[batch[pos]];
        const auto seeds = dropout_seeds(step_seed, pos);
        try {
            per_example[pos] = objective.rdrop
                                   ? rdrop_grad(params, cfg, ex.ids, ex.label, seeds, objective.rdrop_cfg)
                                   : ce_grad(params, cfg, ex.ids, ex.label, seeds.first, objective.rdrop_cfg.eps);
        } catch (...) {
            errors[pos] = std::current_exception();
        }
    }
    rethrow_first(errors);

    // Fixed-order reduction.
    BatchGradient out{{}, SparseGradient::zeros_like(params)};
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto& r : per_example) {
        out.grad.add_scaled(r.grad, scale);
        out.mean_loss.ce1 += r.loss.ce1 * scale;
        out.mean_loss.ce2 += r.loss.ce2 * scale;
        out.mean_loss.kl_bidir += r.loss.kl_bidir * scale;
        out.mean_loss.total += r.loss.total * scale;
    }
    return out;
}

std::vector<Prediction> predict_batch(const ClassifierParams& params, const ModelConfig& cfg,
                                      std::span<const EncodedExample> examples, int threads) {
    std::vector<Prediction> out(examples.size());
    std::vector<std::exception_ptr> errors(examples.size());
    const auto n = static_cast<std::ptrdiff_t>(examples.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = predict_ids(params, cfg, examples[idx].ids);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return out;
}

}  // namespace rdaug
