#include "rdaug/reference.hpp"

#include <cmath>

#include "rdaug/error.hpp"

namespace rdaug::reference {

BatchGradient batch_gradient(const ClassifierParams& params, const ModelConfig& cfg,
                             std::span<const EncodedExample> examples, std::span<const std::size_t> batch,
                             const Objective& objective, std::uint64_t step_seed) {
    BatchGradient out{{}, SparseGradient::zeros_like(params)};
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (std::size_t pos = 0; pos < batch.size(); ++pos) {
        const auto& ex = examples[batch[pos]];
        const auto seeds = dropout_seeds(step_seed, pos);
        const auto r = objective.rdrop ? rdrop_grad(params, cfg, ex.ids, ex.label, seeds, objective.rdrop_cfg)
                                       : ce_grad(params, cfg, ex.ids, ex.label, seeds.first, objective.rdrop_cfg.eps);
        out.grad.add_scaled(r.grad, scale);
        out.mean_loss.ce1 += r.loss.ce1 * scale;
        out.mean_loss.ce2 += r.loss.ce2 * scale;
        out.mean_loss.kl_bidir += r.loss.kl_bidir * scale;
        out.mean_loss.total += r.loss.total * scale;
    }
    return out;
}

std::vector<Prediction> predict_batch(const ClassifierParams& params, const ModelConfig& cfg,
                                      std::span<const EncodedExample> examples) {
    std::vector<Prediction> out;
    out.reserve(examples.size());
    for (const auto& ex : examples) {
        out.push_back(predict_ids(params, cfg, ex.ids));
    }
    return out;
}

void adam_step(ClassifierParams& params, const ClassifierParams& grads, AdamState& state, const AdamConfig& cfg) {
    if (!params.same_shape(grads) || !params.same_shape(state.m) || !params.same_shape(state.v)) {
        throw ContractError("adam_step: shapes differ");
    }
    state.t += 1;
    const double t = static_cast<double>(state.t);
    auto pb = params.blocks();
    auto gb = grads.blocks();
    auto mb = state.m.blocks();
    auto vb = state.v.blocks();
    bool bad = false;
    for (std::size_t b = 0; b < pb.size(); ++b) {
        for (std::size_t i = 0; i < pb[b].size(); ++i) {
            const double g = gb[b][i];
            mb[b][i] = cfg.beta1 * mb[b][i] + (1.0 - cfg.beta1) * g;
            vb[b][i] = cfg.beta2 * vb[b][i] + (1.0 - cfg.beta2) * g * g;
            const double m_hat = mb[b][i] / (1.0 - std::pow(cfg.beta1, t));
            const double v_hat = vb[b][i] / (1.0 - std::pow(cfg.beta2, t));
            pb[b][i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
            bad = bad || !std::isfinite(pb[b][i]);
        }
    }
    if (bad) {
        throw NumericError("non-finite parameter after Adam update");
    }
}

AugmentResult augment_dataset(const Dataset& d, const AugmentationConfig& cfg, const AugmentResources& res) {
    cfg.validate();
    AugmentResult out;
    out.data = d;
    for (auto a : cfg.enabled) {
        for (const auto& src : d) {
            for (int c = 0; c < cfg.copies_per_augmenter; ++c) {
                try {
                    auto text = apply_augmenter(a, src.text, cfg, res, copy_seed(cfg.seed, src.id, a, c));
                    out.data.push_back({augmented_id(src.id, a, c), std::move(text), src.label,
                                        Provenance{src.id, std::string(augmenter_name(a))}});
                } catch (const AugmentationUnavailable& e) {
                    ++out.warnings.skipped;
                    out.warnings.messages.push_back(augmented_id(src.id, a, c) + ": " + e.what());
                }
            }
        }
    }
    return out;
}

}  // namespace rdaug::reference
