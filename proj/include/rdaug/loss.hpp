#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "rdaug/model.hpp"

namespace rdaug {

struct RDropConfig {
    double alpha = 1.0;  // weight of the bidirectional KL term
    double eps = 1e-12;  // probability clamp

    void validate() const;
};

struct LossBreakdown {
    double ce1 = 0.0;
    double ce2 = 0.0;
    double kl_bidir = 0.0;
    double total = 0.0;
};

// -ln(max(p[y], eps))
double cross_entropy(const ProbDist& p, int label, double eps = 1e-12);

// sum_i p_i ln(max(p_i, eps) / max(q_i, eps))
double kl_div(const ProbDist& p, const ProbDist& q, double eps = 1e-12);

// ce1 + ce2 + alpha * (KL(p1||p2) + KL(p2||p1)) / 2
LossBreakdown rdrop_loss(const ProbDist& p1, const ProbDist& p2, int label, const RDropConfig& cfg);

// d(rdrop_loss)/d(p1) and d/d(p2), respecting the clamps (zero slope below eps).
std::array<std::array<double, 2>, 2> rdrop_loss_dprobs(const ProbDist& p1, const ProbDist& p2, int label,
                                                       const RDropConfig& cfg);

struct LossAndGradient {
    LossBreakdown loss;
    SparseGradient grad;
};

// Two train-mode forwards with seeds.first / seeds.second, then the exact
// gradient of rdrop_loss with respect to every parameter through both passes.
LossAndGradient rdrop_grad(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                           int label, std::pair<std::uint64_t, std::uint64_t> seeds, const RDropConfig& rcfg);

// One train-mode forward with plain cross-entropy. loss.total == loss.ce1.
LossAndGradient ce_grad(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                        int label, std::uint64_t seed, double eps = 1e-12);

}  // namespace rdaug
