#include "rdaug/loss.hpp"

#include <algorithm>
#include <cmath>

#include "rdaug/error.hpp"

namespace rdaug {

namespace {

void check_finite(const SparseGradient& g) {
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    bool ok = finite(g.w1) && finite(g.b1) && finite(g.w2) && finite(g.b2);
    for (const auto& [row, values] : g.embedding_rows) {
        ok = ok && finite(values);
    }
    if (!ok) {
        throw NumericError("non-finite gradient");
    }
}

}  // namespace

void RDropConfig::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ContractError("R-drop alpha must be a finite non-negative number");
    }
    if (!(eps > 0.0 && eps < 1e-6)) {
        throw ContractError("probability clamp eps must lie in (0, 1e-6)");
    }
}

double cross_entropy(const ProbDist& p, int label, double eps) {
    return -std::log(std::max(p[static_cast<std::size_t>(label)], eps));
}

double kl_div(const ProbDist& p, const ProbDist& q, double eps) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        sum += p[i] * std::log(std::max(p[i], eps) / std::max(q[i], eps));
    }
    return sum;
}

LossBreakdown rdrop_loss(const ProbDist& p1, const ProbDist& p2, int label, const RDropConfig& cfg) {
    LossBreakdown b;
    b.ce1 = cross_entropy(p1, label, cfg.eps);
    b.ce2 = cross_entropy(p2, label, cfg.eps);
    b.kl_bidir = 0.5 * (kl_div(p1, p2, cfg.eps) + kl_div(p2, p1, cfg.eps));
    b.total = b.ce1 + b.ce2 + cfg.alpha * b.kl_bidir;
    return b;
}

std::array<std::array<double, 2>, 2> rdrop_loss_dprobs(const ProbDist& p1, const ProbDist& p2, int label,
                                                       const RDropConfig& cfg) {
    const double eps = cfg.eps;
    std::array<std::array<double, 2>, 2> g{};
    const std::array<const ProbDist*, 2> ps = {&p1, &p2};
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& p = *ps[s];
        const auto& q = *ps[1 - s];
        for (std::size_t i = 0; i < 2; ++i) {
            const double cp = std::max(p[i], eps);
            const double cq = std::max(q[i], eps);
            const double dclamp = p[i] > eps ? 1.0 : 0.0;
            double v = 0.0;
            if (static_cast<int>(i) == label) {
                v -= dclamp / cp;
            }
            // d/dp_i of KL(p||q) + KL(q||p)
            const double dkl = std::log(cp / cq) + p[i] * dclamp / cp - q[i] * dclamp / cp;
            v += cfg.alpha * 0.5 * dkl;
            g[s][i] = v;
        }
    }
    return g;
}

LossAndGradient rdrop_grad(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                           int label, std::pair<std::uint64_t, std::uint64_t> seeds, const RDropConfig& rcfg) {
    const auto t1 = forward(params, cfg, ids, DropoutMode::train(seeds.first));
    const auto t2 = forward(params, cfg, ids, DropoutMode::train(seeds.second));

    LossAndGradient out{rdrop_loss(t1.probs, t2.probs, label, rcfg), SparseGradient::zeros_like(params)};
    const auto dp = rdrop_loss_dprobs(t1.probs, t2.probs, label, rcfg);
    backward(params, t1, softmax_backward(t1.probs, dp[0]), out.grad);
    backward(params, t2, softmax_backward(t2.probs, dp[1]), out.grad);
    check_finite(out.grad);
    return out;
}

LossAndGradient ce_grad(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                        int label, std::uint64_t seed, double eps) {
    const auto t = forward(params, cfg, ids, DropoutMode::train(seed));
    LossAndGradient out{{}, SparseGradient::zeros_like(params)};
    out.loss.ce1 = cross_entropy(t.probs, label, eps);
    out.loss.total = out.loss.ce1;
    std::array<double, 2> dprobs{0.0, 0.0};
    const auto y = static_cast<std::size_t>(label);
    if (t.probs[y] > eps) {
        dprobs[y] = -1.0 / t.probs[y];
    }
    backward(params, t, softmax_backward(t.probs, dprobs), out.grad);
    check_finite(out.grad);
    return out;
}

}  // namespace rdaug
