#include "rdaug/adam.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "rdaug/error.hpp"

namespace rdaug {

namespace {

struct Coefficients {
    double lr, b1, b2, eps, bc1, bc2;
};

Coefficients advance(AdamState& state, const AdamConfig& cfg) {
    state.t += 1;
    const double t = static_cast<double>(state.t);
    return {cfg.lr, cfg.beta1, cfg.beta2, cfg.eps, 1.0 - std::pow(cfg.beta1, t), 1.0 - std::pow(cfg.beta2, t)};
}

// Returns 1 when the new parameter is non-finite.
inline int update(double& p, double& m, double& v, double g, const Coefficients& c) {
    m = c.b1 * m + (1.0 - c.b1) * g;
    v = c.b2 * v + (1.0 - c.b2) * g * g;
    p -= c.lr * (m / c.bc1) / (std::sqrt(v / c.bc2) + c.eps);
    return std::isfinite(p) ? 0 : 1;
}

int update_block(std::span<double> p, std::span<double> m, std::span<double> v, std::span<const double> g,
                 const Coefficients& c, int nthreads) {
    int bad = 0;
    const auto n = static_cast<std::ptrdiff_t>(p.size());
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(| : bad) if (n > 4096)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        bad |= update(p[i], m[i], v[i], g[i], c);
    }
    return bad;
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

void check_shapes(const ClassifierParams& params, const AdamState& state) {
    if (!params.same_shape(state.m) || !params.same_shape(state.v)) {
        throw ContractError("adam_step: parameter and moment shapes differ");
    }
}

}  // namespace

AdamState AdamState::zeros_like(const ClassifierParams& params) {
    AdamState s;
    s.m = params;
    s.v = params;
    for (auto* p : {&s.m, &s.v}) {
        for (auto block : p->blocks()) {
            std::fill(block.begin(), block.end(), 0.0);
        }
    }
    return s;
}

void adam_step(ClassifierParams& params, const ClassifierParams& grads, AdamState& state, const AdamConfig& cfg,
               int threads) {
    check_shapes(params, state);
    if (!params.same_shape(grads)) {
        throw ContractError("adam_step: gradient shape differs from parameters");
    }
    const auto c = advance(state, cfg);
    const int nthreads = resolve_threads(threads);
    const auto pb = params.blocks();
    const auto gb = grads.blocks();
    const auto mb = state.m.blocks();
    const auto vb = state.v.blocks();
    int bad = 0;
    for (std::size_t b = 0; b < pb.size(); ++b) {
        bad |= update_block(pb[b], mb[b], vb[b], gb[b], c, nthreads);
    }
    if (bad != 0) {
        throw NumericError("non-finite parameter after Adam update");
    }
}

void adam_step(ClassifierParams& params, const SparseGradient& grads, AdamState& state, const AdamConfig& cfg,
               int threads) {
    check_shapes(params, state);
    if (grads.embed_dim != params.embed_dim || grads.w1.size() != params.w1.size() ||
        grads.b1.size() != params.b1.size() || grads.w2.size() != params.w2.size() ||
        grads.b2.size() != params.b2.size()) {
        throw ContractError("adam_step: gradient shape differs from parameters");
    }
    const auto c = advance(state, cfg);
    const int nthreads = resolve_threads(threads);
    const auto d = params.embed_dim;

    std::vector<const double*> row_grad(params.buckets, nullptr);
    for (const auto& [row, values] : grads.embedding_rows) {
        if (row >= params.buckets || values.size() != d) {
            throw ContractError("adam_step: embedding gradient row out of range");
        }
        row_grad[row] = values.data();
    }

    int bad = 0;
    double* p = params.embedding.data();
    double* m = state.m.embedding.data();
    double* v = state.v.embedding.data();
    const auto rows = static_cast<std::ptrdiff_t>(params.buckets);
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(| : bad) if (rows > 256)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        const double* g = row_grad[static_cast<std::size_t>(r)];
        const auto base = static_cast<std::size_t>(r) * d;
        for (std::size_t k = 0; k < d; ++k) {
            bad |= update(p[base + k], m[base + k], v[base + k], g != nullptr ? g[k] : 0.0, c);
        }
    }

    bad |= update_block(params.w1, state.m.w1, state.v.w1, grads.w1, c, nthreads);
    bad |= update_block(params.b1, state.m.b1, state.v.b1, grads.b1, c, nthreads);
    bad |= update_block(params.w2, state.m.w2, state.v.w2, grads.w2, c, nthreads);
    bad |= update_block(params.b2, state.m.b2, state.v.b2, grads.b2, c, nthreads);
    if (bad != 0) {
        throw NumericError("non-finite parameter after Adam update");
    }
}

}  // namespace rdaug
