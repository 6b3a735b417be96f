#include <doctest.h>

#include <cmath>
#include <limits>

#include "rdaug/adam.hpp"
#include "rdaug/error.hpp"
#include "rdaug/reference.hpp"

using namespace rdaug;

namespace {
ModelConfig tiny() {
    ModelConfig cfg;
    cfg.hash_buckets = 16;
    cfg.embed_dim = 3;
    cfg.hidden_dim = 4;
    return cfg;
}

ClassifierParams random_grad(const ClassifierParams& like, std::uint64_t seed) {
    auto g = like;
    Rng rng(seed);
    for (auto block : g.blocks()) {
        for (auto& v : block) v = rng.uniform(-1.0, 1.0);
    }
    return g;
}
}  // namespace

TEST_CASE("zero gradient from a fresh state leaves params unchanged") {
    auto p = ClassifierParams::random(tiny(), 1);
    const auto before = p;
    auto state = AdamState::zeros_like(p);
    adam_step(p, ClassifierParams::zeros(tiny()), state, AdamConfig{});
    CHECK(p == before);
    CHECK(state.t == 1);
}

TEST_CASE("first step moves each entry by about -lr * sign(g)") {
    auto p = ClassifierParams::zeros(tiny());
    auto state = AdamState::zeros_like(p);
    const auto g = random_grad(p, 4);
    const AdamConfig cfg{0.01, 0.9, 0.999, 1e-8};
    adam_step(p, g, state, cfg);
    const auto pb = p.blocks();
    const auto gb = g.blocks();
    for (std::size_t b = 0; b < 5; ++b) {
        for (std::size_t i = 0; i < pb[b].size(); ++i) {
            const double gi = gb[b][i];
            // m_hat = g, v_hat = g^2 after one step.
            CHECK(pb[b][i] == doctest::Approx(-cfg.lr * gi / (std::abs(gi) + cfg.eps)).epsilon(1e-12));
            CHECK(std::abs(pb[b][i] + cfg.lr * (gi > 0 ? 1 : -1)) <= cfg.lr * cfg.eps / std::abs(gi) * (1 + 1e-6));
        }
    }
}

TEST_CASE("identical gradient sequences give identical params") {
    auto run = [] {
        auto p = ClassifierParams::random(tiny(), 2);
        auto state = AdamState::zeros_like(p);
        for (std::uint64_t s = 0; s < 25; ++s) {
            adam_step(p, random_grad(p, s), state, AdamConfig{1e-3});
        }
        return p;
    };
    CHECK(run() == run());
}

TEST_CASE("parallel kernel matches the serial reference for any thread count") {
    ModelConfig cfg;
    cfg.hash_buckets = 3000;
    cfg.embed_dim = 8;
    cfg.hidden_dim = 16;
    const auto p0 = ClassifierParams::random(cfg, 3);

    auto ref = p0;
    auto ref_state = AdamState::zeros_like(ref);
    for (std::uint64_t s = 0; s < 5; ++s) {
        reference::adam_step(ref, random_grad(p0, s), ref_state, AdamConfig{1e-2});
    }
    for (int threads : {1, 3}) {
        auto p = p0;
        auto state = AdamState::zeros_like(p);
        for (std::uint64_t s = 0; s < 5; ++s) {
            adam_step(p, random_grad(p0, s), state, AdamConfig{1e-2}, threads);
        }
        CHECK(p == ref);
        CHECK(state.m == ref_state.m);
        CHECK(state.v == ref_state.v);
    }
}

TEST_CASE("sparse-gradient overload equals the dense update") {
    const auto cfg = tiny();
    const auto p0 = ClassifierParams::random(cfg, 5);
    auto sparse = SparseGradient::zeros_like(p0);
    Rng rng(6);
    for (std::uint32_t row : {2u, 7u, 11u}) {
        auto& r = sparse.embedding_rows[row];
        r.assign(cfg.embed_dim, 0.0);
        for (auto& v : r) v = rng.uniform(-1, 1);
    }
    for (auto& v : sparse.w1) v = rng.uniform(-1, 1);
    for (auto& v : sparse.b2) v = rng.uniform(-1, 1);
    const auto dense = sparse.to_dense(p0);

    auto a = p0;
    auto b = p0;
    auto sa = AdamState::zeros_like(p0);
    auto sb = AdamState::zeros_like(p0);
    for (int i = 0; i < 3; ++i) {
        adam_step(a, sparse, sa, AdamConfig{1e-2}, 2);
        adam_step(b, dense, sb, AdamConfig{1e-2}, 2);
    }
    CHECK(a == b);
    CHECK(sa.v == sb.v);
}

TEST_CASE("non-finite update is a numeric error") {
    auto p = ClassifierParams::zeros(tiny());
    auto state = AdamState::zeros_like(p);
    auto g = ClassifierParams::zeros(tiny());
    g.b2[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(adam_step(p, g, state, AdamConfig{}), NumericError);
}
