#include "rdaug/model.hpp"

#include <algorithm>
#include <cmath>

#include "rdaug/error.hpp"
#include "rdaug/preprocess.hpp"
#include "rdaug/resources.hpp"

namespace rdaug {

void ModelConfig::validate() const {
    if (hash_buckets < 1 || embed_dim < 1 || hidden_dim < 1 || max_seq_len < 1) {
        throw ContractError("model dimensions must all be >= 1");
    }
    if (!(dropout_p >= 0.0 && dropout_p < 1.0)) {
        throw ContractError("dropout_p must lie in [0, 1)");
    }
}

ClassifierParams ClassifierParams::zeros(const ModelConfig& cfg) {
    cfg.validate();
    ClassifierParams p;
    p.buckets = cfg.hash_buckets;
    p.embed_dim = cfg.embed_dim;
    p.hidden_dim = cfg.hidden_dim;
    p.embedding.assign(cfg.hash_buckets * cfg.embed_dim, 0.0);
    p.w1.assign(cfg.embed_dim * cfg.hidden_dim, 0.0);
    p.b1.assign(cfg.hidden_dim, 0.0);
    p.w2.assign(cfg.hidden_dim * 2, 0.0);
    p.b2.assign(2, 0.0);
    return p;
}

ClassifierParams ClassifierParams::random(const ModelConfig& cfg, std::uint64_t seed) {
    auto p = zeros(cfg);
    Rng rng(seed);
    for (auto* block : {&p.embedding, &p.w1, &p.w2}) {
        for (auto& v : *block) {
            v = rng.uniform(-0.05, 0.05);
        }
    }
    return p;
}

std::array<std::span<double>, 5> ClassifierParams::blocks() { return {embedding, w1, b1, w2, b2}; }

std::array<std::span<const double>, 5> ClassifierParams::blocks() const { return {embedding, w1, b1, w2, b2}; }

std::size_t ClassifierParams::size() const {
    return embedding.size() + w1.size() + b1.size() + w2.size() + b2.size();
}

bool ClassifierParams::same_shape(const ClassifierParams& o) const {
    return buckets == o.buckets && embed_dim == o.embed_dim && hidden_dim == o.hidden_dim &&
           embedding.size() == o.embedding.size() && w1.size() == o.w1.size() && b1.size() == o.b1.size() &&
           w2.size() == o.w2.size() && b2.size() == o.b2.size();
}

bool ClassifierParams::matches(const ModelConfig& cfg) const {
    return buckets == cfg.hash_buckets && embed_dim == cfg.embed_dim && hidden_dim == cfg.hidden_dim &&
           embedding.size() == buckets * embed_dim && w1.size() == embed_dim * hidden_dim &&
           b1.size() == hidden_dim && w2.size() == hidden_dim * 2 && b2.size() == 2;
}

SparseGradient SparseGradient::zeros_like(const ClassifierParams& params) {
    SparseGradient g;
    g.embed_dim = params.embed_dim;
    g.w1.assign(params.w1.size(), 0.0);
    g.b1.assign(params.b1.size(), 0.0);
    g.w2.assign(params.w2.size(), 0.0);
    g.b2.assign(params.b2.size(), 0.0);
    return g;
}

namespace {
void axpy(std::vector<double>& y, const std::vector<double>& x, double a) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += a * x[i];
    }
}
}  // namespace

void SparseGradient::add_scaled(const SparseGradient& other, double scale) {
    for (const auto& [row, values] : other.embedding_rows) {
        auto& mine = embedding_rows[row];
        if (mine.empty()) {
            mine.assign(embed_dim, 0.0);
        }
        axpy(mine, values, scale);
    }
    axpy(w1, other.w1, scale);
    axpy(b1, other.b1, scale);
    axpy(w2, other.w2, scale);
    axpy(b2, other.b2, scale);
}

void SparseGradient::accumulate_into(ClassifierParams& dense, double scale) const {
    for (const auto& [row, values] : embedding_rows) {
        double* dst = dense.embedding.data() + static_cast<std::size_t>(row) * embed_dim;
        for (std::size_t k = 0; k < embed_dim; ++k) {
            dst[k] += scale * values[k];
        }
    }
    axpy(dense.w1, w1, scale);
    axpy(dense.b1, b1, scale);
    axpy(dense.w2, w2, scale);
    axpy(dense.b2, b2, scale);
}

ClassifierParams SparseGradient::to_dense(const ClassifierParams& shape) const {
    ClassifierParams dense = shape;
    for (auto block : dense.blocks()) {
        std::fill(block.begin(), block.end(), 0.0);
    }
    accumulate_into(dense, 1.0);
    return dense;
}

bool ProbDist::valid(double tol) const {
    return std::isfinite(p[0]) && std::isfinite(p[1]) && p[0] >= 0.0 && p[1] >= 0.0 &&
           std::abs(p[0] + p[1] - 1.0) <= tol;
}

int argmax_label(const ProbDist& p) { return p[1] > p[0] ? 1 : 0; }

std::vector<std::uint32_t> tokenize(std::string_view text, const ModelConfig& cfg) {
    const auto tokens = split_whitespace(text);
    if (tokens.empty()) {
        return {0};
    }
    auto bucket = [&](std::uint64_t h) -> std::uint32_t {
        if (cfg.hash_buckets <= 1) {
            return 0;
        }
        return static_cast<std::uint32_t>(1 + h % (cfg.hash_buckets - 1));
    };
    std::vector<std::uint32_t> ids;
    ids.reserve(std::min(cfg.max_seq_len, 2 * tokens.size()));
    for (std::size_t i = 0; i < tokens.size() && ids.size() < cfg.max_seq_len; ++i) {
        ids.push_back(bucket(stable_hash("uni", tokens[i])));
        if (i > 0 && ids.size() < cfg.max_seq_len) {
            ids.push_back(bucket(stable_hash("bi", tokens[i - 1], tokens[i])));
        }
    }
    return ids;
}

std::vector<std::uint32_t> encode(std::string_view text, const ModelConfig& cfg) {
    return tokenize(normalize(text), cfg);
}

std::vector<double> dropout_mask(std::size_t n, double p, Rng& rng) {
    const double keep_scale = 1.0 / (1.0 - p);
    std::vector<double> mask(n);
    for (auto& m : mask) {
        m = rng.uniform() < p ? 0.0 : keep_scale;
    }
    return mask;
}

ForwardTrace forward(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                     DropoutMode mode) {
    if (!params.matches(cfg)) {
        throw ContractError("parameters do not match the model config");
    }
    if (ids.empty()) {
        throw ContractError("forward needs at least one bucket id");
    }
    const auto d = params.embed_dim;
    const auto h = params.hidden_dim;

    ForwardTrace t;
    t.ids.assign(ids.begin(), ids.end());
    if (mode.seed) {
        Rng rng(*mode.seed);
        t.input_mask = dropout_mask(d, cfg.dropout_p, rng);
        t.hidden_mask = dropout_mask(h, cfg.dropout_p, rng);
    } else {
        t.input_mask.assign(d, 1.0);
        t.hidden_mask.assign(h, 1.0);
    }

    t.pooled.assign(d, 0.0);
    for (auto id : ids) {
        if (id >= params.buckets) {
            throw ContractError("bucket id " + std::to_string(id) + " out of range");
        }
        const double* row = params.embedding.data() + static_cast<std::size_t>(id) * d;
        for (std::size_t k = 0; k < d; ++k) {
            t.pooled[k] += row[k];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(ids.size());
    for (auto& v : t.pooled) {
        v *= inv_n;
    }

    t.hidden_pre.assign(params.b1.begin(), params.b1.end());
    for (std::size_t k = 0; k < d; ++k) {
        const double xk = t.pooled[k] * t.input_mask[k];
        if (xk == 0.0) {
            continue;
        }
        const double* w = params.w1.data() + k * h;
        for (std::size_t j = 0; j < h; ++j) {
            t.hidden_pre[j] += xk * w[j];
        }
    }

    t.logits = {params.b2[0], params.b2[1]};
    for (std::size_t j = 0; j < h; ++j) {
        const double a = std::max(t.hidden_pre[j], 0.0) * t.hidden_mask[j];
        t.logits[0] += a * params.w2[2 * j];
        t.logits[1] += a * params.w2[2 * j + 1];
    }
    if (!std::isfinite(t.logits[0]) || !std::isfinite(t.logits[1])) {
        throw NumericError("non-finite logits in forward pass");
    }

    const double m = std::max(t.logits[0], t.logits[1]);
    const double e0 = std::exp(t.logits[0] - m);
    const double e1 = std::exp(t.logits[1] - m);
    const double z = e0 + e1;
    t.probs.p = {e0 / z, e1 / z};
    return t;
}

std::array<double, 2> softmax_backward(const ProbDist& probs, const std::array<double, 2>& dprobs) {
    const double dot = probs[0] * dprobs[0] + probs[1] * dprobs[1];
    return {probs[0] * (dprobs[0] - dot), probs[1] * (dprobs[1] - dot)};
}

void backward(const ClassifierParams& params, const ForwardTrace& t, const std::array<double, 2>& dlogits,
              SparseGradient& grad) {
    const auto d = params.embed_dim;
    const auto h = params.hidden_dim;

    grad.b2[0] += dlogits[0];
    grad.b2[1] += dlogits[1];

    std::vector<double> dpre(h, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
        const double pre = t.hidden_pre[j];
        const double a = std::max(pre, 0.0) * t.hidden_mask[j];
        grad.w2[2 * j] += a * dlogits[0];
        grad.w2[2 * j + 1] += a * dlogits[1];
        if (pre > 0.0) {
            dpre[j] = (params.w2[2 * j] * dlogits[0] + params.w2[2 * j + 1] * dlogits[1]) * t.hidden_mask[j];
        }
    }

    std::vector<double> dpooled(d, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
        grad.b1[j] += dpre[j];
    }
    for (std::size_t k = 0; k < d; ++k) {
        const double xk = t.pooled[k] * t.input_mask[k];
        const double* w = params.w1.data() + k * h;
        double* gw = grad.w1.data() + k * h;
        double acc = 0.0;
        for (std::size_t j = 0; j < h; ++j) {
            gw[j] += xk * dpre[j];
            acc += w[j] * dpre[j];
        }
        dpooled[k] = acc * t.input_mask[k];
    }

    const double inv_n = 1.0 / static_cast<double>(t.ids.size());
    for (auto id : t.ids) {
        auto& row = grad.embedding_rows[id];
        if (row.empty()) {
            row.assign(d, 0.0);
        }
        for (std::size_t k = 0; k < d; ++k) {
            row[k] += dpooled[k] * inv_n;
        }
    }
}

Prediction predict_ids(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids) {
    const auto t = forward(params, cfg, ids, DropoutMode::eval());
    return {argmax_label(t.probs), t.probs};
}

Prediction predict(const ClassifierParams& params, const ModelConfig& cfg, std::string_view text) {
    const auto ids = encode(text, cfg);
    return predict_ids(params, cfg, ids);
}

}  // namespace rdaug
