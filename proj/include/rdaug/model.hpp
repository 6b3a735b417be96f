#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdaug/hash.hpp"

namespace rdaug {

struct ModelConfig {
    std::size_t hash_buckets = 65536;
    std::size_t embed_dim = 32;
    std::size_t hidden_dim = 64;
    double dropout_p = 0.1;
    std::size_t max_seq_len = 128;

    void validate() const;
    bool operator==(const ModelConfig&) const = default;
};

// All learnable tensors, row-major:
//   embedding  hash_buckets x embed_dim
//   w1         embed_dim x hidden_dim,  b1 hidden_dim
//   w2         hidden_dim x 2,          b2 2
// The same layout doubles as a dense gradient and as Adam moment storage.
struct ClassifierParams {
    std::size_t buckets = 0;
    std::size_t embed_dim = 0;
    std::size_t hidden_dim = 0;
    std::vector<double> embedding;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;

    static ClassifierParams zeros(const ModelConfig& cfg);
    // Weights uniform(-0.05, 0.05) drawn in block order from Rng(seed); biases zero.
    static ClassifierParams random(const ModelConfig& cfg, std::uint64_t seed);

    std::array<std::span<double>, 5> blocks();
    std::array<std::span<const double>, 5> blocks() const;
    std::size_t size() const;
    bool same_shape(const ClassifierParams& other) const;
    bool matches(const ModelConfig& cfg) const;

    bool operator==(const ClassifierParams&) const = default;
};

inline constexpr std::array<const char*, 5> kParamBlockNames = {"E", "W1", "b1", "W2", "b2"};

// Gradient of one example: dense for the small layers, only the touched rows
// of the embedding table.
struct SparseGradient {
    std::size_t embed_dim = 0;
    std::map<std::uint32_t, std::vector<double>> embedding_rows;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;

    static SparseGradient zeros_like(const ClassifierParams& params);

    void add_scaled(const SparseGradient& other, double scale);
    // dense += scale * this
    void accumulate_into(ClassifierParams& dense, double scale) const;
    ClassifierParams to_dense(const ClassifierParams& shape) const;
};

struct ProbDist {
    std::array<double, 2> p{0.5, 0.5};

    double operator[](std::size_t i) const { return p[i]; }
    bool valid(double tol = 1e-9) const;
    bool operator==(const ProbDist&) const = default;
};

// Label with the larger probability; ties go to 0.
int argmax_label(const ProbDist& p);

// Train mode draws dropout masks from the seed; eval mode disables dropout.
struct DropoutMode {
    std::optional<std::uint64_t> seed;

    static DropoutMode train(std::uint64_t s) { return {s}; }
    static DropoutMode eval() { return {}; }
};

// Everything backward() needs. Masks hold 0 or 1/(1 - dropout_p).
struct ForwardTrace {
    std::vector<std::uint32_t> ids;
    std::vector<double> input_mask;   // embed_dim
    std::vector<double> pooled;       // mean embedding, before dropout
    std::vector<double> hidden_pre;   // before ReLU
    std::vector<double> hidden_mask;  // hidden_dim
    std::array<double, 2> logits{};
    ProbDist probs;
};

// Whitespace unigrams interleaved with the bigram ending at each token
// (u0, u1, b01, u2, b12, ...), hashed into [1, hash_buckets) and truncated to
// max_seq_len. Empty text maps to the reserved bucket 0.
std::vector<std::uint32_t> tokenize(std::string_view text, const ModelConfig& cfg);

// tokenize(normalize(text))
std::vector<std::uint32_t> encode(std::string_view text, const ModelConfig& cfg);

// Inverted-dropout mask of n entries: one uniform() draw each, 0 when the draw
// is < p, else 1/(1 - p).
std::vector<double> dropout_mask(std::size_t n, double p, Rng& rng);

// mean embedding -> dropout -> affine + ReLU -> dropout -> affine -> softmax.
// Train-mode masks come from Rng(seed): embed_dim draws for the input mask,
// then hidden_dim draws for the hidden mask.
ForwardTrace forward(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids,
                     DropoutMode mode);

// Adds the gradient of a loss with d(loss)/d(logits) = dlogits into grad.
void backward(const ClassifierParams& params, const ForwardTrace& trace, const std::array<double, 2>& dlogits,
              SparseGradient& grad);

// d(loss)/d(logits) given d(loss)/d(probs), through the softmax Jacobian.
std::array<double, 2> softmax_backward(const ProbDist& probs, const std::array<double, 2>& dprobs);

struct Prediction {
    int label = 0;
    ProbDist probs;
};

Prediction predict(const ClassifierParams& params, const ModelConfig& cfg, std::string_view text);
Prediction predict_ids(const ClassifierParams& params, const ModelConfig& cfg, std::span<const std::uint32_t> ids);

}  // namespace rdaug
